from typing import Any, Dict, List, Optional

from typing_extensions import TypedDict

CSV_HEADER = [
    "sweep", "method", "target", "param", "time_ns_mean",
    "mae", "nrmse", "defining_residual", "matmul_count", "solve_count",
]
COEFF_HEADER = ["target", "M", "N", "kind", "index", "value"]


class SweepConfig(TypedDict):
    """Resolved command-line and config.yaml settings of one benchmark run."""

    sweep: str  # fp, bp, batch, dim, whiten, coeffs
    suite_size: int
    dim: int
    seed: int
    reps: int
    samples_factor: int  # observations per dimension behind each covariance
    epsilon: float
    threads: int
    methods: List[str]
    targets: List[str]  # "sqrt" and/or "isqrt"
    degrees: List[int]  # MTP / MPA degrees K
    iterations: List[int]  # Newton-Schulz iterations
    lyapunov_iterations: List[int]  # Lyapunov T
    batch_sizes: List[int]
    dims: List[int]
    degree_m: int
    degree_n: int
    out: str  # "-" for stdout


class ExecutionInstruction(TypedDict):
    """One CSV row to produce: planned by the sweep planner, executed by the Execution Agent."""

    sweep: str
    category: str  # Operator category in the pool, e.g. "forward", "pipeline"
    operator: str  # Operator name, e.g. "mpa", "lyapunov", "spectral_bs"
    target: str
    param: float  # degree, iterations, batch size or dim
    params: Dict[str, Any]  # Operator parameters


class BenchRecord(TypedDict):
    sweep: str
    method: str
    target: str
    param: float
    time_ns_mean: float
    mae: float
    nrmse: float
    defining_residual: float
    matmul_count: int
    solve_count: int


class BenchState(TypedDict, total=False):
    """State shared across the benchmark agents."""

    # Bench Agent (sweep classification)
    config: SweepConfig
    sweep: Optional[str]

    # Sweep planner (execution instructions)
    instructions: List[ExecutionInstruction]
    current_instruction: Optional[ExecutionInstruction]
    current_index: int
    executed_count: int

    # Execution Agent (suites and results)
    suites: Dict[int, Any]  # dim -> MatrixBatch
    records: List[BenchRecord]

    # Record writer
    header: List[str]
    rows: List[Dict[str, Any]]
    output: Optional[str]


def get_init_bench_state(config: SweepConfig) -> BenchState:
    """Create initial state for the benchmark pipeline."""

    return BenchState(
        config=config,
        sweep=None,
        instructions=[],
        current_instruction=None,
        current_index=-1,
        executed_count=0,
        suites={},
        records=[],
        header=[],
        rows=[],
        output=None,
    )
