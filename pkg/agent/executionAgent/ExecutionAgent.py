"""
Execution Agent

Executes the instructions planned by the sweep planner: builds the random
suites, resolves forward / backward / pipeline operators from the operator
pool, and turns their outputs into BenchRecords.

Error columns are computed over the whole suite with a thread pool (results
keep suite order, so they are identical run to run). Timing runs afterwards,
sequentially, on the first timing_items matrices: the median over repetitions
per matrix, averaged over matrices.
"""
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from agent.shared.state import BenchRecord, BenchState, ExecutionInstruction, SweepConfig
from common.config_loader import get_section
from common.logger import banner, get_logger
from operators import OPERATOR_REGISTRY, get_operator
from operators.backward.lyapunov import lyapunov_rhs
from operators.backward.types import BackwardConfig, GradRequest
from operators.diffcheck.metrics import error_report, mae, nrmse
from operators.diffcheck.whitening import zca_covariance
from operators.forward.batch import approximate
from operators.forward.spectral import spectral_from_decomp
from operators.forward.types import ForwardConfig, Method
from operators.matcore.eigen import sym_eig
from operators.matcore.random_spd import covariance_suite, random_data, random_symmetric
from operators.matcore.types import MatrixBatch, OpCounters, SymMatrix, Target

logger = get_logger("ExecutionAgent")


def _median_time_ns(task: Callable[[], object], reps: int) -> float:
    samples = []
    for _ in range(reps):
        start = time.perf_counter_ns()
        task()
        samples.append(time.perf_counter_ns() - start)
    return max(float(np.median(samples)), 1.0)


class ExecutionAgent:
    """
    Execution Agent: executes instructions generated by the sweep planner.

    Current operators selected from operator pool:
    - forward category (mtp, mpa, ns, ns_onevar, spectral)
    - backward category (lyapunov, ns_backward)
    - oracle category (bartels_stewart)
    - pipeline category (mpa_lya, mtp_lya, ns, spectral_bs)
    """

    def __init__(self, threads: int = 1):
        # Operator registry (UOP - Unified Operator Pool)
        self.operator_registry = OPERATOR_REGISTRY
        # Operator categories available to current Agent
        self.available_categories = ["forward", "backward", "oracle", "pipeline"]
        self.threads = max(threads, 1)
        self.timing_items = int(get_section("bench")["timing_items"])

        self.sweep_runners = {
            "fp": self._run_forward,
            "whiten": self._run_forward,
            "bp": self._run_backward,
            "batch": self._run_batch,
            "dim": self._run_dim,
        }
        # Per-run caches keyed by (suite dim, target, ...); suites are fixed for one run
        self._oracles: Dict[Tuple, List[SymMatrix]] = {}
        self._upstreams: Dict[int, List[SymMatrix]] = {}
        self._references: Dict[Tuple, list] = {}
        self._pipeline_errors: Dict[Tuple, Tuple[list, OpCounters]] = {}

    def _map(self, function: Callable, items: Sequence) -> list:
        if self.threads == 1:
            return [function(item) for item in items]
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            return list(pool.map(function, items))

    # ------------------------------------------------------------------ suites

    @staticmethod
    def build_suites(config: SweepConfig) -> Dict[int, MatrixBatch]:
        """Accuracy suites per dimension for the configured sweep."""
        if config["sweep"] == "whiten":
            dim = config["dim"]
            factor = int(get_section("bench")["whiten_samples_factor"])
            items = np.stack([
                zca_covariance(random_data(dim, factor * dim, config["seed"], stream=index), config["epsilon"])
                for index in range(config["suite_size"])
            ])
            return {dim: MatrixBatch(items=items)}
        dims = config["dims"] if config["sweep"] == "dim" else [config["dim"]]
        return {
            dim: covariance_suite(config["suite_size"], dim, config["seed"],
                                  samples=config["samples_factor"] * dim, epsilon=config["epsilon"])
            for dim in dims
        }

    def generate_suite(self, state: BenchState) -> BenchState:
        """
        Build the random suites the planned instructions run on.
        """
        config = state["config"]
        suites = self.build_suites(config)
        logger.info(banner("ExecutionAgent"))
        for dim, suite in suites.items():
            logger.info("Generated %d covariance matrices of size %dx%d (seed %d)",
                        suite.count, dim, dim, config["seed"])
        new_state = state.copy()
        new_state["suites"] = suites
        return new_state

    def _oracle(self, suite: MatrixBatch, target: Target) -> List[SymMatrix]:
        key = (suite.dim, target)
        if key not in self._oracles:
            decomps = self._map(sym_eig, list(suite))
            for other in Target:
                self._oracles[(suite.dim, other)] = [spectral_from_decomp(d, other) for d in decomps]
        return self._oracles[key]

    def _upstream(self, suite: MatrixBatch, seed: int) -> List[SymMatrix]:
        if suite.dim not in self._upstreams:
            self._upstreams[suite.dim] = [random_symmetric(suite.dim, seed, stream=index)
                                          for index in range(suite.count)]
        return self._upstreams[suite.dim]

    # --------------------------------------------------------------- records

    @staticmethod
    def _record(instruction: ExecutionInstruction, time_ns: float, errors: Sequence[Tuple[float, float, float]],
                counters: OpCounters) -> BenchRecord:
        columns = np.mean(np.asarray(errors, dtype=np.float64), axis=0)
        return BenchRecord(
            sweep=instruction["sweep"],
            method=instruction["operator"],
            target=instruction["target"],
            param=instruction["param"],
            time_ns_mean=time_ns,
            mae=float(columns[0]),
            nrmse=float(columns[1]),
            defining_residual=float(columns[2]),
            matmul_count=counters.matmul,
            solve_count=counters.solve,
        )

    def _timed_mean(self, task: Callable[[int], object], count: int, reps: int) -> float:
        items = range(min(count, self.timing_items))
        return float(np.mean([_median_time_ns(lambda index=index: task(index), reps) for index in items]))

    # ------------------------------------------------------------- runners

    def _run_forward(self, instruction: ExecutionInstruction, suite: MatrixBatch, config: SweepConfig) -> BenchRecord:
        """fp and whiten rows: forward approximant against the spectral oracle."""
        target = Target(instruction["target"])
        cfg = ForwardConfig.from_config(Method(instruction["operator"]), target, **instruction["params"])
        oracles = self._oracle(suite, target)
        items = list(suite)

        results = self._map(lambda a: approximate(a, cfg), items)
        reports = [error_report(result.value, exact, a, target)
                   for result, exact, a in zip(results, oracles, items)]
        errors = [(r.mae, r.nrmse, r.defining_residual) for r in reports]
        time_ns = self._timed_mean(lambda index: approximate(items[index], cfg), len(items), config["reps"])
        return self._record(instruction, time_ns, errors, results[0].counters)

    def _lyapunov_references(self, suite: MatrixBatch, target: Target, config: SweepConfig) -> Tuple[list, list]:
        """MPA forward values as B and the matching Bartels-Stewart solutions."""
        key = ("lyapunov", suite.dim, target)
        if key not in self._references:
            items = list(suite)
            upstreams = self._upstream(suite, config["seed"])
            forward_cfg = ForwardConfig.from_config(Method.MPA, target)
            values = self._map(lambda a: approximate(a, forward_cfg).value, items)
            bartels_stewart = get_operator("oracle", "bartels_stewart")
            rhs = [lyapunov_rhs(GradRequest(target, a, b, g)) for a, b, g in zip(items, values, upstreams)]
            references = self._map(lambda pair: bartels_stewart(*pair), list(zip(values, rhs)))
            self._references[key] = [values, references]
        return tuple(self._references[key])

    def _exact_gradients(self, suite: MatrixBatch, target: Target, config: SweepConfig) -> List[SymMatrix]:
        key = ("exact", suite.dim, target)
        if key not in self._references:
            items = list(suite)
            upstreams = self._upstream(suite, config["seed"])
            oracles = self._oracle(suite, target)
            bartels_stewart = get_operator("oracle", "bartels_stewart")
            rhs = [lyapunov_rhs(GradRequest(target, a, y, g)) for a, y, g in zip(items, oracles, upstreams)]
            self._references[key] = self._map(lambda pair: bartels_stewart(*pair), list(zip(oracles, rhs)))
        return self._references[key]

    def _run_backward(self, instruction: ExecutionInstruction, suite: MatrixBatch, config: SweepConfig) -> BenchRecord:
        """
        bp rows: mae / nrmse compare the gradient with its exact solution,
        defining_residual carries residual_b.
        """
        target = Target(instruction["target"])
        iterations = instruction["params"]["iterations"]
        items = list(suite)
        upstreams = self._upstream(suite, config["seed"])
        operator = get_operator("backward", instruction["operator"])

        if instruction["operator"] == "lyapunov":
            values, references = self._lyapunov_references(suite, target, config)
            backward_cfg = BackwardConfig.from_config(iterations=iterations)
            requests = [GradRequest(target, a, b, g, backward_cfg) for a, b, g in zip(items, values, upstreams)]
            run = lambda index: operator(requests[index])  # noqa: E731
        else:
            references = self._exact_gradients(suite, target, config)
            run = lambda index: operator(items[index], upstreams[index], iterations, target)  # noqa: E731

        results = self._map(run, range(len(items)))
        errors = [(mae(r.grad, ref), nrmse(r.grad, ref), r.residual_b) for r, ref in zip(results, references)]
        time_ns = self._timed_mean(run, len(items), config["reps"])
        return self._record(instruction, time_ns, errors, results[0].counters)

    def _pipeline_accuracy(self, instruction: ExecutionInstruction, suite: MatrixBatch,
                           config: SweepConfig) -> Tuple[list, OpCounters]:
        """Forward errors and FP+BP counters of a pipeline on the accuracy suite."""
        target = Target(instruction["target"])
        key = (instruction["operator"], suite.dim, target)
        if key not in self._pipeline_errors:
            pipeline = get_operator("pipeline", instruction["operator"])
            items = list(suite)
            upstreams = self._upstream(suite, config["seed"])
            oracles = self._oracle(suite, target)
            results = self._map(lambda index: pipeline(items[index], upstreams[index], target), range(len(items)))
            errors = []
            for (forward, _), exact, a in zip(results, oracles, items):
                report = error_report(forward.value, exact, a, target)
                errors.append((report.mae, report.nrmse, report.defining_residual))
            forward, backward = results[0]
            self._pipeline_errors[key] = (errors, forward.counters.copy().merge(backward.counters))
        return self._pipeline_errors[key]

    def _run_batch(self, instruction: ExecutionInstruction, suite: MatrixBatch, config: SweepConfig) -> BenchRecord:
        """batch rows: error columns from the fixed suite, time for a whole batch."""
        target = Target(instruction["target"])
        errors, counters = self._pipeline_accuracy(instruction, suite, config)
        pipeline = get_operator("pipeline", instruction["operator"])
        upstreams = self._upstream(suite, config["seed"])
        members = [index % suite.count for index in range(instruction["params"]["batch"])]

        def run_batch():
            for index in members:
                pipeline(suite[index], upstreams[index], target)

        time_ns = _median_time_ns(run_batch, config["reps"])
        return self._record(instruction, time_ns, errors, counters)

    def _run_dim(self, instruction: ExecutionInstruction, suites: Dict[int, MatrixBatch],
                 config: SweepConfig) -> BenchRecord:
        """dim rows: per-dimension suite, FP+BP time per matrix."""
        target = Target(instruction["target"])
        suite = suites[instruction["params"]["dim"]]
        errors, counters = self._pipeline_accuracy(instruction, suite, config)
        pipeline = get_operator("pipeline", instruction["operator"])
        upstreams = self._upstream(suite, config["seed"])
        time_ns = self._timed_mean(lambda index: pipeline(suite[index], upstreams[index], target),
                                   suite.count, config["reps"])
        return self._record(instruction, time_ns, errors, counters)

    # ----------------------------------------------------------- graph node

    def execute_instruction(self, state: BenchState) -> BenchState:
        """
        Execute the current instruction and append its record.
        """
        instruction: ExecutionInstruction = state.get("current_instruction")
        if not instruction:
            raise ValueError("No instruction selected, cannot execute")
        config = state["config"]
        runner = self.sweep_runners.get(instruction["sweep"])
        if runner is None:
            raise ValueError(f"Unknown sweep: {instruction['sweep']}")

        logger.info("Executing [%d/%d] %s.%s target=%s param=%s", state["current_index"] + 1,
                    len(state["instructions"]), instruction["category"], instruction["operator"],
                    instruction["target"], instruction["param"])
        suites = state["suites"]
        if instruction["sweep"] == "dim":
            record = runner(instruction, suites, config)
        else:
            record = runner(instruction, suites[config["dim"]], config)
        logger.debug("Record: %s", record)

        new_state = state.copy()
        new_state["records"] = (state.get("records") or []) + [record]
        new_state["executed_count"] = state.get("executed_count", 0) + 1
        return new_state
