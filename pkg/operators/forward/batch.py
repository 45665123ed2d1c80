"""Registry-driven dispatch of forward operators, single matrix or batch."""
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

from common.config_loader import get_thread_count
from operators import get_operator
from operators.forward.types import ForwardConfig, ForwardResult, Method
from operators.matcore.types import MatrixBatch, OpCounters, SymMatrix, Target


def approximate(a: SymMatrix, cfg: ForwardConfig) -> ForwardResult:
    """Run the forward operator registered under cfg.method for cfg.target."""
    operator = get_operator("forward", cfg.method.value)
    if cfg.method is Method.SPECTRAL:
        return operator(a, cfg.target)
    result = operator(a, cfg)
    if cfg.method is Method.NS_COUPLED:
        sqrt_result, isqrt_result = result
        return sqrt_result if cfg.target is Target.SQRT else isqrt_result
    return result


def forward_batch(batch: MatrixBatch, cfg: ForwardConfig,
                  threads: Optional[int] = None) -> Tuple[List[ForwardResult], OpCounters]:
    """
    Map approximate over a batch.

    Results keep the batch order; per-item counters are merged by summation.
    """
    workers = threads or get_thread_count()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda a: approximate(a, cfg), batch))
    total = OpCounters()
    for result in results:
        total.merge(result.counters)
    return results, total
