from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

from common.config_loader import get_thread_count
from operators.backward.lyapunov import lyapunov_grad
from operators.backward.types import GradRequest, GradResult
from operators.matcore.types import OpCounters


def backward_batch(requests: Sequence[GradRequest],
                   threads: Optional[int] = None) -> Tuple[List[GradResult], OpCounters]:
    """lyapunov_grad over a batch of requests; order kept, counters summed."""
    workers = threads or get_thread_count()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lyapunov_grad, requests))
    total = OpCounters()
    for result in results:
        total.merge(result.counters)
    return results, total
