"""
Iterative Lyapunov gradient solver.

The gradient X of the matrix square root solves B X + X B = C with B = A^{1/2}
and C = dl/dA^{1/2}. The sign iteration of [[B, C], [0, -B]] decouples into

    B_{k+1} = B_k (3I - B_k^2) / 2
    C_{k+1} = (-B_k^2 C_k + B_k C_k B_k + C_k (3I - B_k^2)) / 2

started from B_0 = B / ||B||_F, C_0 = C / ||B||_F; C_k converges to 2X.
For the inverse square root, B = A^{-1/2} and C = -A^{-1} dl/dA^{-1/2} A^{-1},
formed as -(B^2) G (B^2) in three products.
"""
from typing import Optional

import numpy as np

from common.errors import DivergenceError
from common.logger import get_logger
from operators.backward.types import GradRequest, GradResult
from operators.matcore.kernel import frobenius_norm, identity, matmul
from operators.matcore.types import OpCounters, SymMatrix, Target

logger = get_logger(__name__)


def lyapunov_grad(req: GradRequest, reference: Optional[SymMatrix] = None) -> GradResult:
    """
    :param req: gradient request
    :param reference: exact solution X; when given, residual_x = ||C_T / 2 - X||_F
    """
    counters = OpCounters()
    cfg = req.config
    b = req.forward_value
    c = req.upstream
    if req.target is Target.ISQRT:
        b2 = matmul(b, b, counters)
        c = -matmul(matmul(b2, c, counters), b2, counters)

    norm = frobenius_norm(b)
    b = b / norm
    c = c / norm
    eye = identity(b.shape[0])
    initial = frobenius_norm(b)

    executed = 0
    for step in range(cfg.iterations):
        if cfg.tolerance is not None and frobenius_norm(b - eye) < cfg.tolerance:
            logger.debug("Lyapunov iteration stopped early after %d steps", step)
            break
        b2 = matmul(b, b, counters)
        shifted = 3.0 * eye - b2
        bcb = matmul(matmul(b, c, counters), b, counters)
        c = 0.5 * (-matmul(b2, c, counters) + bcb + matmul(c, shifted, counters))
        b = 0.5 * matmul(b, shifted, counters)
        executed += 1
        b_norm = frobenius_norm(b)
        if not np.isfinite(b_norm) or b_norm > cfg.divergence_factor * initial or not np.all(np.isfinite(c)):
            raise DivergenceError(f"Lyapunov iteration diverged at step {step} (||B|| = {b_norm:.3e})")

    grad = 0.5 * c
    result = GradResult(grad=grad, residual_b=frobenius_norm(b - eye), counters=counters, iterations=executed)
    if reference is not None:
        result.residual_x = frobenius_norm(grad - reference)
    return result


def lyapunov_rhs(req: GradRequest) -> SymMatrix:
    """Right-hand side C of the Lyapunov equation the request solves (uncounted)."""
    if req.target is Target.SQRT:
        return req.upstream
    b2 = req.forward_value @ req.forward_value
    return -(b2 @ req.upstream @ b2)


if __name__ == '__main__':
    b = np.diag([1.0, 3.0])
    c = np.array([[1.0, 2.0], [2.0, 3.0]])
    request = GradRequest(target=Target.SQRT, a=b @ b, forward_value=b, upstream=c)
    result = lyapunov_grad(request)
    print(np.round(result.grad, 6))  # X_ij = C_ij / (b_i + b_j)
    print(result.iterations, result.counters.matmul)

"""
Example output:

[[0.5 0.5]
 [0.5 0.5]]
8 48
"""
