"""
Matrix sign function by the Newton-Schulz iteration, and the block form that
carries a Lyapunov solution:

    sign([[B, C], [0, -B]]) = [[I, 2X], [0, -I]]  with  B X + X B = C
"""
from typing import Tuple

import numpy as np

from common.errors import DivergenceError, NonConvergenceError, OversizeError
from common.logger import get_logger
from operators.matcore.kernel import frobenius_norm, identity, matmul
from operators.matcore.types import SymMatrix

logger = get_logger(__name__)

SIGN_BLOCK_MAX_DIM = 32


def sign_iteration(h: np.ndarray, tolerance: float = 1e-10, max_iterations: int = 100,
                   divergence_factor: float = 1e6) -> Tuple[np.ndarray, int]:
    """
    H_{k+1} = H_k (3I - H_k^2) / 2 until ||H_k^2 - I||_F <= tolerance.

    :return: (converged matrix, iterations spent)
    """
    eye = identity(h.shape[0])
    initial = frobenius_norm(h)
    residual = np.inf
    for step in range(max_iterations + 1):
        h2 = matmul(h, h)
        residual = frobenius_norm(h2 - eye)
        if residual <= tolerance:
            logger.debug("sign iteration converged after %d steps", step)
            return h, step
        if step == max_iterations:
            break
        h = 0.5 * matmul(h, 3.0 * eye - h2)
        h_norm = frobenius_norm(h)
        if not np.isfinite(h_norm) or h_norm > divergence_factor * initial:
            raise DivergenceError(f"sign iteration diverged at step {step} (norm {h_norm:.3e})")
    raise NonConvergenceError(f"sign iteration did not converge in {max_iterations} steps", residual)


def lyapunov_sign_block(b: SymMatrix, c: SymMatrix, tolerance: float = 1e-10,
                        max_iterations: int = 100) -> Tuple[np.ndarray, SymMatrix]:
    """
    Solve B X + X B = C through sign([[B, C], [0, -B]] / ||B||_F).

    :return: (sign matrix S, X taken as half its top-right block)
    """
    dim = b.shape[0]
    if dim > SIGN_BLOCK_MAX_DIM:
        raise OversizeError(f"sign block is limited to dim <= {SIGN_BLOCK_MAX_DIM}, got {dim}")
    h = np.block([[b, c], [np.zeros_like(b), -b]]) / frobenius_norm(b)
    s, _ = sign_iteration(h, tolerance, max_iterations)
    return s, 0.5 * s[:dim, dim:]
