"""
Symmetric eigendecomposition by cyclic Jacobi rotations.

Rotations are scheduled as a round-robin tournament: within one round the
(p, q) pairs are disjoint, so their rotations commute and are applied to
whole rows and columns at once.
"""
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from common.config_loader import get_section
from common.errors import NonConvergenceError
from common.logger import get_logger
from operators.matcore.kernel import _as_matrix, _require_square
from operators.matcore.types import OpCounters, SpectralDecomp

logger = get_logger(__name__)


@lru_cache(maxsize=None)
def _tournament(dim: int) -> Tuple[Tuple[NDArray[np.intp], NDArray[np.intp]], ...]:
    """Round-robin schedule covering every off-diagonal pair exactly once per sweep."""
    players = dim + (dim % 2)  # odd sizes get a bye
    order: List[int] = list(range(players))
    rounds = []
    for _ in range(players - 1):
        pairs = [(order[i], order[players - 1 - i]) for i in range(players // 2)]
        pairs = [(min(p, q), max(p, q)) for p, q in pairs if p < dim and q < dim]
        rounds.append((np.array([p for p, _ in pairs], dtype=np.intp),
                       np.array([q for _, q in pairs], dtype=np.intp)))
        order = [order[0], order[-1]] + order[1:-1]
    return tuple(rounds)


def _off_norm(a: NDArray[np.float64]) -> float:
    # Direct sum; ||a||^2 - sum(diag^2) cancels to noise near convergence
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _sweep(a: NDArray[np.float64], v: NDArray[np.float64]):
    for p, q in _tournament(a.shape[0]):
        apq = a[p, q]
        app = a[p, p]
        aqq = a[q, q]
        active = apq != 0.0
        tau = (aqq - app) / (2.0 * np.where(active, apq, 1.0))
        t = np.where(tau >= 0.0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
        t = np.where(active, t, 0.0)
        c = 1.0 / np.sqrt(1.0 + t * t)
        s = t * c

        rows_p = a[p, :].copy()
        rows_q = a[q, :].copy()
        a[p, :] = c[:, None] * rows_p - s[:, None] * rows_q
        a[q, :] = s[:, None] * rows_p + c[:, None] * rows_q

        cols_p = a[:, p].copy()
        cols_q = a[:, q].copy()
        a[:, p] = cols_p * c - cols_q * s
        a[:, q] = cols_p * s + cols_q * c

        vec_p = v[:, p].copy()
        vec_q = v[:, q].copy()
        v[:, p] = vec_p * c - vec_q * s
        v[:, q] = vec_p * s + vec_q * c


def sym_eig(a: ArrayLike, counters: Optional[OpCounters] = None,
            tolerance: Optional[float] = None, max_sweeps: Optional[int] = None) -> SpectralDecomp:
    """
    Eigendecomposition of a symmetric matrix.

    :param a: symmetric matrix
    :param counters: optional counter sink (eig += 1)
    :param tolerance: stop once the off-diagonal Frobenius mass is below tolerance * ||a||_F
    :param max_sweeps: sweeps before NonConvergenceError
    :return: SpectralDecomp with ascending eigenvalues
    """
    work = _as_matrix(a, "a").copy()
    _require_square(work, "a")
    settings = get_section("matcore")
    if tolerance is None:
        tolerance = float(settings["jacobi_tolerance"])
    if max_sweeps is None:
        max_sweeps = int(settings["jacobi_max_sweeps"])
    if counters is not None:
        counters.eig += 1

    dim = work.shape[0]
    v = np.eye(dim, dtype=np.float64)
    scale = float(np.linalg.norm(work))
    off = _off_norm(work)
    sweeps = 0
    while off > tolerance * scale:
        if sweeps >= max_sweeps:
            raise NonConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps", off / scale)
        _sweep(work, v)
        sweeps += 1
        off = _off_norm(work)
    if off > np.finfo(np.float64).eps * scale:
        _sweep(work, v)  # polish
        sweeps += 1
    logger.debug("Jacobi converged on %dx%d in %d sweeps", dim, dim, sweeps)

    eigenvalues = np.diag(work).copy()
    order = np.argsort(eigenvalues, kind="stable")
    return SpectralDecomp(eigenvalues=eigenvalues[order], eigenvectors=v[:, order])
