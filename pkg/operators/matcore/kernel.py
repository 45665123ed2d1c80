"""
Dense kernel primitives.

Every primitive that appears in the operation-count tables takes an optional
OpCounters sink and increments it exactly once per call.
"""
import warnings
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import linalg

from common.config_loader import get_section
from common.errors import (
    DimensionMismatchError,
    NotPositiveDefiniteError,
    NotSymmetricError,
    OversizeError,
    SingularMatrixError,
)
from common.logger import get_logger
from operators.matcore.types import OpCounters, SymMatrix

logger = get_logger(__name__)


def _as_matrix(a: ArrayLike, name: str) -> NDArray[np.float64]:
    arr = np.asarray(a, dtype=np.float64)
    if arr.ndim != 2:
        raise DimensionMismatchError(f"{name} must be 2-D, got shape {arr.shape}")
    return arr


def _require_square(a: NDArray[np.float64], name: str):
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(f"{name} must be square, got shape {a.shape}")


def identity(dim: int) -> SymMatrix:
    return np.eye(dim, dtype=np.float64)


def symmetrize(m: ArrayLike) -> SymMatrix:
    """(M + M^T) / 2"""
    m = np.asarray(m, dtype=np.float64)
    return 0.5 * (m + m.T)


def make_sym_matrix(data: ArrayLike, atol: Optional[float] = None) -> SymMatrix:
    """
    Validate and return an exactly symmetric copy of data.

    :param data: square array-like
    :param atol: tolerated asymmetry, relative to max(1, max|data|); defaults to matcore.symmetry_atol
    """
    a = _as_matrix(data, "data")
    _require_square(a, "data")
    if a.shape[0] < 1:
        raise DimensionMismatchError("dim must be >= 1")
    if atol is None:
        atol = float(get_section("matcore")["symmetry_atol"])
    scale = max(1.0, float(np.max(np.abs(a))))
    asymmetry = float(np.max(np.abs(a - a.T)))
    if asymmetry > atol * scale:
        raise NotSymmetricError(f"matrix is not symmetric (max |a - a^T| = {asymmetry:.3e})")
    return symmetrize(a)


def matmul(a: ArrayLike, b: ArrayLike, counters: Optional[OpCounters] = None) -> NDArray[np.float64]:
    """Dense product a @ b; one matmul on the counter sink."""
    a = _as_matrix(a, "a")
    b = _as_matrix(b, "b")
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatchError(f"inner dimensions disagree: {a.shape} @ {b.shape}")
    if counters is not None:
        counters.matmul += 1
    return a @ b


def frobenius_norm(a: ArrayLike) -> float:
    return float(np.linalg.norm(np.asarray(a, dtype=np.float64)))


def require_spd(a: ArrayLike, name: str = "matrix"):
    """Raise NotPositiveDefiniteError unless a admits a Cholesky factorization. Not counted."""
    try:
        np.linalg.cholesky(np.asarray(a, dtype=np.float64))
    except np.linalg.LinAlgError:
        raise NotPositiveDefiniteError(f"{name} is not symmetric positive definite") from None


def solve_spd(a: ArrayLike, rhs: ArrayLike, counters: Optional[OpCounters] = None) -> NDArray[np.float64]:
    """
    Solve a @ x = rhs for symmetric positive definite a.

    Cholesky first; a failed or negligible pivot falls back to LU with partial
    pivoting, and an LU pivot below dim * eps * max|U| raises SingularMatrixError.
    """
    a = _as_matrix(a, "a")
    _require_square(a, "a")
    rhs = np.asarray(rhs, dtype=np.float64)
    if rhs.shape[0] != a.shape[0]:
        raise DimensionMismatchError(f"rhs has {rhs.shape[0]} rows, system has {a.shape[0]}")
    if counters is not None:
        counters.solve += 1
    tolerance = a.shape[0] * np.finfo(np.float64).eps  # relative pivot floor
    try:
        factor = linalg.cho_factor(a, lower=True, check_finite=False)
        if np.min(np.diag(factor[0])) ** 2 > tolerance * np.max(np.abs(a)):
            return linalg.cho_solve(factor, rhs, check_finite=False)
        logger.debug("negligible Cholesky pivot on %dx%d system, falling back to LU", *a.shape)
    except linalg.LinAlgError:
        logger.debug("Cholesky failed on %dx%d system, falling back to LU", *a.shape)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", linalg.LinAlgWarning)
        lu, piv = linalg.lu_factor(a, check_finite=False)
    if not np.all(np.isfinite(lu)) or np.min(np.abs(np.diag(lu))) <= tolerance * np.max(np.abs(lu)):
        raise SingularMatrixError(f"singular {a.shape[0]}x{a.shape[0]} system")
    return linalg.lu_solve((lu, piv), rhs, check_finite=False)


def kron(a: ArrayLike, b: ArrayLike, max_dim: Optional[int] = None) -> NDArray[np.float64]:
    """Kronecker product of two square matrices, limited to max_dim x max_dim (matcore.kron_max_dim)."""
    a = _as_matrix(a, "a")
    b = _as_matrix(b, "b")
    _require_square(a, "a")
    _require_square(b, "b")
    if max_dim is None:
        max_dim = int(get_section("matcore")["kron_max_dim"])
    size = a.shape[0] * b.shape[0]
    if size > max_dim:
        raise OversizeError(f"Kronecker product of size {size}x{size} exceeds the {max_dim}x{max_dim} limit")
    return np.kron(a, b)
