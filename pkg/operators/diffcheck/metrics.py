"""Error metrics between an approximant and its exact counterpart."""
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike

from common.errors import DimensionMismatchError, DomainError
from operators.matcore.kernel import frobenius_norm, identity
from operators.matcore.types import SymMatrix, Target


@dataclass(frozen=True)
class ErrorReport:
    mae: float
    nrmse: float
    defining_residual: float
    whitening_error: Optional[float] = None  # inverse square root only


def _pair(approx: ArrayLike, exact: ArrayLike):
    approx = np.asarray(approx, dtype=np.float64)
    exact = np.asarray(exact, dtype=np.float64)
    if approx.shape != exact.shape:
        raise DimensionMismatchError(f"shapes disagree: {approx.shape} vs {exact.shape}")
    return approx, exact


def mae(approx: ArrayLike, exact: ArrayLike) -> float:
    """Mean absolute entrywise error."""
    approx, exact = _pair(approx, exact)
    return float(np.mean(np.abs(approx - exact)))


def nrmse(approx: ArrayLike, exact: ArrayLike) -> float:
    """RMSE(approx, exact) / RMS(exact)."""
    approx, exact = _pair(approx, exact)
    scale = np.sqrt(np.mean(exact ** 2))
    if scale == 0.0:
        raise DomainError("NRMSE is undefined for an all-zero exact matrix")
    return float(np.sqrt(np.mean((approx - exact) ** 2)) / scale)


def whitening_error(a: SymMatrix, isqrt_approx: SymMatrix) -> float:
    """||Y A Y - I||_F: distance of the whitened covariance from the identity."""
    _pair(a, isqrt_approx)
    return frobenius_norm(isqrt_approx @ a @ isqrt_approx - identity(a.shape[0]))


def defining_residual(approx: SymMatrix, a: SymMatrix, target: Target) -> float:
    """||Y^2 - A||_F / ||A||_F for sqrt, ||Y A Y - I||_F for isqrt."""
    if target is Target.SQRT:
        _pair(approx, a)
        return frobenius_norm(approx @ approx - a) / frobenius_norm(a)
    return whitening_error(a, approx)


def error_report(approx: SymMatrix, exact: SymMatrix, a: SymMatrix, target: Target) -> ErrorReport:
    residual = defining_residual(approx, a, target)
    return ErrorReport(
        mae=mae(approx, exact),
        nrmse=nrmse(approx, exact),
        defining_residual=residual,
        whitening_error=residual if target is Target.ISQRT else None,
    )
