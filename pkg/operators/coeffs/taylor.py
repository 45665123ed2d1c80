from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from common.errors import DomainError
from operators.matcore.types import Target


@dataclass(frozen=True)
class TaylorTable:
    """c[k - 1] = |binom(+-1/2, k)| for k = 1..degree_k."""

    target: Target
    degree_k: int
    c: NDArray[np.float64]


def binom_abs(target: Target, k: int) -> float:
    """|binom(+-1/2, k)| by the running product alpha (alpha - 1) ... (alpha - k + 1) / k!."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k} (the constant term is handled by callers)")
    alpha = target.exponent
    value = 1.0
    for j in range(k):
        value *= (alpha - j) / (j + 1)
    return abs(value)


def taylor_table(target: Target, degree_k: int) -> TaylorTable:
    if degree_k < 1:
        raise DomainError(f"degree must be >= 1, got {degree_k}")
    c = np.array([binom_abs(target, k) for k in range(1, degree_k + 1)], dtype=np.float64)
    c.setflags(write=False)
    return TaylorTable(target=target, degree_k=degree_k, c=c)


def series_coefficients(target: Target, degree_k: int) -> NDArray[np.float64]:
    """Signed coefficients a_0..a_K of (1 - z)^{+-1/2} = 1 + sign * sum_k c_k z^k."""
    coeffs = np.ones(degree_k + 1, dtype=np.float64)
    if degree_k >= 1:
        coeffs[1:] = target.sign * taylor_table(target, degree_k).c
    return coeffs


def evaluate_taylor(table: TaylorTable, z: float) -> float:
    """Scalar truncated series 1 + sign * sum_k c_k z^k."""
    powers = z ** np.arange(1, table.degree_k + 1)
    return float(1.0 + table.target.sign * np.dot(table.c, powers))
