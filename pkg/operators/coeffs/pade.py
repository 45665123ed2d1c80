"""
Padé coefficients of (1 - z)^{+-1/2}.

Both polynomials are stored without their constant term and carry the
target's sign: P(z) = 1 + sign * sum_m p_m z^m, Q(z) = 1 + sign * sum_n q_n z^n,
so the sqrt table holds the positive-looking p_m, q_n of 1 - sum p_m z^m and
the inverse-sqrt table holds r_m, s_n.
"""
import threading
import warnings
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np
from numpy.polynomial import polynomial
from numpy.typing import NDArray
from scipy import linalg

from common.errors import DomainError, SingularMatrixError
from common.logger import get_logger
from operators.coeffs.taylor import series_coefficients
from operators.matcore.types import Target

logger = get_logger(__name__)

_table_cache: Dict[Tuple[Target, int, int], "PadeTable"] = {}
_table_lock = threading.Lock()


@dataclass(frozen=True)
class PadeTable:
    target: Target
    degree_m: int
    degree_n: int
    p: NDArray[np.float64]  # numerator, length degree_m
    q: NDArray[np.float64]  # denominator, length degree_n

    def numerator(self) -> NDArray[np.float64]:
        """Ascending power-basis coefficients of P, constant term included."""
        return np.concatenate(([1.0], self.target.sign * self.p))

    def denominator(self) -> NDArray[np.float64]:
        return np.concatenate(([1.0], self.target.sign * self.q))


def _solve_table(target: Target, degree_m: int, degree_n: int) -> PadeTable:
    a = series_coefficients(target, degree_m + degree_n)

    # rows k = M+1..M+N: sum_{j=1..N} Q_j a_{k-j} = -a_k, with a_{<0} = 0
    first_row = np.array([a[degree_m + 1 - j] if degree_m + 1 - j >= 0 else 0.0
                          for j in range(1, degree_n + 1)])
    toeplitz = linalg.toeplitz(a[degree_m:degree_m + degree_n], first_row)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", linalg.LinAlgWarning)
        lu, piv = linalg.lu_factor(toeplitz)
    if np.any(np.diag(lu) == 0.0):
        raise SingularMatrixError(f"singular Toeplitz system for [{degree_m},{degree_n}] {target.value}")
    den = linalg.lu_solve((lu, piv), -a[degree_m + 1:degree_m + degree_n + 1])

    # forward substitution for the numerator: P_k = a_k + sum_{j=1..min(k,N)} Q_j a_{k-j}
    num = np.array([a[k] + sum(den[j - 1] * a[k - j] for j in range(1, min(k, degree_n) + 1))
                    for k in range(1, degree_m + 1)])

    p = target.sign * num
    q = target.sign * den
    p.setflags(write=False)
    q.setflags(write=False)
    return PadeTable(target=target, degree_m=degree_m, degree_n=degree_n, p=p, q=q)


def pade_table(target: Target, degree_m: int, degree_n: int) -> PadeTable:
    """
    [M, N] Padé table matched to the Taylor series of degree M + N.

    Tables are cached per (target, M, N); the first caller computes under a lock.
    """
    if degree_m < 1 or degree_n < 1:
        raise DomainError(f"Padé degrees must be >= 1, got [{degree_m},{degree_n}]")
    key = (target, degree_m, degree_n)
    table = _table_cache.get(key)
    if table is None:
        with _table_lock:
            table = _table_cache.get(key)
            if table is None:
                table = _solve_table(target, degree_m, degree_n)
                _table_cache[key] = table
                logger.debug("Padé table [%d,%d] %s computed", degree_m, degree_n, target.value)
    return table


def cross_multiplication_residual(table: PadeTable) -> float:
    """max |coeff_k(Q * T_{M+N} - P)| for k = 0..M+N."""
    order = table.degree_m + table.degree_n
    taylor = series_coefficients(table.target, order)
    product = np.convolve(table.denominator(), taylor)[:order + 1]
    numerator = np.zeros(order + 1)
    numerator[:table.degree_m + 1] = table.numerator()
    return float(np.max(np.abs(product - numerator)))


def evaluate_rational(table: PadeTable, z: float) -> float:
    """Scalar P(z) / Q(z)."""
    return float(polynomial.polyval(z, table.numerator()) / polynomial.polyval(z, table.denominator()))


def denominator_poly_min(table: PadeTable, grid_points: int) -> Tuple[float, float]:
    """
    Minimum of the scalar denominator Q(x) over a uniform grid on [0, 1].

    :return: (min_value, argmin)
    """
    if grid_points < 2:
        raise DomainError(f"grid_points must be >= 2, got {grid_points}")
    grid = np.linspace(0.0, 1.0, grid_points)
    values = polynomial.polyval(grid, table.denominator())
    index = int(np.argmin(values))
    return float(values[index]), float(grid[index])


if __name__ == '__main__':
    table = pade_table(Target.SQRT, 5, 5)
    print(table.q)
    print(round(evaluate_rational(table, 0.5), 6))  # sqrt(1 - 0.5)
    print(denominator_poly_min(table, 101))  # Q stays positive on [0, 1]

"""
Example output:

[ 2.25       -1.75        0.546875   -0.05859375  0.00097656]
0.707107
(0.0107421875, 1.0)
"""
