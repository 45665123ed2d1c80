"""Matrix polynomials in the normalized variable Z = I - A / ||A||_F."""
from typing import Optional, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from operators.matcore.kernel import frobenius_norm, identity, matmul
from operators.matcore.types import OpCounters, SymMatrix


def normalized_variable(a: SymMatrix) -> Tuple[SymMatrix, float]:
    """Z = I - a / ||a||_F and the norm used. Not counted."""
    norm = frobenius_norm(a)
    return identity(a.shape[0]) - a / norm, norm


def horner(z: SymMatrix, coeffs: ArrayLike, sign: int, counters: Optional[OpCounters] = None) -> SymMatrix:
    """
    I + sign * sum_{k=1..K} coeffs[k-1] Z^k by Horner's scheme.

    The innermost step c_K Z needs no product, so K - 1 matmuls are spent.
    """
    coeffs = np.asarray(coeffs, dtype=np.float64)
    eye = identity(z.shape[0])
    if coeffs.size == 0:
        return eye
    acc = coeffs[-1] * z
    for c in coeffs[-2::-1]:
        acc = matmul(z, c * eye + acc, counters)
    return eye + sign * acc


def poly_eval_normalized(a: SymMatrix, coeffs: ArrayLike, sign: int,
                         counters: Optional[OpCounters] = None) -> SymMatrix:
    """I + sign * sum_k coeffs[k-1] (I - a / ||a||_F)^k, len(coeffs) - 1 matmuls."""
    z, _ = normalized_variable(a)
    return horner(z, coeffs, sign, counters)


def power_chain(z: SymMatrix, degree: int, counters: Optional[OpCounters] = None) -> NDArray[np.float64]:
    """Stack [Z, Z^2, ..., Z^degree]; degree - 1 matmuls."""
    powers = [z]
    for _ in range(degree - 1):
        powers.append(matmul(powers[-1], z, counters))
    return np.stack(powers)


def combine_powers(powers: NDArray[np.float64], coeffs: ArrayLike, sign: int) -> SymMatrix:
    """I + sign * sum_k coeffs[k-1] powers[k-1] without further products."""
    coeffs = np.asarray(coeffs, dtype=np.float64)
    eye = identity(powers.shape[1])
    return eye + sign * np.tensordot(coeffs, powers[:coeffs.size], axes=1)
