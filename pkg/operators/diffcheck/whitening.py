import numpy as np

from common.errors import DomainError
from operators.matcore.kernel import symmetrize
from operators.matcore.types import SymMatrix


def zca_covariance(data: np.ndarray, epsilon: float) -> SymMatrix:
    """
    Sample covariance of data (dim x observations) plus epsilon * I.

    :param epsilon: must be > 0, the covariance of few observations can be singular
    """
    if not epsilon > 0:
        raise DomainError(f"epsilon must be > 0 for whitening, got {epsilon}")
    centered = data - data.mean(axis=1, keepdims=True)
    cov = centered @ centered.T / data.shape[1]
    return symmetrize(cov + epsilon * np.eye(data.shape[0]))


def zca_whiten(data: np.ndarray, isqrt: SymMatrix) -> np.ndarray:
    """A^{-1/2} (X - mean)."""
    return isqrt @ (data - data.mean(axis=1, keepdims=True))
