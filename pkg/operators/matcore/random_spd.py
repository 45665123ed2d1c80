"""
Random covariance generation on counter-based streams.

Each draw owns a Philox generator keyed by (seed, stream), so the matrices of
a suite do not depend on the order or the thread in which they are produced.
"""
from typing import Optional

import numpy as np

from common.errors import DomainError
from operators.matcore.kernel import symmetrize
from operators.matcore.types import MatrixBatch, RandomSpdConfig, SymMatrix

# Stream bases keep upstream gradients and raw data independent of the covariance draws
UPSTREAM_STREAM_BASE = 1 << 32
DATA_STREAM_BASE = 2 << 32


def _generator(seed: int, stream: int) -> np.random.Generator:
    key = np.array([seed, stream], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def random_spd(cfg: RandomSpdConfig) -> SymMatrix:
    """
    A = X X^T / m + epsilon * tr(X X^T / m) / dim * I with X of shape (dim, m), i.i.d. N(0, 1).

    m is cfg.samples, or dim when unset.
    """
    samples = cfg.samples or cfg.dim
    x = _generator(cfg.seed, cfg.stream).standard_normal((cfg.dim, samples))
    cov = x @ x.T / samples
    cov += cfg.epsilon * np.trace(cov) / cfg.dim * np.eye(cfg.dim)
    return symmetrize(cov)


def random_symmetric(dim: int, seed: int, stream: int = 0) -> SymMatrix:
    """Symmetric upstream gradient (W + W^T) / 2 with W i.i.d. N(0, 1)."""
    w = _generator(seed, UPSTREAM_STREAM_BASE + stream).standard_normal((dim, dim))
    return symmetrize(w)


def random_data(dim: int, observations: int, seed: int, stream: int = 0) -> np.ndarray:
    """Data matrix of shape (dim, observations) for the whitening demo."""
    return _generator(seed, DATA_STREAM_BASE + stream).standard_normal((dim, observations))


def covariance_suite(count: int, dim: int, seed: int, samples: Optional[int] = None,
                     epsilon: float = 1e-5) -> MatrixBatch:
    """count random_spd draws, item i on stream i."""
    if count < 1:
        raise DomainError(f"suite needs at least one matrix, got {count}")
    items = np.stack([
        random_spd(RandomSpdConfig(dim=dim, seed=seed, epsilon=epsilon, samples=samples, stream=index))
        for index in range(count)
    ])
    return MatrixBatch(items=items)
