from dataclasses import dataclass, fields
from enum import Enum
from typing import Dict, Optional

import numpy as np
from numpy.typing import NDArray

from common.errors import DimensionMismatchError, DomainError

# Dense square symmetric f64 array; symmetry is established by make_sym_matrix
SymMatrix = NDArray[np.float64]


class Target(str, Enum):
    """Matrix function being approximated."""

    SQRT = "sqrt"
    ISQRT = "isqrt"

    @property
    def sign(self) -> int:
        """Sign of the non-constant binomial terms of (1 - z)^{+-1/2}."""
        return -1 if self is Target.SQRT else 1

    @property
    def exponent(self) -> float:
        return 0.5 if self is Target.SQRT else -0.5


@dataclass
class OpCounters:
    """Tallies of the expensive primitives performed inside one call scope."""

    matmul: int = 0
    solve: int = 0
    inverse: int = 0
    eig: int = 0

    def merge(self, other: "OpCounters") -> "OpCounters":
        for field in fields(self):
            setattr(self, field.name, getattr(self, field.name) + getattr(other, field.name))
        return self

    def copy(self) -> "OpCounters":
        return OpCounters(self.matmul, self.solve, self.inverse, self.eig)

    def as_dict(self) -> Dict[str, int]:
        return {field.name: getattr(self, field.name) for field in fields(self)}


@dataclass(frozen=True)
class SpectralDecomp:
    """Eigenvalues in ascending order; eigenvectors are the columns of an orthogonal matrix."""

    eigenvalues: NDArray[np.float64]
    eigenvectors: NDArray[np.float64]


@dataclass(frozen=True)
class MatrixBatch:
    """Same-dimension symmetric matrices stacked as a (count, dim, dim) array."""

    items: NDArray[np.float64]

    def __post_init__(self):
        if self.items.ndim != 3 or self.items.shape[1] != self.items.shape[2]:
            raise DimensionMismatchError(f"batch must have shape (count, dim, dim), got {self.items.shape}")
        if self.items.shape[0] < 1 or self.items.shape[1] < 1:
            raise DimensionMismatchError("batch must hold at least one matrix of dim >= 1")

    @property
    def count(self) -> int:
        return self.items.shape[0]

    @property
    def dim(self) -> int:
        return self.items.shape[1]

    def __len__(self) -> int:
        return self.count

    def __iter__(self):
        return iter(self.items)

    def __getitem__(self, index: int) -> SymMatrix:
        return self.items[index]


@dataclass(frozen=True)
class RandomSpdConfig:
    """
    Parameters of one random covariance draw.

    samples is the number of observations behind the covariance (defaults to dim);
    stream selects an independent counter stream under the same seed.
    """

    dim: int
    seed: int
    epsilon: float = 1e-5
    samples: Optional[int] = None
    stream: int = 0

    def __post_init__(self):
        if self.dim < 1:
            raise DomainError(f"dim must be >= 1, got {self.dim}")
        if not self.epsilon > 0:
            raise DomainError(f"epsilon must be > 0, got {self.epsilon}")
        if self.samples is not None and self.samples < 1:
            raise DomainError(f"samples must be >= 1, got {self.samples}")
        if self.seed < 0 or self.stream < 0:
            raise DomainError("seed and stream must be non-negative")
