from dataclasses import dataclass, field
from typing import Optional

from common.config_loader import get_section
from common.errors import ConfigError, DimensionMismatchError
from operators.matcore.types import OpCounters, SymMatrix, Target


@dataclass(frozen=True)
class BackwardConfig:
    """T coupled Lyapunov steps; optional early stop once ||B_k - I||_F < tolerance."""

    iterations: int = 8
    tolerance: Optional[float] = None
    divergence_factor: float = 1e6

    def __post_init__(self):
        if self.iterations < 1:
            raise ConfigError(f"iterations must be >= 1, got {self.iterations}")
        if self.tolerance is not None and not self.tolerance > 0:
            raise ConfigError(f"tolerance must be > 0 when set, got {self.tolerance}")

    @classmethod
    def from_config(cls, **overrides) -> "BackwardConfig":
        section = get_section("backward")
        params = {
            "iterations": int(section["iterations"]),
            "tolerance": section.get("tolerance"),
            "divergence_factor": float(get_section("forward")["divergence_factor"]),
        }
        params.update(overrides)
        return cls(**params)


@dataclass(frozen=True)
class GradRequest:
    """
    target:        function whose gradient is wanted
    a:             original input (the inverse-sqrt initialization needs its shape only)
    forward_value: A^{1/2} or A^{-1/2}
    upstream:      dl/dA^{1/2} or dl/dA^{-1/2}
    """

    target: Target
    a: SymMatrix
    forward_value: SymMatrix
    upstream: SymMatrix
    config: BackwardConfig = field(default_factory=BackwardConfig)

    def __post_init__(self):
        shapes = {self.a.shape, self.forward_value.shape, self.upstream.shape}
        if len(shapes) != 1:
            raise DimensionMismatchError(f"gradient request shapes disagree: {sorted(shapes)}")
        if self.a.ndim != 2 or self.a.shape[0] != self.a.shape[1]:
            raise DimensionMismatchError(f"gradient request needs square matrices, got {self.a.shape}")


@dataclass
class GradResult:
    grad: SymMatrix
    residual_b: float  # ||B_T - I||_F, or ||I - Z_T Y_T||_F for the Newton-Schulz baseline
    counters: OpCounters = field(default_factory=OpCounters)
    iterations: int = 0
    residual_x: Optional[float] = None  # ||C_T / 2 - X||_F against a supplied reference
