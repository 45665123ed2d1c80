from dataclasses import dataclass, field
from enum import Enum

from common.config_loader import get_section
from common.errors import ConfigError
from operators.matcore.types import OpCounters, SymMatrix, Target


class Method(str, Enum):
    MTP = "mtp"
    MPA = "mpa"
    NS_COUPLED = "ns"
    NS_ONEVAR = "ns_onevar"
    SPECTRAL = "spectral"


@dataclass(frozen=True)
class ForwardConfig:
    """
    Forward approximant settings.

    degree_k drives MTP (series degree) and MPA ([M, M] with M = (K - 1) / 2);
    iterations drives the Newton-Schulz methods.
    """

    method: Method
    target: Target
    degree_k: int = 11
    iterations: int = 5
    divergence_factor: float = 1e6

    def __post_init__(self):
        if self.method is Method.MPA and (self.degree_k < 3 or self.degree_k % 2 == 0):
            raise ConfigError(f"MPA needs an odd degree >= 3, got {self.degree_k}")
        if self.method is Method.MTP and self.degree_k < 1:
            raise ConfigError(f"MTP needs a degree >= 1, got {self.degree_k}")
        if self.iterations < 1:
            raise ConfigError(f"iterations must be >= 1, got {self.iterations}")
        if self.method is Method.NS_ONEVAR and self.target is not Target.ISQRT:
            raise ConfigError("the one-variable Newton-Schulz iteration only approximates the inverse square root")

    @property
    def pade_degree(self) -> int:
        return (self.degree_k - 1) // 2

    @classmethod
    def from_config(cls, method: Method, target: Target, **overrides) -> "ForwardConfig":
        section = get_section("forward")
        params = {
            "degree_k": int(section["degree"]),
            "iterations": int(section["iterations"]),
            "divergence_factor": float(section["divergence_factor"]),
        }
        params.update(overrides)
        return cls(method=method, target=target, **params)


@dataclass
class ForwardResult:
    value: SymMatrix
    counters: OpCounters = field(default_factory=OpCounters)
    pre_norm: float = 0.0  # ||A||_F used for pre-normalization and post-compensation
