"""
Newton-Schulz forward iterations.

Coupled:     T = (3I - Z Y) / 2,  Y <- Y T,  Z <- T Z,  Y_0 = A / ||A||_F, Z_0 = I
One-variable: Z <- (3Z - Z^3 A / ||A||_F) / 2,  Z_0 = I
"""
from typing import List, NamedTuple, Tuple

import numpy as np

from common.errors import DivergenceError
from common.logger import get_logger
from operators.forward.types import ForwardConfig, ForwardResult
from operators.matcore.kernel import frobenius_norm, identity, matmul, require_spd, symmetrize
from operators.matcore.types import OpCounters, SymMatrix

logger = get_logger(__name__)


class CoupledStep(NamedTuple):
    """Iterates entering one coupled step and the T it produced."""

    y: SymMatrix
    z: SymMatrix
    t: SymMatrix


def _guard(iterate: SymMatrix, initial_norm: float, factor: float, step: int):
    norm = frobenius_norm(iterate)
    if not np.isfinite(norm) or norm > factor * initial_norm:
        raise DivergenceError(f"Newton-Schulz iterate diverged at step {step} (norm {norm:.3e})")


def coupled_iterates(a: SymMatrix, iterations: int, divergence_factor: float,
                     counters: OpCounters) -> Tuple[SymMatrix, SymMatrix, float, List[CoupledStep]]:
    """
    Run the coupled iteration on A / ||A||_F.

    :return: (Y_T, Z_T, ||A||_F, stored steps)
    """
    norm = frobenius_norm(a)
    eye = identity(a.shape[0])
    y = a / norm
    z = eye.copy()
    initial = frobenius_norm(y)
    steps: List[CoupledStep] = []
    for step in range(iterations):
        t = 0.5 * (3.0 * eye - matmul(z, y, counters))
        steps.append(CoupledStep(y=y, z=z, t=t))
        y = matmul(y, t, counters)
        z = matmul(t, z, counters)
        _guard(y, initial, divergence_factor, step)
    return y, z, norm, steps


def ns_coupled(a: SymMatrix, cfg: ForwardConfig) -> Tuple[ForwardResult, ForwardResult]:
    """(sqrt, isqrt) after cfg.iterations coupled steps; 3 matmuls per step."""
    require_spd(a, "Newton-Schulz input")
    counters = OpCounters()
    y, z, norm, _ = coupled_iterates(a, cfg.iterations, cfg.divergence_factor, counters)
    root = np.sqrt(norm)
    sqrt_result = ForwardResult(value=symmetrize(root * y), counters=counters.copy(), pre_norm=norm)
    isqrt_result = ForwardResult(value=symmetrize(z / root), counters=counters.copy(), pre_norm=norm)
    return sqrt_result, isqrt_result


def ns_onevar(a: SymMatrix, cfg: ForwardConfig) -> ForwardResult:
    """Inverse square root by the one-variable iteration; 3 matmuls per step."""
    require_spd(a, "Newton-Schulz input")
    counters = OpCounters()
    norm = frobenius_norm(a)
    scaled = a / norm
    z = identity(a.shape[0])
    initial = frobenius_norm(z)
    for step in range(cfg.iterations):
        z2 = matmul(z, z, counters)
        z3 = matmul(z2, z, counters)
        z = 0.5 * (3.0 * z - matmul(z3, scaled, counters))
        _guard(z, initial, cfg.divergence_factor, step)
    logger.debug("one-variable Newton-Schulz finished %d steps", cfg.iterations)
    return ForwardResult(value=symmetrize(z / np.sqrt(norm)), counters=counters, pre_norm=norm)
