"""
Reverse mode through the coupled Newton-Schulz forward iteration.

Forward step:  T = (3I - Z Y) / 2,  Y' = Y T,  Z' = T Z
Adjoint step:  gT = Y^T gY' + gZ' Z^T
               gY = gY' T^T - Z^T gT / 2
               gZ = T^T gZ' - gT Y^T / 2
The normalization Y_0 = A / n with n = ||A||_F and the post-compensation
(sqrt(n) Y_T or Z_T / sqrt(n)) contribute through dn/dA = A / n.
"""
from typing import Tuple

import numpy as np

from operators.backward.types import GradResult
from operators.forward.newton_schulz import coupled_iterates
from operators.forward.types import ForwardResult
from operators.matcore.kernel import frobenius_norm, identity, matmul, require_spd, symmetrize
from operators.matcore.types import OpCounters, SymMatrix, Target


def ns_forward_backward(a: SymMatrix, upstream: SymMatrix, iterations: int, target: Target = Target.SQRT,
                        divergence_factor: float = 1e6) -> Tuple[ForwardResult, GradResult]:
    """
    Forward value and gradient from one pass over the stored iterates.

    The forward result counts 3 matmuls per step, the gradient 6 per adjoint step.
    """
    require_spd(a, "Newton-Schulz input")
    forward_counters = OpCounters()
    y_t, z_t, norm, steps = coupled_iterates(a, iterations, divergence_factor, forward_counters)
    root = np.sqrt(norm)

    zero = np.zeros_like(a)
    if target is Target.SQRT:
        value = root * y_t
        g_y, g_z = root * upstream, zero
        g_norm = float(np.sum(upstream * y_t)) / (2.0 * root)
    else:
        value = z_t / root
        g_y, g_z = zero, upstream / root
        g_norm = -float(np.sum(upstream * z_t)) / (2.0 * norm * root)

    counters = OpCounters()
    for step in reversed(steps):
        g_t = matmul(step.y.T, g_y, counters) + matmul(g_z, step.z.T, counters)
        g_y, g_z = (
            matmul(g_y, step.t.T, counters) - 0.5 * matmul(step.z.T, g_t, counters),
            matmul(step.t.T, g_z, counters) - 0.5 * matmul(g_t, step.y.T, counters),
        )

    g_norm -= float(np.sum(g_y * a)) / norm ** 2
    grad = g_y / norm + g_norm * a / norm
    residual = frobenius_norm(identity(a.shape[0]) - z_t @ y_t)
    forward = ForwardResult(value=symmetrize(value), counters=forward_counters, pre_norm=norm)
    return forward, GradResult(grad=grad, residual_b=residual, counters=counters, iterations=iterations)


def ns_backward(a: SymMatrix, upstream: SymMatrix, iterations: int, target: Target = Target.SQRT,
                divergence_factor: float = 1e6) -> GradResult:
    """
    Gradient of <upstream, NS forward output> with respect to a.

    Counters cover the forward replay and the adjoint pass (9 matmuls per iteration).
    """
    forward, result = ns_forward_backward(a, upstream, iterations, target, divergence_factor)
    result.counters = forward.counters.copy().merge(result.counters)
    return result
