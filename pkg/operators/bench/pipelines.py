"""
Forward + backward pipelines (numerical operators).

Each pipeline maps (a, upstream, target) to (ForwardResult, GradResult) with
the default degree / iteration settings of config.yaml.
"""
from typing import Tuple

from common.config_loader import get_section
from operators.backward.bartels_stewart import bartels_stewart
from operators.backward.lyapunov import lyapunov_grad, lyapunov_rhs
from operators.backward.ns_backward import ns_forward_backward
from operators.backward.types import BackwardConfig, GradRequest, GradResult
from operators.forward.mpa import mpa
from operators.forward.mtp import mtp
from operators.forward.spectral import spectral
from operators.forward.types import ForwardConfig, ForwardResult, Method
from operators.matcore.types import OpCounters, SymMatrix, Target

PipelineResult = Tuple[ForwardResult, GradResult]


def _lyapunov_backward(a: SymMatrix, forward: ForwardResult, upstream: SymMatrix, target: Target) -> GradResult:
    request = GradRequest(target=target, a=a, forward_value=forward.value, upstream=upstream,
                          config=BackwardConfig.from_config())
    return lyapunov_grad(request)


def mpa_lya(a: SymMatrix, upstream: SymMatrix, target: Target) -> PipelineResult:
    forward = mpa(a, ForwardConfig.from_config(Method.MPA, target))
    return forward, _lyapunov_backward(a, forward, upstream, target)


def mtp_lya(a: SymMatrix, upstream: SymMatrix, target: Target) -> PipelineResult:
    forward = mtp(a, ForwardConfig.from_config(Method.MTP, target))
    return forward, _lyapunov_backward(a, forward, upstream, target)


def ns_pipeline(a: SymMatrix, upstream: SymMatrix, target: Target) -> PipelineResult:
    iterations = int(get_section("forward")["iterations"])
    return ns_forward_backward(a, upstream, iterations, target)


def spectral_bs(a: SymMatrix, upstream: SymMatrix, target: Target) -> PipelineResult:
    forward = spectral(a, target)
    request = GradRequest(target=target, a=a, forward_value=forward.value, upstream=upstream)
    counters = OpCounters()
    grad = bartels_stewart(forward.value, lyapunov_rhs(request), counters)
    return forward, GradResult(grad=grad, residual_b=0.0, counters=counters)
