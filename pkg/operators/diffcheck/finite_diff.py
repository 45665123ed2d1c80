"""
Central finite differences of l(A) = <upstream, f(A)> over symmetric
perturbations: diagonal entries move by h, off-diagonal pairs by h/2 each.
The result is the symmetric part of the gradient.
"""
from functools import partial
from typing import Callable, Optional

import numpy as np

from common.errors import NotPositiveDefiniteError
from common.logger import get_logger
from operators.forward.spectral import spectral
from operators.matcore.kernel import frobenius_norm, require_spd
from operators.matcore.types import SymMatrix, Target

logger = get_logger(__name__)

MatrixFunction = Callable[[SymMatrix], SymMatrix]


def _spectral_value(m: SymMatrix, target: Target) -> SymMatrix:
    return spectral(m, target).value


def _central_differences(a: SymMatrix, upstream: SymMatrix, h: float, function: MatrixFunction) -> SymMatrix:
    dim = a.shape[0]
    grad = np.zeros((dim, dim))
    for i in range(dim):
        for j in range(i, dim):
            direction = np.zeros((dim, dim))
            if i == j:
                direction[i, i] = 1.0
            else:
                direction[i, j] = direction[j, i] = 0.5
            plus = a + h * direction
            minus = a - h * direction
            require_spd(plus, "perturbed matrix")
            require_spd(minus, "perturbed matrix")
            slope = (np.sum(upstream * function(plus)) - np.sum(upstream * function(minus))) / (2.0 * h)
            grad[i, j] = grad[j, i] = slope
    return grad


def finite_diff_grad(target: Target, a: SymMatrix, upstream: SymMatrix, h: Optional[float] = None,
                     function: Optional[MatrixFunction] = None) -> SymMatrix:
    """
    :param target: matrix function differentiated when function is not given (spectral oracle)
    :param h: step, default 1e-5 * ||a||_F / dim; shrunk once by 10 if a perturbation leaves the SPD cone
    :param function: alternative forward map, e.g. a truncated Newton-Schulz iteration
    """
    if h is None:
        h = 1e-5 * frobenius_norm(a) / a.shape[0]
    evaluate = function or partial(_spectral_value, target=target)
    try:
        return _central_differences(a, upstream, h, evaluate)
    except NotPositiveDefiniteError:
        logger.debug("finite-difference step %.3e left the SPD cone, retrying with %.3e", h, h / 10)
    return _central_differences(a, upstream, h / 10.0, evaluate)
