"""
Forward operators (numerical operators): MTP, MPA, coupled and one-variable
Newton-Schulz iterations, and the exact spectral oracle.
"""
from operators.forward.types import ForwardConfig, ForwardResult, Method
from operators.forward.polynomial import poly_eval_normalized
from operators.forward.mtp import mtp
from operators.forward.mpa import mpa
from operators.forward.newton_schulz import ns_coupled, ns_onevar
from operators.forward.spectral import spectral
from operators.forward.batch import approximate, forward_batch

__all__ = [
    "ForwardConfig", "ForwardResult", "Method", "poly_eval_normalized", "mtp", "mpa",
    "ns_coupled", "ns_onevar", "spectral", "approximate", "forward_batch",
]
