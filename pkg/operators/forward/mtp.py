"""
Matrix Taylor Polynomial (MTP) forward operator.

sqrt:  sqrt(||A||_F) * (I - sum_k |binom(1/2, k)| Z^k)
isqrt: (I + sum_k |binom(-1/2, k)| Z^k) / sqrt(||A||_F)
"""
import numpy as np

from operators.coeffs.taylor import taylor_table
from operators.forward.polynomial import horner, normalized_variable
from operators.forward.types import ForwardConfig, ForwardResult
from operators.matcore.kernel import require_spd, symmetrize
from operators.matcore.types import OpCounters, SymMatrix, Target


def mtp(a: SymMatrix, cfg: ForwardConfig) -> ForwardResult:
    require_spd(a, "MTP input")
    counters = OpCounters()
    z, norm = normalized_variable(a)
    series = horner(z, taylor_table(cfg.target, cfg.degree_k).c, cfg.target.sign, counters)
    scale = np.sqrt(norm) if cfg.target is Target.SQRT else 1.0 / np.sqrt(norm)
    return ForwardResult(value=symmetrize(scale * series), counters=counters, pre_norm=norm)
