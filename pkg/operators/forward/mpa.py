"""
Matrix Padé Approximant (MPA) forward operator.

Both targets reuse the [M, M] sqrt table (the inverse-sqrt approximant is the
reciprocal of the sqrt one):
    sqrt:  Q_N Y = sqrt(||A||_F) P_M
    isqrt: P_M Y = Q_N / sqrt(||A||_F)
P_M and Q_N share the power chain Z^2..Z^M, so M - 1 matmuls and one solve
are spent.
"""
import numpy as np

from operators.coeffs.pade import pade_table
from operators.forward.polynomial import combine_powers, normalized_variable, power_chain
from operators.forward.types import ForwardConfig, ForwardResult, Method
from operators.matcore.kernel import require_spd, solve_spd, symmetrize
from operators.matcore.types import OpCounters, SymMatrix, Target


def mpa(a: SymMatrix, cfg: ForwardConfig) -> ForwardResult:
    require_spd(a, "MPA input")
    counters = OpCounters()
    degree = cfg.pade_degree
    table = pade_table(Target.SQRT, degree, degree)

    z, norm = normalized_variable(a)
    powers = power_chain(z, degree, counters)
    p_m = combine_powers(powers, table.p, Target.SQRT.sign)
    q_n = combine_powers(powers, table.q, Target.SQRT.sign)

    if cfg.target is Target.SQRT:
        value = solve_spd(q_n, np.sqrt(norm) * p_m, counters)
    else:
        value = solve_spd(p_m, q_n / np.sqrt(norm), counters)
    return ForwardResult(value=symmetrize(value), counters=counters, pre_norm=norm)


if __name__ == '__main__':
    a = np.diag([4.0, 9.0])
    result = mpa(a, ForwardConfig.from_config(Method.MPA, Target.SQRT))
    print(np.round(result.value, 6))
    print(result.counters.as_dict())  # degree 11: 4 matmuls, one solve

"""
Example output:

[[2. 0.]
 [0. 3.]]
{'matmul': 4, 'solve': 1, 'inverse': 0, 'eig': 0}
"""
