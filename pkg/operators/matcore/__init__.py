"""
Dense symmetric matrix kernel (numerical operators).

Storage, arithmetic, norms, linear solves, symmetric eigendecomposition,
Kronecker utilities, random SPD generation and operation counting.
"""
from operators.matcore.types import (
    MatrixBatch,
    OpCounters,
    RandomSpdConfig,
    SpectralDecomp,
    SymMatrix,
    Target,
)
from operators.matcore.kernel import (
    frobenius_norm,
    identity,
    kron,
    make_sym_matrix,
    matmul,
    require_spd,
    solve_spd,
    symmetrize,
)
from operators.matcore.eigen import sym_eig
from operators.matcore.random_spd import covariance_suite, random_data, random_spd, random_symmetric

__all__ = [
    "MatrixBatch", "OpCounters", "RandomSpdConfig", "SpectralDecomp", "SymMatrix", "Target",
    "frobenius_norm", "identity", "kron", "make_sym_matrix", "matmul", "require_spd",
    "solve_spd", "symmetrize", "sym_eig", "covariance_suite", "random_data", "random_spd",
    "random_symmetric",
]
