import numpy as np

from common.errors import NotPositiveDefiniteError
from operators.forward.types import ForwardResult
from operators.matcore.eigen import sym_eig
from operators.matcore.kernel import frobenius_norm, matmul, symmetrize
from operators.matcore.types import OpCounters, SpectralDecomp, SymMatrix, Target


def spectral_from_decomp(decomp: SpectralDecomp, target: Target,
                         counters: OpCounters = None) -> SymMatrix:
    """U diag(lambda^{+-1/2}) U^T for an existing decomposition."""
    eigenvalues = decomp.eigenvalues
    if target is Target.ISQRT and np.any(eigenvalues <= 0.0):
        raise NotPositiveDefiniteError(f"inverse square root needs eigenvalues > 0, min is {eigenvalues[0]:.3e}")
    if np.any(eigenvalues < 0.0):
        raise NotPositiveDefiniteError(f"square root needs eigenvalues >= 0, min is {eigenvalues[0]:.3e}")
    roots = np.sqrt(eigenvalues)
    scaled = roots if target is Target.SQRT else 1.0 / roots
    u = decomp.eigenvectors
    return symmetrize(matmul(u * scaled, u.T, counters))


def spectral(a: SymMatrix, target: Target) -> ForwardResult:
    """Exact oracle through the symmetric eigendecomposition."""
    counters = OpCounters()
    decomp = sym_eig(a, counters)
    value = spectral_from_decomp(decomp, target, counters)
    return ForwardResult(value=value, counters=counters, pre_norm=frobenius_norm(a))
