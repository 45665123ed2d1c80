"""Exact Lyapunov solvers used as gradient oracles."""
from typing import Optional

import numpy as np
from scipy import linalg

from common.errors import DimensionMismatchError, NotPositiveDefiniteError, OversizeError
from operators.matcore.eigen import sym_eig
from operators.matcore.kernel import identity, kron, matmul
from operators.matcore.types import OpCounters, SymMatrix

KRON_SOLVE_MAX_DIM = 8


def _check_pair(b: SymMatrix, c: SymMatrix):
    if b.ndim != 2 or b.shape[0] != b.shape[1] or b.shape != c.shape:
        raise DimensionMismatchError(f"Lyapunov operands disagree: {b.shape} and {c.shape}")


def bartels_stewart(b: SymMatrix, c: SymMatrix, counters: Optional[OpCounters] = None) -> SymMatrix:
    """
    Solve B X + X B = C for SPD B in the eigenbasis of B:
    X = U ((U^T C U)_ij / (lambda_i + lambda_j)) U^T.
    """
    b = np.asarray(b, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    _check_pair(b, c)
    decomp = sym_eig(b, counters)
    lam = decomp.eigenvalues
    denom = lam[:, None] + lam[None, :]
    if np.any(denom <= 0.0):
        raise NotPositiveDefiniteError(f"Lyapunov operator is singular (min eigenvalue {lam[0]:.3e})")
    u = decomp.eigenvectors
    rotated = matmul(matmul(u.T, c, counters), u, counters)
    return matmul(matmul(u, rotated / denom, counters), u.T, counters)


def kron_solve(b: SymMatrix, c: SymMatrix) -> SymMatrix:
    """Closed form vec(X) = (B (x) I + I (x) B)^{-1} vec(C); dim <= 8 only."""
    b = np.asarray(b, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    _check_pair(b, c)
    dim = b.shape[0]
    if dim > KRON_SOLVE_MAX_DIM:
        raise OversizeError(f"kron_solve is limited to dim <= {KRON_SOLVE_MAX_DIM}, got {dim}")
    eye = identity(dim)
    operator = kron(b, eye) + kron(eye, b)
    x = linalg.solve(operator, c.flatten(order="F"))
    return x.reshape((dim, dim), order="F")
