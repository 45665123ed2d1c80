"""
Exception hierarchy shared by every operator.

Operators raise; only the bench CLI turns these into an exit code.
"""


class MatRootError(Exception):
    """Base class of all errors raised by the operator pool."""


class DimensionMismatchError(MatRootError, ValueError):
    """Operand shapes disagree."""


class NotSymmetricError(MatRootError, ValueError):
    """A symmetric constructor received a non-symmetric array."""


class NotPositiveDefiniteError(MatRootError, ValueError):
    """An SPD precondition does not hold."""


class SingularMatrixError(MatRootError):
    """A linear system has no unique solution."""


class NonConvergenceError(MatRootError):
    """An iteration ran out of sweeps before meeting its tolerance."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class DivergenceError(MatRootError):
    """An iterate grew past the divergence guard."""


class OversizeError(MatRootError, ValueError):
    """A dense Kronecker oracle was asked for more than it may allocate."""


class ConfigError(MatRootError, ValueError):
    """Invalid configuration value or command-line flag."""


class DomainError(MatRootError, ValueError):
    """An argument lies outside the operator's domain."""
