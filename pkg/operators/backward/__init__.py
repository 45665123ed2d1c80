"""
Backward operators (numerical operators): the iterative Lyapunov gradient
solver, exact Bartels-Stewart and Kronecker oracles, the block sign-function
solver, and reverse mode through the Newton-Schulz forward iteration.
"""
from operators.backward.types import BackwardConfig, GradRequest, GradResult
from operators.backward.lyapunov import lyapunov_grad, lyapunov_rhs
from operators.backward.bartels_stewart import bartels_stewart, kron_solve
from operators.backward.sign_function import lyapunov_sign_block, sign_iteration
from operators.backward.ns_backward import ns_backward, ns_forward_backward
from operators.backward.batch import backward_batch

__all__ = [
    "BackwardConfig", "GradRequest", "GradResult", "lyapunov_grad", "lyapunov_rhs",
    "bartels_stewart", "kron_solve", "lyapunov_sign_block", "sign_iteration", "ns_backward", "ns_forward_backward",
    "backward_batch",
]
