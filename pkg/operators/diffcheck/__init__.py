"""
Diffcheck operators (numerical operators): error metrics, finite-difference
gradient oracle and ZCA whitening helpers.
"""
from operators.diffcheck.metrics import ErrorReport, defining_residual, error_report, mae, nrmse, whitening_error
from operators.diffcheck.finite_diff import finite_diff_grad
from operators.diffcheck.whitening import zca_covariance, zca_whiten

__all__ = [
    "ErrorReport", "defining_residual", "error_report", "mae", "nrmse", "whitening_error",
    "finite_diff_grad", "zca_covariance", "zca_whiten",
]
