"""
Coefficient operators (numerical operators): binomial Taylor tables and Padé
coefficient pairs for (1 - z)^{+-1/2}.
"""
from operators.coeffs.taylor import TaylorTable, binom_abs, evaluate_taylor, series_coefficients, taylor_table
from operators.coeffs.pade import (
    PadeTable,
    cross_multiplication_residual,
    denominator_poly_min,
    evaluate_rational,
    pade_table,
)

__all__ = [
    "TaylorTable", "binom_abs", "evaluate_taylor", "series_coefficients", "taylor_table",
    "PadeTable", "cross_multiplication_residual", "denominator_poly_min", "evaluate_rational", "pade_table",
]
