"""Exact and numerical tools for the binary non-Pisot inflation 0 -> 0111, 1 -> 0."""

__version__ = "0.1.0"

from .algebra import DENSITY, LAM, NU, QLambda, ZLambda, gcd_facts_check, lambda_power_coeffs, pf_data, zl_mul  # noqa: E402
from .inflation import Word, WeightedPointSet, geometric_patch, letter_frequencies, substitute, supertile_decompose  # noqa: E402
from .correlation import CorrelationTable, base_system_solve, count_correlations, eta, extend_table  # noqa: E402

__all__ = [
    "DENSITY", "LAM", "NU", "QLambda", "ZLambda", "gcd_facts_check", "lambda_power_coeffs", "pf_data", "zl_mul",
    "Word", "WeightedPointSet", "geometric_patch", "letter_frequencies", "substitute", "supertile_decompose",
    "CorrelationTable", "base_system_solve", "count_correlations", "eta", "extend_table",
]
