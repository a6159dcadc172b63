"""Exact Stirling numbers of the first kind and their 2-adic valuations.

The package computes unsigned Stirling numbers s(n, k), shifted rows
s_m(n, k) from rising factorials of x + m, and elementary symmetric
functions H(n, k) of 1, 1/2, ..., 1/n, all in exact arithmetic. On top
of that it provides closed-form 2-adic valuation predictions for rows
of length a power of two, and a verifier that checks every prediction
against brute-force ground truth computed by two independent engines.
"""

from .errors import ConsistencyError, DomainError, ResourceLimitError, StirvalError
from .formulas import (
    IndexDecomposition,
    PredictionRecord,
    corollary13_valuation,
    decompose_index,
    komatsu_young_valuation,
    lengyel_small_k,
    lengyel_step,
    predict_valuation,
    theorem1_valuation,
    theorem2_predicted,
)
from .harmonic import HarmonicTable, bound_margin, conjecture_scan, harmonic_table, identity_residual
from .padic import INFINITE, digit_sum, factorial_valuation, vp_int, vp_rat
from .stirling_core import (
    ShiftedRow,
    StirlingRow,
    convolution_rhs,
    lemma21_rhs,
    row_product_tree,
    row_recurrence,
    shifted_row_expand,
    shifted_value_sum,
    special_value,
    stirling,
)
from .verifier import CheckReport, CheckResult, run_suite

__version__ = "0.1.0"

__all__ = [
    "CheckReport",
    "CheckResult",
    "ConsistencyError",
    "DomainError",
    "HarmonicTable",
    "INFINITE",
    "IndexDecomposition",
    "PredictionRecord",
    "ResourceLimitError",
    "ShiftedRow",
    "StirlingRow",
    "StirvalError",
    "bound_margin",
    "conjecture_scan",
    "convolution_rhs",
    "corollary13_valuation",
    "decompose_index",
    "digit_sum",
    "factorial_valuation",
    "harmonic_table",
    "identity_residual",
    "komatsu_young_valuation",
    "lemma21_rhs",
    "lengyel_small_k",
    "lengyel_step",
    "predict_valuation",
    "row_product_tree",
    "row_recurrence",
    "run_suite",
    "shifted_row_expand",
    "shifted_value_sum",
    "special_value",
    "stirling",
    "theorem1_valuation",
    "theorem2_predicted",
    "vp_int",
    "vp_rat",
    "__version__",
]
