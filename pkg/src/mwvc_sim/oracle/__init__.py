"""Exact optimum and certificate validators for small instances."""

from .exact import ExactResult, brute_force_mwvc, exact_mwvc
from .validators import (
    CoverCheck,
    FeasibilityReport,
    RatioReport,
    approximation_bound,
    matching_value,
    ratio_report,
    validate_cover,
    validate_fractional_matching,
    vertex_loads,
)

__all__ = [
    "CoverCheck",
    "ExactResult",
    "FeasibilityReport",
    "RatioReport",
    "approximation_bound",
    "brute_force_mwvc",
    "exact_mwvc",
    "matching_value",
    "ratio_report",
    "validate_cover",
    "validate_fractional_matching",
    "vertex_loads",
]
