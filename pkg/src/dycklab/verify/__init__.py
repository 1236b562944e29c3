"""Finite checkers with golden counts, and the round-trip suites."""

from .east7 import east7_window_check
from .limited import limited_nonzero_check
from .prefix import prefix_form_check
from .report import CheckReport, load_golden
from .residual import residual_check
from .suites import SuiteBudget, roundtrip_suites

__all__ = [
    "CheckReport", "load_golden", "residual_check", "limited_nonzero_check",
    "prefix_form_check", "east7_window_check", "SuiteBudget", "roundtrip_suites",
]
