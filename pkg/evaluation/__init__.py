"""Initialize evaluation package."""

from .evaluator import ReferenceCaseEvaluator
from .metrics import MetricsCalculator, SweepMetrics
from .reference_cases import get_case_by_index, get_reference_cases

__all__ = [
    "ReferenceCaseEvaluator",
    "MetricsCalculator",
    "SweepMetrics",
    "get_reference_cases",
    "get_case_by_index",
]
