"""Brute-force reference oracles for expander pruning."""

from pruning_oracle.bottleneck import bottleneck_check, bottleneck_sides, bottleneck_violation
from pruning_oracle.conductance import conductance_exact, is_expander
from pruning_oracle.exceptions import ForestError, OracleLimitError
from pruning_oracle.max_flow import exact_max_flow
from pruning_oracle.models import BottleneckViolation, CutReport, MaxFlowResult
from pruning_oracle.naive_forest import NaiveForest

__all__ = [
    "BottleneckViolation",
    "CutReport",
    "ForestError",
    "MaxFlowResult",
    "NaiveForest",
    "OracleLimitError",
    "bottleneck_check",
    "bottleneck_sides",
    "bottleneck_violation",
    "conductance_exact",
    "exact_max_flow",
    "is_expander",
]
