# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

from fractions import Fraction
from typing import Literal

from pydantic import BaseModel, ConfigDict


class CutReport(BaseModel):
    """Sparsest cut found by exhaustive enumeration."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    best_cut: frozenset[int]
    conductance: Fraction | None
    volume_measure: Literal["current", "initial_d"]
    cuts_checked: int = 0


class MaxFlowResult(BaseModel):
    """Value of a maximum flow and the flow per input arc, in input order."""

    value: int
    flow: list[int]


class BottleneckViolation(BaseModel):
    """Supersets A′ ⊇ A, B′ ⊇ B for which the bottleneck inequality fails."""

    A: frozenset[int]
    B: frozenset[int]
    lhs: Fraction
    rhs: Fraction

    model_config = ConfigDict(arbitrary_types_allowed=True)
