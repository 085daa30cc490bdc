# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

from fractions import Fraction
from typing import Any

import pytest
from pruning_oracle import OracleLimitError, bottleneck_check, bottleneck_sides, bottleneck_violation

PHI = Fraction(8)  # makes 8/φ = 1
LEVEL = 1
LAM = 100


def test_empty_cut_is_bottleneck() -> None:
    """Test that C = ∅ reduces the inequality to 0 ≤ γ."""
    edges = [(0, 1), (1, 2)]
    assert bottleneck_check(3, edges, set(), set(), set(), Fraction(0), LEVEL, LAM, PHI, superset_budget=64)


def test_budget_one_is_direct_evaluation(flip_instance: dict[str, Any]) -> None:
    """Test that a budget of one only checks (A, B) itself.

    Verifies that:
    - The direct inequality holds for the flip instance: −4 ≤ −3/50
    - Checking only (A, B) agrees with the direct evaluation
    """
    args = (flip_instance["n"], flip_instance["edges"], flip_instance["C"], flip_instance["A"], flip_instance["B"])
    lhs, rhs = bottleneck_sides(
        args[0],
        args[1],
        frozenset(args[2]),
        frozenset(args[3]),
        frozenset(args[4]),
        Fraction(0),
        LEVEL,
        LAM,
        PHI,
    )
    assert lhs == -4
    assert rhs == Fraction(-3, 50)
    assert bottleneck_check(*args, Fraction(0), LEVEL, LAM, PHI, superset_budget=1, exhaustive=False)


def test_adding_one_vertex_flips(flip_instance: dict[str, Any]) -> None:
    """Test that exhaustive enumeration finds the superset A ∪ {0} that breaks the inequality."""
    args = (flip_instance["n"], flip_instance["edges"], flip_instance["C"], flip_instance["A"], flip_instance["B"])
    assert not bottleneck_check(*args, Fraction(0), LEVEL, LAM, PHI, superset_budget=128)

    violation = bottleneck_violation(*args, Fraction(0), LEVEL, LAM, PHI, superset_budget=128)
    assert violation is not None
    assert violation.A == frozenset({0, 1, 2, 3})
    assert violation.B == frozenset({3})
    assert violation.lhs == 0
    assert violation.rhs == Fraction(-1, 50)


def test_budget_exceeded(flip_instance: dict[str, Any]) -> None:
    args = (flip_instance["n"], flip_instance["edges"], flip_instance["C"], flip_instance["A"], flip_instance["B"])
    with pytest.raises(OracleLimitError):
        bottleneck_check(*args, Fraction(0), LEVEL, LAM, PHI, superset_budget=127)
