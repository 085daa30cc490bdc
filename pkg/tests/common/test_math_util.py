# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from expander_pruning.common.math_util import MathUtil


@pytest.mark.parametrize(
    ("value", "expected"),
    [("1/4", Fraction(1, 4)), (" 3/6 ", Fraction(1, 2)), ("2", Fraction(2)), (3, Fraction(3))],
)
def test_parse_fraction(value: str | int, expected: Fraction) -> None:
    assert MathUtil.parse_fraction(value) == expected


@pytest.mark.parametrize("value", ["0", "-1/2", "a/b", "1/0"])
def test_parse_fraction_rejects(value: str) -> None:
    with pytest.raises((ValueError, ZeroDivisionError)):
        MathUtil.parse_fraction(value)


def test_log_terms() -> None:
    assert MathUtil.log_terms(8) == (3, 2)
    assert MathUtil.log_terms(16) == (4, 2)
    assert MathUtil.log_terms(17) == (5, 3)
    assert MathUtil.log_terms(1) == (1, 1)
    assert MathUtil.ceil_div(Fraction(7, 2)) == 4
    assert MathUtil.ceil_div(3) == 3


@given(st.fractions(min_value=Fraction(1, 1000), max_value=10**6))
def test_ceil_log2_is_tight(value: Fraction) -> None:
    """Test that ceil_log2 returns the smallest exponent at or above the floor.

    Verifies that:
    - 2^j reaches the value
    - 2^(j − 1) does not, unless j is the floor
    """
    j = MathUtil.ceil_log2(value)
    assert 2**j >= value
    assert j == 1 or 2 ** (j - 1) < value
