# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

import math
from fractions import Fraction


class MathUtil:
    """Exact arithmetic helpers. All algorithm constants are rationals, rounded up only when they become units."""

    @staticmethod
    def parse_fraction(value: str | Fraction | int) -> Fraction:
        """Parse a rational given as "NUM/DEN" or as an integer string.

        Args:
            value: The rational, e.g. "1/4"

        Returns:
            The parsed fraction

        Raises:
            ValueError: If the value is not a positive rational
        """
        if isinstance(value, Fraction):
            parsed = value
        elif isinstance(value, int):
            parsed = Fraction(value)
        else:
            text = value.strip()
            if "/" in text:
                num, den = text.split("/", 1)
                parsed = Fraction(int(num), int(den))
            else:
                parsed = Fraction(int(text))

        if parsed <= 0:
            raise ValueError(f"Expected a positive rational, got {value}")

        return parsed

    @staticmethod
    def ceil_log2(value: int | Fraction, floor: int = 1) -> int:
        """Smallest j ≥ floor with 2^j ≥ value, computed exactly."""
        j = floor
        while Fraction(2) ** j < value:
            j += 1
        return j

    @staticmethod
    def ceil_div(value: Fraction | int) -> int:
        """Round a rational up to the next integer."""
        return math.ceil(Fraction(value))

    @staticmethod
    def log_terms(n: int) -> tuple[int, int]:
        """Return (⌈log2 n⌉, ⌈log2 ⌈log2 n⌉⌉), both floored at 1."""
        log_n = MathUtil.ceil_log2(max(n, 1))
        return log_n, MathUtil.ceil_log2(log_n)
