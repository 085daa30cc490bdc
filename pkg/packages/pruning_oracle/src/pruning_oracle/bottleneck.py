# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Exhaustive check of the bottleneck-cut inequality over supersets of (A, B)."""

from collections.abc import Collection, Sequence
from fractions import Fraction
from itertools import combinations

from pruning_oracle.exceptions import OracleLimitError
from pruning_oracle.models import BottleneckViolation


def _boundary(edges: Sequence[tuple[int, int]], X: frozenset[int]) -> int:
    return sum(1 for u, v in edges if (u in X) != (v in X))


def bottleneck_sides(
    n: int,
    edges: Sequence[tuple[int, int]],
    C: frozenset[int],
    A: frozenset[int],
    B: frozenset[int],
    gamma: Fraction,
    i: int,
    lam: int,
    phi: Fraction,
) -> tuple[Fraction, Fraction]:
    """Both sides of the inequality for one pair (A, B); edges are indexed by position.

    lhs = (8/φ)(|∂(A ∪ C)| − |∂(A)| − #{(v, e): v ∈ C∖A, e ∈ B inside V∖A, v ∈ e})
    rhs = γ − (i/λ)·vol(C∖A)
    """
    rest = C - A
    degree = [0] * n
    for u, v in edges:
        degree[u] += 1
        degree[v] += 1
    deleted = 0
    for e in B:
        u, v = edges[e]
        if u in A or v in A:
            continue
        deleted += (u in rest) + (v in rest)
    lhs = Fraction(8) / phi * (_boundary(edges, A | C) - _boundary(edges, A) - deleted)
    rhs = gamma - Fraction(i, lam) * sum(degree[v] for v in rest)
    return lhs, rhs


def bottleneck_violation(
    n: int,
    edges: Sequence[tuple[int, int]],
    C: Collection[int],
    A: Collection[int],
    B: Collection[int],
    gamma: Fraction,
    i: int,
    lam: int,
    phi: Fraction,
    superset_budget: int,
    exhaustive: bool = True,
) -> BottleneckViolation | None:
    """First superset pair (A′, B′), by number of added elements, that breaks the inequality.

    Args:
        superset_budget: Number of pairs (A′, B′) to check, (A, B) itself included
        exhaustive: Require every superset pair to fit in the budget

    Raises:
        OracleLimitError: If exhaustive and there are more superset pairs than the budget
    """
    C, A, B = frozenset(C), frozenset(A), frozenset(B)
    extra = [("v", v) for v in range(n) if v not in A] + [("e", e) for e in range(len(edges)) if e not in B]
    total = 1 << len(extra)
    if exhaustive and total > superset_budget:
        raise OracleLimitError(f"{total} superset pairs exceed the budget of {superset_budget}")

    checked = 0
    for size in range(len(extra) + 1):
        for added in combinations(extra, size):
            if checked >= superset_budget:
                return None
            checked += 1
            A2 = A | {x for kind, x in added if kind == "v"}
            B2 = B | {x for kind, x in added if kind == "e"}
            lhs, rhs = bottleneck_sides(n, edges, C, A2, B2, gamma, i, lam, phi)
            if lhs > rhs:
                return BottleneckViolation(A=A2, B=B2, lhs=lhs, rhs=rhs)
    return None


def bottleneck_check(
    n: int,
    edges: Sequence[tuple[int, int]],
    C: Collection[int],
    A: Collection[int],
    B: Collection[int],
    gamma: Fraction,
    i: int,
    lam: int,
    phi: Fraction,
    superset_budget: int,
    exhaustive: bool = True,
) -> bool:
    """True iff C is a γ-bottleneck cut at level i with respect to (A, B) on every enumerated superset pair."""
    violation = bottleneck_violation(n, edges, C, A, B, gamma, i, lam, phi, superset_budget, exhaustive)
    return violation is None
