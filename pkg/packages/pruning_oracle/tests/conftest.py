# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Test configuration and fixtures for the pruning_oracle package."""

import pytest
from hypothesis import HealthCheck, settings

PROPERTY_SETTINGS = settings(
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)


def complete_edges(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def cycle_edges(n: int) -> list[tuple[int, int]]:
    return [(v, (v + 1) % n) for v in range(n)]


@pytest.fixture
def k4_edges() -> list[tuple[int, int]]:
    """Edges of the complete graph on four vertices."""
    return complete_edges(4)


@pytest.fixture
def flip_instance() -> dict[str, object]:
    """Six-vertex instance that is a bottleneck cut for (A, B) itself but not once vertex 0 joins A.

    Vertex 0 of C is tied to A = {1, 2, 3} by three edges and to vertex 4 of C by the deleted edge 3.
    """
    return {
        "n": 6,
        "edges": [(0, 1), (0, 2), (0, 3), (0, 4), (4, 5)],
        "C": {0, 4},
        "A": {1, 2, 3},
        "B": {3},
    }
