# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

import pytest

from expander_pruning.graph.dyngraph import DecGraph
from expander_pruning.harness.adversary import BoundaryAdversary, VertexDrainAdversary, make_adversary
from expander_pruning.models.experiment import AdversaryEnum


def _drive(graph: DecGraph, kind: AdversaryEnum, seed: int, steps: int) -> list[int]:
    adversary = make_adversary(kind, seed)
    chosen = []
    for _ in range(steps):
        e = adversary.next_edge(graph, set())
        assert e is not None
        graph.delete_edge(e)
        chosen.append(e)
    return chosen


@pytest.mark.parametrize("kind", list(AdversaryEnum))
def test_adversaries_are_deterministic(kind: AdversaryEnum, k8: DecGraph) -> None:
    """Test that the same seed chooses the same live edges."""
    first = _drive(k8.copy(), kind, seed=3, steps=10)
    second = _drive(k8.copy(), kind, seed=3, steps=10)
    assert first == second
    assert len(set(first)) == 10


def test_exhausted_graph_returns_none() -> None:
    graph = DecGraph.new_graph([(0, 1)], 2)
    graph.delete_edge(0)
    assert make_adversary(AdversaryEnum.RANDOM, 0).next_edge(graph, set()) is None


def test_boundary_adversary_targets_the_pruned_set(k4: DecGraph) -> None:
    adversary = BoundaryAdversary(seed=0)
    for _ in range(3):
        e = adversary.next_edge(k4, {0})
        assert e is not None
        assert 0 in k4.endpoints(e)
        k4.delete_edge(e)


def test_vertex_drain_empties_one_vertex_first(k8: DecGraph) -> None:
    """Test that the drain adversary deletes every edge of its start vertex before moving on.

    Verifies that:
    - The first seven deletions share one endpoint
    - That vertex is left without live edges
    """
    adversary = VertexDrainAdversary(seed=11)
    chosen = _drive(k8, AdversaryEnum.VERTEX_DRAIN, seed=11, steps=7)
    start = adversary._targets(k8)[0]
    assert all(start in k8.endpoints(e) for e in chosen)
    assert k8.incident_live(start) == []
