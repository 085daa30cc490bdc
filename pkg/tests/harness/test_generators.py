# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

from fractions import Fraction

import pytest
from pruning_oracle import conductance_exact

from expander_pruning.common.exceptions import GraphConstructionError
from expander_pruning.harness.generators import barbell, complete, describe, generate, hypercube, random_regular
from expander_pruning.models.experiment import BarbellGraphSource, HypercubeGraphSource, RandomRegularGraphSource


def test_complete_and_hypercube_sizes() -> None:
    k8 = complete(8)
    assert (k8.n, k8.m) == (8, 28)
    assert k8.endpoints(7) == (1, 2)

    q4 = hypercube(4)
    assert (q4.n, q4.m) == (16, 32)
    assert all(len(q4.adjacency[v]) == 4 for v in range(16))


def test_random_regular() -> None:
    """Test the configuration-model generator.

    Verifies that:
    - Every vertex has degree d and no multi-edge appears
    - The same seed gives the same graph
    """
    graph = random_regular(12, 3, seed=5)
    assert graph.m == 18
    assert all(len(graph.adjacency[v]) == 3 for v in range(12))
    edges = graph.edge_list()
    assert len(set(edges)) == len(edges)
    assert all(u != v for u, v in edges)
    assert random_regular(12, 3, seed=5).edge_list() == edges


@pytest.mark.parametrize(("n", "d"), [(7, 3), (4, 4), (4, 0)])
def test_random_regular_rejects_impossible_degrees(n: int, d: int) -> None:
    with pytest.raises(GraphConstructionError):
        random_regular(n, d, seed=0)


def test_barbell_is_a_sparse_cut_control() -> None:
    """Test that the barbell has a cut of conductance below 1/16."""
    graph = barbell(8, 8, 1)
    assert graph.n == 16
    assert graph.m == 57
    report = conductance_exact(graph.n, graph.edge_list())
    assert report.conductance < Fraction(1, 16)

    with pytest.raises(GraphConstructionError):
        barbell(3, 3, 0)


def test_generate_and_describe() -> None:
    source = HypercubeGraphSource(d=3)
    assert describe(source) == "hypercube(d=3)"
    assert generate(source, seed=0).m == 12
    assert describe(BarbellGraphSource(a=4, b=5, bridge_edges=2)) == "barbell(a=4, b=5, bridge_edges=2)"
    assert generate(RandomRegularGraphSource(n=10, d=4), seed=1).m == 20
