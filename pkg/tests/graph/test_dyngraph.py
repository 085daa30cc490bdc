# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

import pytest
from hypothesis import given
from hypothesis import strategies as st

from expander_pruning.common.exceptions import EdgeAlreadyDeletedError, GraphConstructionError
from expander_pruning.graph.dyngraph import DecGraph
from tests.conftest import PROPERTY_SETTINGS, graphs


def test_new_graph_rejects_invalid_edges() -> None:
    """Test graph construction errors.

    Verifies that:
    - A self-loop is rejected
    - An endpoint outside the vertex range is rejected
    - A negative vertex count is rejected
    """
    with pytest.raises(GraphConstructionError):
        DecGraph.new_graph([(0, 0)], 2)
    with pytest.raises(GraphConstructionError):
        DecGraph.new_graph([(0, 2)], 2)
    with pytest.raises(GraphConstructionError):
        DecGraph.new_graph([], -1)


def test_multi_edges_are_kept() -> None:
    graph = DecGraph.new_graph([(0, 1), (0, 1), (1, 2)], 3)
    assert graph.m == 3
    assert graph.d == (2, 3, 1)
    assert graph.boundary([0]) == {0, 1}


def test_arcs_and_endpoints(k4: DecGraph) -> None:
    """Test the arc numbering.

    Verifies that:
    - Arc 2e runs tail to head and arc 2e + 1 runs head to tail
    - arc_from picks the arc leaving the given endpoint
    """
    u, v = k4.endpoints(0)
    assert (k4.arc_tail(0), k4.arc_head(0)) == (u, v)
    assert (k4.arc_tail(1), k4.arc_head(1)) == (v, u)
    assert k4.arc_from(0, u) == 0
    assert k4.arc_from(0, v) == 1
    assert k4.other(0, u) == v


def test_delete_edge(k4: DecGraph) -> None:
    """Test edge deletion.

    Verifies that:
    - Current degrees drop while the frozen degrees stay
    - Deleting a dead edge raises EdgeAlreadyDeletedError
    - Dead edges disappear from the live edge list but keep their id
    """
    u, v = k4.endpoints(0)
    k4.delete_edge(0)
    assert k4.cur_deg[u] == 2
    assert k4.cur_deg[v] == 2
    assert k4.d[u] == 3
    assert k4.live_edge_count == 5
    assert 0 not in list(k4.live_edges())
    assert len(k4.edge_list()) == 5
    assert len(k4.edge_list(live_only=False)) == 6
    with pytest.raises(EdgeAlreadyDeletedError):
        k4.delete_edge(0)


def test_remove_vertices(k4: DecGraph) -> None:
    """Test vertex removal.

    Verifies that:
    - Every incident live edge is killed and reported in ascending order
    - Removed vertices are no longer alive
    - Removing a dead vertex again is a no-op
    """
    killed = k4.remove_vertices([1, 0])
    assert killed == sorted(killed)
    assert len(killed) == 5
    assert k4.alive_vertices() == [2, 3]
    assert k4.live_edge_count == 1
    assert k4.remove_vertices([0, 1]) == []
    assert k4.remove_vertices([0, 2]) == [5]
    assert k4.alive_vertices() == [3]
    assert k4.live_edge_count == 0


def test_copy_is_independent(k4: DecGraph) -> None:
    clone = k4.copy()
    clone.delete_edge(2)
    clone.remove_vertices([3])
    assert k4.is_edge_alive(2)
    assert k4.is_vertex_alive(3)
    assert k4.live_edge_count == 6


@PROPERTY_SETTINGS
@given(graph=graphs(), data=st.data())
def test_boundary_and_volume(graph: DecGraph, data: st.DataObject) -> None:
    """Test boundary and volume against their definitions on random graphs.

    Verifies that:
    - The boundary holds exactly the live edges with one endpoint inside
    - The frozen volume of the whole vertex set is twice the edge count
    """
    inside = set(data.draw(st.sets(st.integers(min_value=0, max_value=graph.n - 1))))
    expected = {e for e, (u, v) in enumerate(graph.edge_list(live_only=False)) if (u in inside) != (v in inside)}
    assert graph.boundary(inside) == expected
    assert graph.cut_count(inside) == len(expected)
    assert graph.volume_d(range(graph.n)) == 2 * graph.m
