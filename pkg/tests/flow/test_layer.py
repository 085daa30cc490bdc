# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

from expander_pruning.flow.layer import FlowLayer
from expander_pruning.flow.localflow import FlowState
from expander_pruning.graph.dyngraph import DecGraph


def _path_layer() -> FlowLayer:
    """Two units routed along the path 0 -> 1 -> 2."""
    path = DecGraph.new_graph([(0, 1), (1, 2)], 3)
    flow = FlowState(path, capacity=5)
    flow.push(0, 2)
    flow.push(2, 2)
    return FlowLayer(flow)


def _rebooked(flow: FlowState) -> list[int]:
    clone = flow.copy()
    clone.recompute_balance()
    return clone.bf


def test_support_is_tracked() -> None:
    layer = _path_layer()
    assert layer.support_list() == [0, 2]
    assert layer.carrying_arc(0) == 0
    assert layer.carrying_arc(1) == 2


def test_retract_walks_back_to_the_root() -> None:
    """Test retracting single units from the last arc of a path.

    Verifies that:
    - Without tree arcs the unit is taken from the arc itself and its tail is the root
    - After relinking, the unit is taken along the tree path up to vertex 0
    - Booked balances match the arc flows after each retraction
    """
    layer = _path_layer()

    assert layer.retract(2) == 1
    assert layer.flush().f[2] == 1
    assert layer.st.bf == _rebooked(layer.st)

    assert layer.relink(1)
    assert layer.retract(2) == 0
    flow = layer.flush()
    assert flow.f[0] == 1
    assert flow.f[2] == 0
    assert flow.bf == _rebooked(flow)
    assert layer.support_list() == [0]


def test_relink_skips_empty_arcs() -> None:
    layer = _path_layer()
    layer.st.f[0] = 0
    assert not layer.relink(1)
    assert layer.support_list() == [2]


def test_detach_edge() -> None:
    """Test cutting a tree edge out of the layer.

    Verifies that:
    - The edge is deleted from the layer graph and carries no flow
    - Balances are rebooked for the removed flow
    """
    layer = _path_layer()
    layer.relink(1)
    layer.detach_edge(0)
    flow = layer.flush()
    assert not layer.graph.is_edge_alive(0)
    assert flow.f[0] == 0
    assert layer.carrying_arc(0) is None
    assert flow.bf == _rebooked(flow)
