# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

import numpy as np
import pytest
from pruning_oracle import conductance_exact

from expander_pruning.certs.certificate import net_out_flows
from expander_pruning.common.exceptions import ReinitializationError
from expander_pruning.graph.dyngraph import DecGraph
from expander_pruning.harness.generators import random_regular
from expander_pruning.models.presets import DESK_PRESET
from expander_pruning.models.prune_config import PruneConfig
from expander_pruning.pruning.batchcert import BatchCertState


@pytest.fixture
def cert(k8: DecGraph, k8_config: PruneConfig) -> BatchCertState:
    """K8 certificate with vertex 0 as the only source of layer 3."""
    state = BatchCertState.initialize(k8, k8_config)
    outcome = state.reinitialize(1, {3: {0}})
    assert outcome.isolated == []
    return state


def test_reinitialize_routes_sources(cert: BatchCertState) -> None:
    """Test a fresh layer set on K8.

    Verifies that:
    - Vertex 0 becomes the layer-3 source and nothing is pruned
    - The composed certificate is valid
    - The checkpoint lists the layer sets and supports
    """
    assert cert.Shat[3] == {0}
    assert cert.S0 == set()
    assert cert.verify().valid
    checkpoint = cert.checkpoint()
    assert checkpoint["shat"]["3"] == [0]
    assert checkpoint["supports"]["3"]
    assert checkpoint["supports"]["1"] == []


def test_losing_flow_prunes_the_source(cert: BatchCertState) -> None:
    """Test removing the edge that carries most of vertex 0's flow.

    Verifies that:
    - Vertex 0 is moved into S_0 once its retracted flow exceeds (i + 1)·d·σ
    - The edge is deleted and logged, and the certificate stays valid
    """
    carrying = cert.layers[3]
    assert carrying is not None
    assert carrying.carrying_arc(0) == 0

    pruned = cert.remove_edge(0)

    assert pruned == [0]
    assert cert.S0 == {0}
    assert cert.Shat[3] == set()
    assert cert.prune_log == [0]
    assert cert.edge_log == [0]
    assert not cert.ghat.is_edge_alive(0)
    assert cert.verify().valid


def test_edge_without_flow_prunes_nothing(cert: BatchCertState) -> None:
    assert cert.remove_edge(27) == []
    assert cert.S0 == set()
    assert cert.edge_log == [27]


def test_reinitialize_requires_drained_layers(cert: BatchCertState) -> None:
    """Test that layers with unpruned vertices cannot be replaced."""
    with pytest.raises(ReinitializationError):
        cert.reinitialize(2, {})
    with pytest.raises(ReinitializationError):
        cert.reinitialize(0, {})
    cert.reinitialize(4, {})
    assert cert.Shat[3] == {0}


def test_prune_moves_vertices(cert: BatchCertState) -> None:
    assert cert.prune({0, 1}) == [0, 1]
    assert cert.Shat[3] == set()
    assert cert.prune({1}) == []
    outcome = cert.reinitialize(1, {})
    assert outcome.isolated == []
    assert cert.verify().valid


def test_unroutable_sources_raise(k8: DecGraph, k8_config: PruneConfig) -> None:
    """Test that sources the layer flow cannot route stop the reinitialization."""
    state = BatchCertState.initialize(k8, k8_config)
    with pytest.raises(ReinitializationError, match="keep excess"):
        state.reinitialize(1, {5: set(range(7))})


def test_sources_without_edges_are_pruned(k8: DecGraph, k8_config: PruneConfig) -> None:
    """Test a layer source whose edges are all gone.

    Verifies that:
    - Vertex 0 is pruned into S_0 and logged instead of raising
    - The other source of the layer is routed and the certificate is valid
    """
    graph = k8.copy()
    for e in range(7):
        graph.delete_edge(e)
    state = BatchCertState.initialize(graph, k8_config)
    outcome = state.reinitialize(1, {3: {0, 1}})
    assert outcome.isolated == [0]
    assert state.S0 == {0}
    assert state.prune_log == [0]
    assert state.Shat[3] == {1}
    assert state.verify().valid


def test_every_edge_removal_respects_the_recourse_bound(k8: DecGraph, k8_config: PruneConfig) -> None:
    """Test removing every edge of K8 under three populated layers.

    Verifies that:
    - No single removal prunes more than the configured per-edge bound
    - Every layer source ends up in S_0 once its edges are gone
    - The certificate stays valid throughout
    """
    state = BatchCertState.initialize(k8, k8_config)
    state.reinitialize(1, {1: {0}, 2: {1}, 3: {2}})
    for e in range(k8.m):
        pruned = state.remove_edge(e)
        assert len(pruned) <= k8_config.cert_recourse_bound
        assert state.recourse_violations == 0
        assert state.verify().valid
    assert {0, 1, 2} <= state.S0
    assert all(not state.Shat[i] for i in range(1, k8_config.k + 1))


@pytest.mark.parametrize("seed", range(50))
def test_layer_flows_route_every_source_on_small_expanders(seed: int) -> None:
    """Test a fresh layer on a random small regular expander.

    Verifies that:
    - A vertex set as the only source of a random layer is routed with zero excess
    - Its flow sends exactly (10ik + i + 1)·d·σ out of the source and respects the sink and edge limits
    """
    rng = np.random.default_rng(seed)
    n = int(rng.choice([8, 10, 12, 14, 16]))
    d = int(rng.choice([3, 4]))
    graph = random_regular(n, d, seed)
    phi = conductance_exact(graph.n, graph.edge_list()).conductance
    assert phi is not None
    if phi == 0:
        pytest.skip(f"Random {d}-regular graph on {n} vertices is disconnected")

    config = PruneConfig.build(graph.n, graph.m, phi, DESK_PRESET)
    i = int(rng.integers(1, config.k + 1))
    v = int(rng.integers(n))
    state = BatchCertState.initialize(graph, config)
    outcome = state.reinitialize(1, {i: {v}})

    assert outcome.isolated == []
    layer = state.layers[i]
    assert layer is not None
    layer.flush()
    assert layer.st.total_excess() == 0
    net = net_out_flows(layer.graph, layer.st.f)
    assert net[v] == state.source_multiplier(i) * d * config.cert_scale
    assert all(-net[u] <= state.sink_multiplier() * d * config.cert_scale for u in range(n) if u != v)
    assert max(layer.st.f) <= config.cert_capacity
    assert state.verify().valid
