# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

from fractions import Fraction

import numpy as np
import pytest
from pruning_oracle import conductance_exact

from expander_pruning.certs.certificate import (
    FlowCertificate,
    build_exp_cert,
    compose,
    exp_cert_report,
    implied_expansion,
    net_out_flows,
    removal_graph,
    sum_flows,
    verify_certificate,
    verify_exp_cert,
)
from expander_pruning.common.exceptions import CertificateParameterError, ExpansionPreconditionError
from expander_pruning.common.math_util import MathUtil
from expander_pruning.flow.localflow import FlowState, dinitz_local
from expander_pruning.graph.dyngraph import DecGraph
from tests.conftest import K8_PHI

# Edge ids of K4: (0,1)=0 (0,2)=1 (0,3)=2 (1,2)=3 (1,3)=4 (2,3)=5


def _star_certificate(k4: DecGraph, gamma_source: Fraction = Fraction(1)) -> FlowCertificate:
    """Vertex 0 of K4 sends one unit to each neighbour."""
    flow = FlowState(k4, capacity=1)
    for e in (0, 1, 2):
        flow.f[2 * e] = 1
    return FlowCertificate(frozenset({0}), flow, gamma_source, Fraction(1, 3), Fraction(1))


def _second_certificate(k4: DecGraph) -> FlowCertificate:
    """Vertex 1 of K4 sends two units each to vertices 2 and 3."""
    flow = FlowState(k4, capacity=2)
    flow.f[2 * 3] = 2
    flow.f[2 * 4] = 2
    return FlowCertificate(frozenset({1}), flow, Fraction(4, 3), Fraction(2, 3), Fraction(2))


def test_valid_certificate(k4: DecGraph) -> None:
    report = verify_certificate(k4, _star_certificate(k4))
    assert report.valid
    assert report.violations == []


def test_certificate_violations(k4: DecGraph) -> None:
    """Test that each violated condition is reported by name.

    Verifies that:
    - A source sending too little is a source violation
    - An arc above c·σ is a capacity violation
    - A vertex absorbing too much is a sink violation
    """
    report = verify_certificate(k4, _star_certificate(k4, gamma_source=Fraction(2)))
    assert not report.valid
    assert any(v.startswith("source:") for v in report.violations)

    over = _star_certificate(k4)
    over.f.f[0] = 2
    over.f.f[2 * 5] = 3
    report = verify_certificate(k4, over)
    assert any(v.startswith("capacity:") for v in report.violations)
    assert any(v.startswith("sink:") for v in report.violations)


def test_dead_edges_and_vertices(k4: DecGraph) -> None:
    """Test that flow on a dead edge is rejected while dead vertices are skipped."""
    cert = _star_certificate(k4)
    k4.delete_edge(0)
    report = verify_certificate(k4, cert)
    assert any("dead edge 0" in v for v in report.violations)


def test_implied_expansion(k4: DecGraph) -> None:
    """Test the implied conductance bound and its preconditions.

    Verifies that:
    - The bound is 1/(3(c + δ))
    - δ below 1, a weak source or a low congestion raise ExpansionPreconditionError
    """
    cert = FlowCertificate(frozenset(), FlowState(k4, 0), Fraction(1), Fraction(1), Fraction(3))
    assert implied_expansion(cert, alpha=Fraction(1), delta=Fraction(1)) == Fraction(1, 12)

    with pytest.raises(ExpansionPreconditionError):
        implied_expansion(cert, alpha=Fraction(1), delta=Fraction(1, 2))
    with pytest.raises(ExpansionPreconditionError):
        implied_expansion(cert, alpha=Fraction(1, 2), delta=Fraction(1))
    weak = FlowCertificate(frozenset(), FlowState(k4, 0), Fraction(1, 2), Fraction(1), Fraction(3))
    with pytest.raises(ExpansionPreconditionError):
        implied_expansion(weak, alpha=Fraction(1), delta=Fraction(1))


def test_compose(k4: DecGraph) -> None:
    """Test composing two certificates.

    Verifies that:
    - Source sets are joined and sink and congestion parameters add up
    - The summed flow is a valid certificate for the joined source set
    """
    composed = compose(_star_certificate(k4), _second_certificate(k4))
    assert composed.S == frozenset({0, 1})
    assert composed.gamma_source == 1
    assert composed.gamma_sink == 1
    assert composed.c == 3
    assert net_out_flows(k4, composed.f.f) == [3, 3, -3, -3]
    assert verify_certificate(k4, composed).valid


def test_compose_rejects_mismatched_parameters(k4: DecGraph) -> None:
    second = _second_certificate(k4)
    second.gamma_source = Fraction(1)
    with pytest.raises(CertificateParameterError):
        compose(_star_certificate(k4), second)

    second = _second_certificate(k4)
    second.f.scale = 2
    with pytest.raises(CertificateParameterError):
        compose(_star_certificate(k4), second)


def test_sum_flows_nets_opposite_directions(k4: DecGraph) -> None:
    forward = FlowState(k4, capacity=3)
    forward.f[0] = 3
    backward = FlowState(k4, capacity=1)
    backward.f[1] = 1
    total = sum_flows(k4, [forward, backward])
    assert total.f[0] == 2
    assert total.f[1] == 0
    assert total.capacity == 4


def test_removal_graph(k8: DecGraph) -> None:
    g1 = removal_graph(k8, A=[0], B=[7])
    assert not g1.is_vertex_alive(0)
    assert not g1.is_edge_alive(7)
    assert g1.live_edge_count == 28 - 7 - 1
    assert k8.live_edge_count == 28


def test_deletion_flow(k8: DecGraph) -> None:
    """Test the deletion-flow check on K8.

    Verifies that:
    - A single deleted edge is routed with zero excess
    - An empty flow leaves the endpoints with unrouted source
    - Removing two vertices creates more source than sink capacity and fails
    """
    flow = build_exp_cert(k8, A=[], B=[0], phi=K8_PHI, scale=1)
    assert verify_exp_cert(k8, [], [0], flow, K8_PHI)

    empty = FlowState(removal_graph(k8, [], [0]), capacity=1)
    report = exp_cert_report(k8, [], [0], empty, K8_PHI)
    assert not report.valid
    assert all(v.startswith("excess:") for v in report.violations)

    overloaded = build_exp_cert(k8, A=[0, 1], B=[], phi=K8_PHI, scale=1)
    assert not verify_exp_cert(k8, [0, 1], [], overloaded, K8_PHI)


def _random_certificate(seed: int) -> tuple[DecGraph, FlowCertificate, Fraction | None]:
    """Dense random graph on at most 16 vertices with a routed certificate for a small random source set.

    Returns the graph, the certificate and the conductance of G[V ∖ S] measured with the degrees of G.
    """
    rng = np.random.default_rng(seed)
    n = int(rng.integers(4, 17))
    edges = {(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5}
    edges |= {(int(rng.integers(v)), v) for v in range(1, n)}
    graph = DecGraph.new_graph(sorted(edges), n)

    S = frozenset(int(v) for v in rng.choice(n, size=int(rng.integers(1, max(2, n // 4 + 1))), replace=False))
    rest = [v for v in range(n) if v not in S]
    alpha = conductance_exact(n, graph.edge_list(), vertices=rest, degrees=list(graph.d)).conductance
    if not alpha:
        return graph, FlowCertificate.empty(graph, Fraction(1), Fraction(1), Fraction(1)), None

    gamma_sink = Fraction(int(rng.integers(1, 3)))
    c = Fraction(MathUtil.ceil_div(3 / alpha) + int(rng.integers(0, 5)))
    flow = FlowState(graph, int(c))
    for v in range(n):
        if v in S:
            flow.s[v] = graph.d[v]
        else:
            flow.t[v] = int(gamma_sink) * graph.d[v]
    dinitz_local(flow, h=n + 1, require_balance=False)
    return graph, FlowCertificate(S, flow, Fraction(1), gamma_sink, c), alpha


def test_accepted_certificates_imply_their_expansion() -> None:
    """Test the implied conductance bound on 100 random graphs with at most 16 vertices.

    Verifies that:
    - Whenever the certificate verifies and G[V ∖ S] is an α-expander with c ≥ 3/α,
      the exact conductance of G is at least 1/(3(c + δ)) with δ = γ_sink/γ_source
    - Most instances produce an accepted certificate
    """
    accepted = 0
    for seed in range(100):
        graph, cert, alpha = _random_certificate(seed)
        if alpha is None or not verify_certificate(graph, cert).valid:
            continue
        accepted += 1
        delta = max(Fraction(1), cert.gamma_sink / cert.gamma_source)
        conductance = conductance_exact(graph.n, graph.edge_list()).conductance
        assert conductance is not None
        assert conductance >= implied_expansion(cert, alpha, delta), f"seed {seed}"
    assert accepted >= 25
