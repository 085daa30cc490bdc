# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Flow certificates: verification, the expansion they imply, composition and the deletion-flow check."""

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

from expander_pruning.common.exceptions import CertificateParameterError, ExpansionPreconditionError
from expander_pruning.common.math_util import MathUtil
from expander_pruning.flow.localflow import FlowState, dinitz_local
from expander_pruning.graph.dyngraph import DecGraph, EdgeId, VertexId
from expander_pruning.models.reports import CertificateReport

logger = logging.getLogger(__name__)


@dataclass
class FlowCertificate:
    """A flow f that routes γ_source·d(v) out of every v in S into sinks of capacity γ_sink·d, congestion c.

    Parameters are unscaled rationals; the checks multiply them by the flow unit of f.
    """

    S: frozenset[VertexId]
    f: FlowState
    gamma_source: Fraction
    gamma_sink: Fraction
    c: Fraction

    @classmethod
    def empty(
        cls,
        graph: DecGraph,
        gamma_source: Fraction,
        gamma_sink: Fraction,
        c: Fraction,
        scale: int = 1,
    ) -> "FlowCertificate":
        return cls(frozenset(), FlowState(graph, 0, scale), gamma_source, gamma_sink, c)


def net_out_flows(g: DecGraph, flow: list[int]) -> list[int]:
    """Net flow out of every vertex over the live edges of g."""
    net = [0] * g.n
    for e in g.live_edges():
        tail, head = g.endpoints(e)
        value = flow[2 * e] - flow[2 * e + 1]
        net[tail] += value
        net[head] -= value
    return net


def verify_certificate(g: DecGraph, cert: FlowCertificate) -> CertificateReport:
    """Check a flow certificate on the live part of g.

    Verifies that the flow is non-negative, lives on live edges and stays within c·σ per arc, that every live
    source in S sends out at least γ_source·d(v)·σ net, and that every other live vertex absorbs at most
    γ_sink·d(v)·σ net.
    """
    violations: list[str] = []
    scale = cert.f.scale
    flow = cert.f.f
    limit = cert.c * scale

    for a, value in enumerate(flow):
        e = a >> 1
        if value < 0:
            violations.append(f"capacity: arc {a} carries negative flow {value}")
        elif value and not g.edge_alive[e]:
            violations.append(f"capacity: dead edge {e} carries flow {value}")
        elif value > limit:
            violations.append(f"capacity: arc {a} carries {value} > c·σ = {limit}")

    net = net_out_flows(g, flow)
    for v in g.alive_vertices():
        if v in cert.S:
            need = cert.gamma_source * g.d[v] * scale
            if net[v] < need:
                violations.append(f"source: vertex {v} sends {net[v]} < γ_source·d·σ = {need}")
        else:
            allowed = cert.gamma_sink * g.d[v] * scale
            if -net[v] > allowed:
                violations.append(f"sink: vertex {v} absorbs {-net[v]} > γ_sink·d·σ = {allowed}")

    if violations:
        logger.debug(f"Certificate rejected with {len(violations)} violations, first: {violations[0]}")
    return CertificateReport.from_violations(violations)


def implied_expansion(cert: FlowCertificate, alpha: Fraction, delta: Fraction) -> Fraction:
    """Conductance bound 1/(3(c + δ)) a certificate implies when G[V∖S] is an α-expander.

    Raises:
        ExpansionPreconditionError: If γ_source < γ_sink/δ, δ < 1 or c < 3/α
    """
    if delta < 1:
        raise ExpansionPreconditionError(f"δ must be at least 1, got {delta}")
    if cert.gamma_source < cert.gamma_sink / delta:
        raise ExpansionPreconditionError(
            f"γ_source {cert.gamma_source} is below γ_sink/δ = {cert.gamma_sink / delta}",
        )
    if cert.c < 3 / alpha:
        raise ExpansionPreconditionError(f"Congestion c = {cert.c} is below 3/α = {3 / alpha}")
    return 1 / (3 * (cert.c + delta))


def compose(first: FlowCertificate, second: FlowCertificate) -> FlowCertificate:
    """Combine a certificate on G with one on G minus the first source set.

    Raises:
        CertificateParameterError: If the second γ_source is not the first γ_source + γ_sink, or the units differ
    """
    if second.gamma_source != first.gamma_source + first.gamma_sink:
        raise CertificateParameterError(
            f"Second γ_source {second.gamma_source} must equal {first.gamma_source} + {first.gamma_sink}",
        )
    if first.f.scale != second.f.scale:
        raise CertificateParameterError(f"Flow units differ: {first.f.scale} and {second.f.scale}")

    combined = sum_flows(first.f.graph, [first.f, second.f])
    return FlowCertificate(
        S=first.S | second.S,
        f=combined,
        gamma_source=first.gamma_source,
        gamma_sink=first.gamma_sink + second.gamma_sink,
        c=first.c + second.c,
    )


def sum_flows(graph: DecGraph, flows: Iterable[FlowState]) -> FlowState:
    """Sum flows edgewise, netting opposite directions, on a common host graph."""
    flows = list(flows)
    scale = flows[0].scale if flows else 1
    total = FlowState(graph, sum(fl.capacity for fl in flows), scale)
    for e in range(graph.m):
        value = sum(fl.f[2 * e] - fl.f[2 * e + 1] for fl in flows if 2 * e + 1 < len(fl.f))
        if value > 0:
            total.f[2 * e] = value
        elif value < 0:
            total.f[2 * e + 1] = -value
    total.recompute_balance()
    return total


def removal_graph(g0: DecGraph, A: Iterable[VertexId], B: Iterable[EdgeId]) -> DecGraph:
    """G′ = G[V∖A] ∖ B as a fresh copy of g0."""
    g = g0.copy()
    for e in sorted(set(B)):
        if g.edge_alive[e]:
            g.delete_edge(e)
    g.remove_vertices(A)
    return g


def deletion_demands(
    g0: DecGraph,
    g1: DecGraph,
    phi: Fraction,
    scale: int,
    source_factor: int = 8,
) -> tuple[list[int], list[int], int]:
    """Sources, sinks and edge capacity of the deletion flow on G′.

    Returns:
        (source, sink, capacity): source ⌈a·σ/φ⌉ per lost edge at survivors, sink 2·deg_G·σ, capacity ⌈4a·σ/φ⌉
    """
    unit = source_factor * scale / phi
    source = [0] * g0.n
    sink = [0] * g0.n
    for v in g1.alive_vertices():
        lost = g0.cur_deg[v] - g1.cur_deg[v]
        source[v] = MathUtil.ceil_div(unit * lost)
        sink[v] = 2 * g0.cur_deg[v] * scale
    return source, sink, MathUtil.ceil_div(4 * unit)


def exp_cert_report(
    g0: DecGraph,
    A: Iterable[VertexId],
    B: Iterable[EdgeId],
    f: FlowState,
    phi: Fraction,
    source_factor: int = 8,
) -> CertificateReport:
    """Check that f routes the deletion demands on G′ = G[V∖A] ∖ B with zero excess."""
    g1 = removal_graph(g0, A, B)
    source, sink, capacity = deletion_demands(g0, g1, phi, f.scale, source_factor)
    violations: list[str] = []

    for a, value in enumerate(f.f):
        e = a >> 1
        if value < 0:
            violations.append(f"capacity: arc {a} carries negative flow {value}")
        elif value and not g1.edge_alive[e]:
            violations.append(f"capacity: edge {e} outside G′ carries flow {value}")
        elif value > capacity:
            violations.append(f"capacity: arc {a} carries {value} > {capacity}")

    net = net_out_flows(g1, f.f)
    for v in g1.alive_vertices():
        remaining = source[v] - sink[v] - net[v]
        if remaining > 0:
            violations.append(f"excess: vertex {v} keeps {remaining} unrouted source")

    return CertificateReport.from_violations(violations)


def verify_exp_cert(
    g0: DecGraph,
    A: Iterable[VertexId],
    B: Iterable[EdgeId],
    f: FlowState,
    phi: Fraction,
    source_factor: int = 8,
) -> bool:
    """True iff f routes the deletion demands of G′ = G[V∖A] ∖ B with zero excess."""
    return exp_cert_report(g0, A, B, f, phi, source_factor).valid


def build_exp_cert(
    g0: DecGraph,
    A: Iterable[VertexId],
    B: Iterable[EdgeId],
    phi: Fraction,
    scale: int,
    source_factor: int = 8,
) -> FlowState:
    """Route the deletion demands of G′ with an unbounded local flow."""
    g1 = removal_graph(g0, A, B)
    source, sink, capacity = deletion_demands(g0, g1, phi, scale, source_factor)
    st = FlowState(g1, capacity, scale)
    st.s = source
    st.t = sink
    dinitz_local(st, h=max(g1.n, 1) + 1, require_balance=False)
    return st
