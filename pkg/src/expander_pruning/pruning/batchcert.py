# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Layered flow certificates that let pruning be delayed.

Layer i holds an acyclic flow f_i on Ĝ minus S_0 and the lower layer sets, routing (10ik + i + 1)·d·σ out of every
vertex of Ŝ_i = S_i ∖ S_0. Removing an edge retracts its flow unit by unit. A source that keeps losing flow it
cannot recover from its own in-arcs or from lower layers counts the loss in q_i and is pruned into S_0 once
q_i(r) > (i + 1)·d(r)·σ.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from expander_pruning.certs.certificate import FlowCertificate, sum_flows, verify_certificate
from expander_pruning.common.exceptions import ReinitializationError
from expander_pruning.common.steps import OpCounter
from expander_pruning.config import ENV
from expander_pruning.flow.layer import FlowLayer
from expander_pruning.flow.localflow import FlowState, dinitz_local, remove_cycles
from expander_pruning.graph.dyngraph import ArcId, DecGraph, EdgeId, VertexId
from expander_pruning.models.prune_config import PruneConfig
from expander_pruning.models.reports import CertificateReport

logger = logging.getLogger(__name__)


@dataclass
class ReinitOutcome:
    """Sources pruned at reinitialization because every edge they had in their layer graph is gone."""

    isolated: list[VertexId] = field(default_factory=list)


class BatchCertState:
    """Layer sets S_0..S_k, Ŝ_1..Ŝ_k, their flows and the counters q_1..q_k."""

    def __init__(self, graph: DecGraph, config: PruneConfig, counter: OpCounter | None = None) -> None:
        self.ghat = graph.copy()
        self.d = graph.d
        self.config = config
        self.k = config.k
        self.counter = counter
        self.scale = config.cert_scale
        self.capacity = config.cert_capacity
        self.S0: set[VertexId] = set()
        self.S: list[set[VertexId]] = [set() for _ in range(self.k + 1)]
        self.Shat: list[set[VertexId]] = [set() for _ in range(self.k + 1)]
        self.layers: list[FlowLayer | None] = [None] * (self.k + 1)
        self.q: list[dict[VertexId, int]] = [{} for _ in range(self.k + 1)]
        self._pruned_now: list[VertexId] = []
        self.recourse_violations = 0
        self.edge_log: list[EdgeId] = []
        self.prune_log: list[VertexId] = []

    @classmethod
    def initialize(cls, graph: DecGraph, config: PruneConfig, counter: OpCounter | None = None) -> "BatchCertState":
        """Empty layers on a copy of the graph."""
        return cls(graph, config, counter)

    def source_multiplier(self, i: int) -> int:
        return 10 * i * self.k + i + 1

    def sink_multiplier(self) -> int:
        return 10 * self.k - 1

    def layer_graph(self, i: int) -> DecGraph:
        """Ĝ without S_0 and S_1..S_(i−1)."""
        g = self.ghat.copy()
        excluded = set(self.S0)
        for j in range(1, i):
            excluded |= self.S[j]
        g.remove_vertices(excluded)
        return g

    def layer_demands(self, i: int, g: DecGraph, st: FlowState) -> None:
        for v in g.alive_vertices():
            if v in self.Shat[i]:
                st.s[v] = self.source_multiplier(i) * self.d[v] * self.scale
            elif v not in self.S[i]:
                st.t[v] = self.sink_multiplier() * self.d[v] * self.scale

    def reinitialize(
        self,
        level: int,
        new_sets: dict[int, set[VertexId]],
        flows: dict[int, FlowState] | None = None,
    ) -> ReinitOutcome:
        """Replace layers level..k with the sets S′_level..S′_k and fresh flows.

        Args:
            level: First replaced layer, at least 1
            new_sets: S′_i per layer; missing layers are empty
            flows: Flows computed elsewhere for some layers, adopted instead of running a local flow

        Raises:
            ReinitializationError: If an old Ŝ_i, i ≥ level, is not empty, or a source with a live edge keeps excess
        """
        if level < 1:
            raise ReinitializationError(f"Reinitialization level must be at least 1, got {level}")
        for i in range(level, self.k + 1):
            if self.Shat[i]:
                raise ReinitializationError(
                    f"Layer {i} still has {len(self.Shat[i])} unpruned vertices: old S_{i} ⊄ S_0",
                )

        outcome = ReinitOutcome()
        for i in range(level, self.k + 1):
            self.S[i] = set(new_sets.get(i, set()))
            self.Shat[i] = self.S[i] - self.S0
            g = self.layer_graph(i)
            isolated = sorted(v for v in self.Shat[i] if g.cur_deg[v] == 0)
            for v in isolated:
                self.Shat[i].discard(v)
                self.S0.add(v)
                self.prune_log.append(v)
            if isolated:
                logger.info(f"Layer {i}: pruned sources without live edges {isolated}")
                outcome.isolated.extend(isolated)

            st = FlowState(g, self.capacity, self.scale)
            self.layer_demands(i, g, st)
            if flows is not None and i in flows:
                self._adopt(st, flows[i])
            elif self.Shat[i]:
                dinitz_local(st, self.config.cert_rounds, self.counter, require_balance=False)
            remove_cycles(st, self.counter)

            stuck = sorted(v for v in self.Shat[i] if st.excess_of(v) > 0)
            if stuck:
                raise ReinitializationError(f"Layer {i}: sources {stuck[:5]} keep excess after reinitialization")

            self.layers[i] = FlowLayer(st, self.counter)
            self.q[i] = {}

        if ENV.EP_DEBUG_ORACLES:
            self._debug_check(level)
        logger.debug(f"Reinitialized layers {level}..{self.k}: |Ŝ| = {[len(s) for s in self.Shat[level:]]}")
        return outcome

    def _adopt(self, st: FlowState, flow: FlowState) -> None:
        g = st.graph
        for e in g.live_edges():
            st.f[2 * e] = flow.f[2 * e]
            st.f[2 * e + 1] = flow.f[2 * e + 1]
        st.recompute_balance()

    def _debug_check(self, level: int) -> None:
        from pruning_oracle import conductance_exact

        if self.ghat.n > ENV.EP_ORACLE_MAX_N:
            return
        for i in range(level, self.k + 1):
            g = self.layer_graph(i)
            vertices = g.alive_vertices()
            if len(vertices) < 2:
                continue
            report = conductance_exact(g.n, g.edge_list(), vertices=vertices, degrees=list(self.d))
            if report.conductance is not None and report.conductance < self.config.phi / 10:
                logger.warning(f"Layer {i} graph has conductance {report.conductance} < φ/10")

    def _bump(self, i: int, r: VertexId) -> None:
        self.q[i][r] = self.q[i].get(r, 0) + 1
        if r in self.Shat[i] and self.q[i][r] > (i + 1) * self.d[r] * self.scale:
            self.Shat[i].discard(r)
            self.S0.add(r)
            self._pruned_now.append(r)
            self.prune_log.append(r)
            logger.debug(f"Vertex {r} pruned from layer {i} after q = {self.q[i][r]}")

    def _lower_in_arc(self, i: int, r: VertexId) -> tuple[int, ArcId] | None:
        """First (layer j < i, arc into r) of a lower support, by layer then arc id."""
        for j in range(1, i):
            lower = self.layers[j]
            if lower is not None and lower.in_support[r]:
                return j, min(lower.in_support[r])
        return None

    def remove_flow_arc(self, a: ArcId, i: int) -> None:
        """Retract one unit on support arc a of layer i and charge the root it reaches."""
        layer = self.layers[i]
        assert layer is not None
        r = layer.retract(a)
        if layer.relink(r):
            if r in self.S[i]:
                self._bump(i, r)
            return
        if r not in self.S[i]:
            return
        lower = self._lower_in_arc(i, r)
        if lower is None:
            self._bump(i, r)
            return
        j, b = lower
        lower_layer = self.layers[j]
        assert lower_layer is not None
        if lower_layer.flow_on(b) > 0:
            self.remove_flow_arc(b, j)
        else:
            lower_layer.drop_support(b)
            self._bump(i, r)

    def remove_flow(self, e: EdgeId, i: int) -> bool:
        """Retract one unit of e's flow in layer i. No-op when e carries none.

        Returns:
            True if a unit was retracted
        """
        layer = self.layers[i]
        if layer is None:
            return False
        a = layer.carrying_arc(e)
        if a is None:
            return False
        self.remove_flow_arc(a, i)
        return True

    def remove_edge(self, e: EdgeId) -> list[VertexId]:
        """Retract all flow of e in every layer, then delete e.

        Returns:
            Vertices newly added to S_0, ascending
        """
        self._pruned_now = []
        for i in range(1, self.k + 1):
            layer = self.layers[i]
            if layer is None:
                continue
            rounds = 0
            while self.remove_flow(e, i):
                rounds += 1
                if rounds > self.capacity:
                    raise ReinitializationError(f"Edge {e} kept flow after {self.capacity} retractions in layer {i}")
        for i in range(1, self.k + 1):
            layer = self.layers[i]
            if layer is not None:
                layer.detach_edge(e)
        if self.ghat.edge_alive[e]:
            self.ghat.delete_edge(e)
            self.edge_log.append(e)

        pruned = sorted(self._pruned_now)
        if len(pruned) > self.config.cert_recourse_bound:
            self.recourse_violations += 1
            logger.warning(f"Removing edge {e} pruned {len(pruned)} > {self.config.cert_recourse_bound} vertices")
        return pruned

    def prune(self, vertices: set[VertexId]) -> list[VertexId]:
        """Move vertices into S_0 directly. Returns the ones that were not pruned yet."""
        added = sorted(v for v in vertices if v not in self.S0)
        for i in range(1, self.k + 1):
            self.Shat[i] -= vertices
        self.S0 |= vertices
        self.prune_log.extend(added)
        return added

    def flows(self) -> list[FlowState]:
        return [layer.flush() for layer in self.layers if layer is not None]

    def composed_certificate(self) -> FlowCertificate:
        """(⋃Ŝ_i, Σf_i) as a (10k, 10k², k·cap/σ) certificate on Ĝ."""
        k = self.k
        S: set[VertexId] = set()
        for i in range(1, k + 1):
            S |= self.Shat[i]
        flows = self.flows()
        combined = sum_flows(self.ghat, flows) if flows else FlowState(self.ghat, 0, self.scale)
        combined.scale = self.scale
        return FlowCertificate(
            S=frozenset(S),
            f=combined,
            gamma_source=Fraction(10 * k),
            gamma_sink=Fraction(10 * k * k),
            c=Fraction(k * self.capacity, self.scale),
        )

    def verify(self) -> CertificateReport:
        return verify_certificate(self.ghat, self.composed_certificate())

    def checkpoint(self) -> dict[str, Any]:
        """JSON-serialisable dump of S_0, the Ŝ_i and the layer supports."""
        return {
            "S0": sorted(self.S0),
            "shat": {str(i): sorted(self.Shat[i]) for i in range(1, self.k + 1)},
            "supports": {
                str(i): layer.support_list() for i, layer in enumerate(self.layers) if layer is not None
            },
        }
