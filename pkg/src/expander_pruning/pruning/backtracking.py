# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Flows that survive batches of deletions by backtracking, for background rebuilds.

A FlowBacktracker routes (θ + 1)·d[S]·σ into sinks 8·d and then loses flow unit by unit as edges and vertices go.
Sources that lose more than d(v)·σ, or have no live edge to start with, are handed back in S_rerun instead of
being pruned. A WorstCaseFlowJob chains backtrackers: after every batch it starts a new one for the live
vertices that were handed back, so the summed flow keeps routing (10lk + l + 1)·d out of every surviving source.
"""

import logging
from collections.abc import Iterable
from fractions import Fraction

from expander_pruning.certs.certificate import FlowCertificate, sum_flows, verify_certificate
from expander_pruning.common.exceptions import InfeasibleFlowError, ReinitializationError
from expander_pruning.common.steps import OpCounter, Steps, run_to_completion
from expander_pruning.flow.layer import FlowLayer
from expander_pruning.flow.localflow import FlowState, dinitz_steps, remove_cycles
from expander_pruning.graph.dyngraph import DecGraph, EdgeId, VertexId
from expander_pruning.models.prune_config import PruneConfig
from expander_pruning.models.reports import CertificateReport

logger = logging.getLogger(__name__)


class FlowBacktracker:
    """Acyclic flow out of S on its own copy of the graph.

    Build it with `fb_initialize`, or drive `initialize_steps()` for a resumable start.
    """

    def __init__(
        self,
        graph: DecGraph,
        S: Iterable[VertexId],
        config: PruneConfig,
        theta: int,
        counter: OpCounter | None = None,
    ) -> None:
        self.graph = graph.copy()
        self.S = {v for v in S if self.graph.vertex_alive[v]}
        self.d = graph.d
        self.config = config
        self.theta = theta
        self.counter = counter
        self.scale = config.cert_scale
        self.capacity = config.backtrack_capacity(theta)
        self.st = FlowState(self.graph, self.capacity, self.scale)
        self.layer: FlowLayer | None = None
        self.q: dict[VertexId, int] = {}
        self.S_rerun: set[VertexId] = set()

    @classmethod
    def fb_initialize(
        cls,
        graph: DecGraph,
        S: Iterable[VertexId],
        config: PruneConfig,
        theta: int,
        counter: OpCounter | None = None,
    ) -> "FlowBacktracker":
        """Route (θ + offset)·d[S]·σ out of S into sinks 8·d[V∖S]·σ.

        Raises:
            ReinitializationError: If a source with a live edge keeps excess
        """
        fb = cls(graph, S, config, theta, counter)
        run_to_completion(fb.initialize_steps())
        return fb

    def initialize_steps(self) -> Steps[FlowState]:
        st = self.st
        unit = self.scale
        multiplier = self.theta + self.config.preset.backtrack_source_offset
        isolated = sorted(v for v in self.S if self.graph.cur_deg[v] == 0)
        if isolated:
            logger.debug(f"Backtracker with θ = {self.theta}: handing back sources without live edges {isolated}")
            self.S_rerun.update(isolated)
        for v in self.graph.alive_vertices():
            if v in self.S_rerun:
                continue
            if v in self.S:
                st.s[v] = multiplier * self.d[v] * unit
            else:
                st.t[v] = 8 * self.d[v] * unit
        if self.S:
            yield from dinitz_steps(st, self.config.cert_rounds, self.counter, require_balance=False)
            remove_cycles(st, self.counter)
            yield max(1, self.graph.m)

        stuck = sorted(v for v in self.S if st.excess_of(v) > 0)
        if stuck:
            raise ReinitializationError(
                f"Backtracker with θ = {self.theta}: sources {stuck[:5]} keep excess after initialization",
            )
        self.layer = FlowLayer(st, self.counter)
        return st

    def remove_batch_steps(self, P: Iterable[EdgeId], U: Iterable[VertexId]) -> Steps[set[VertexId]]:
        """Remove edges P and vertices U, backtracking all flow they carried.

        Returns:
            Sources newly handed back in S_rerun
        """
        layer = self.layer
        if layer is None:
            raise ReinitializationError("Backtracker is not initialized")
        g = self.graph
        gone = sorted(v for v in set(U) if g.vertex_alive[v])
        edges = {e for e in P if g.edge_alive[e]}
        for v in gone:
            edges.update(g.incident_live(v))

        handed_back: set[VertexId] = set()
        for e in sorted(edges):
            rounds = 0
            while (a := layer.carrying_arc(e)) is not None:
                r = layer.retract(a)
                layer.relink(r)
                if r in self.S:
                    self.q[r] = self.q.get(r, 0) + 1
                    if self.q[r] > self.d[r] * self.scale and r not in self.S_rerun:
                        self.S_rerun.add(r)
                        handed_back.add(r)
                rounds += 1
                if rounds > self.capacity:
                    raise InfeasibleFlowError(f"Edge {e} kept flow after {self.capacity} backtracking rounds")
            layer.detach_edge(e)
            yield rounds + 1

        g.remove_vertices(gone)
        for v in gone:
            self.st.clear_vertex(v)
        return handed_back

    def fb_remove_batch(self, P: Iterable[EdgeId], U: Iterable[VertexId]) -> tuple[set[VertexId], FlowState]:
        """Synchronous `remove_batch_steps`. Returns the S_rerun delta and the current flow."""
        handed_back = run_to_completion(self.remove_batch_steps(P, U))
        return handed_back, self.flow()

    def flow(self) -> FlowState:
        return self.layer.flush() if self.layer is not None else self.st

    def certificate(self) -> FlowCertificate:
        """(S ∖ S_rerun on live vertices, f) as a (θ, 10, cap/σ) certificate."""
        alive = frozenset(v for v in self.S - self.S_rerun if self.graph.vertex_alive[v])
        return FlowCertificate(
            S=alive,
            f=self.flow(),
            gamma_source=Fraction(self.theta),
            gamma_sink=Fraction(10),
            c=Fraction(self.capacity, self.scale),
        )


class WorstCaseFlowJob:
    """Chain of backtrackers that keeps routing out of S at level l while deletion batches arrive."""

    def __init__(
        self,
        graph: DecGraph,
        S: Iterable[VertexId],
        level: int,
        config: PruneConfig,
        counter: OpCounter | None = None,
    ) -> None:
        self.graph = graph.copy()
        self.S = {v for v in S if self.graph.vertex_alive[v]}
        self.level = level
        self.config = config
        self.counter = counter
        self.theta = config.worstcase_theta(level)
        self.backtrackers: list[FlowBacktracker] = []
        self.batches_seen = 0

    def _start(self, sources: set[VertexId]) -> Steps[None]:
        fb = FlowBacktracker(self.graph, sources, self.config, self.theta, self.counter)
        yield from fb.initialize_steps()
        self.backtrackers.append(fb)

    def start_steps(self) -> Steps[None]:
        """Initialize the first backtracker on S."""
        yield from self._start(self.S)

    def feed_steps(self, P: Iterable[EdgeId], U: Iterable[VertexId]) -> Steps[set[VertexId]]:
        """Deliver one deletion batch to every backtracker and start one for the live handed-back sources."""
        P = sorted(set(P))
        U = sorted(set(U))
        handed_back: set[VertexId] = set()
        for fb in list(self.backtrackers):
            delta = yield from fb.remove_batch_steps(P, U)
            handed_back |= delta
        for e in P:
            if self.graph.edge_alive[e]:
                self.graph.delete_edge(e)
        self.graph.remove_vertices(U)
        self.batches_seen += 1

        survivors = {v for v in handed_back if self.graph.vertex_alive[v]}
        if survivors:
            logger.debug(f"Level {self.level}: restarting {len(survivors)} sources after batch {self.batches_seen}")
            yield from self._start(survivors)
        return survivors

    @classmethod
    def wcf_run(
        cls,
        graph: DecGraph,
        S: Iterable[VertexId],
        level: int,
        config: PruneConfig,
        batches: Iterable[tuple[Iterable[EdgeId], Iterable[VertexId]]],
        counter: OpCounter | None = None,
    ) -> "WorstCaseFlowJob":
        """Run the whole chain synchronously over the given (P, U) batches."""
        job = cls(graph, S, level, config, counter)
        run_to_completion(job.start_steps())
        for P, U in batches:
            run_to_completion(job.feed_steps(P, U))
        return job

    def total_flow(self) -> FlowState:
        flows = [fb.flow() for fb in self.backtrackers]
        if not flows:
            return FlowState(self.graph, 0, self.config.cert_scale)
        return sum_flows(self.graph, flows)

    def contract(self) -> FlowCertificate:
        """(S on vertices with a live edge, Σf) as a (10lk + l + 1, 10k − 1, Σcap/σ) certificate on the job graph."""
        k, level = self.config.k, self.level
        total = self.total_flow()
        capacity = sum(fb.capacity for fb in self.backtrackers)
        return FlowCertificate(
            S=frozenset(v for v in self.S if self.graph.vertex_alive[v] and self.graph.cur_deg[v] > 0),
            f=total,
            gamma_source=Fraction(10 * level * k + level + 1),
            gamma_sink=Fraction(10 * k - 1),
            c=Fraction(max(capacity, 1), self.config.cert_scale),
        )

    def contract_report(self) -> CertificateReport:
        return verify_certificate(self.graph, self.contract())
