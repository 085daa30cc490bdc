# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Level-by-level batch pruning.

Each level removes its deletion batch B_i and forced-prune set A_i from the current graph Ĝ, puts source on the
survivors of every removed edge, adds d·σ/λ sink everywhere and runs a bounded local flow. When the excess stays
above 2^(k−i)·σ/φ, a residual BFS ball around the excess is cut off as the level's proposal S_i.
"""

import logging
from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction

from expander_pruning.certs.certificate import build_exp_cert, exp_cert_report
from expander_pruning.common.exceptions import (
    BatchStateCorruptedError,
    ExcessBoundError,
    SparseCutSearchError,
    VolumeBoundError,
)
from expander_pruning.common.math_util import MathUtil
from expander_pruning.common.steps import OpCounter, Steps, run_to_completion
from expander_pruning.flow.localflow import FlowState, dinitz_steps
from expander_pruning.graph.dyngraph import DecGraph, EdgeId, VertexId
from expander_pruning.models.prune_config import PruneConfig
from expander_pruning.models.reports import CertificateReport, LevelReport

logger = logging.getLogger(__name__)


@dataclass
class LevelState:
    """Ĝ and its flow state between two levels."""

    ghat: DecGraph
    st: FlowState

    def copy(self) -> "LevelState":
        ghat = self.ghat.copy()
        return LevelState(ghat, self.st.copy(ghat))


@dataclass
class LevelOutcome:
    proposal: set[VertexId] = field(default_factory=set)
    report: LevelReport | None = None


def _remove_edges(state: LevelState, edges: Iterable[EdgeId], unit: int) -> int:
    """Drop the flow of live edges, delete them and charge `unit` source at every surviving endpoint."""
    ghat, st = state.ghat, state.st
    removed = [e for e in edges if ghat.edge_alive[e]]
    for e in removed:
        st.drop_edge(e)
        ghat.delete_edge(e)
    for e in removed:
        for x in ghat.endpoints(e):
            if ghat.vertex_alive[x]:
                st.s[x] += unit
    return len(removed)


def _remove_vertices(state: LevelState, vertices: Iterable[VertexId], unit: int) -> int:
    """Kill the live vertices of a set, charging source at survivors of their edges."""
    ghat, st = state.ghat, state.st
    alive = sorted(v for v in set(vertices) if ghat.vertex_alive[v])
    if not alive:
        return 0
    inside = set(alive)
    edges = sorted({e for v in alive for e in ghat.incident_live(v)})
    for e in edges:
        st.drop_edge(e)
    ghat.remove_vertices(alive)
    for e in edges:
        for x in ghat.endpoints(e):
            if x not in inside and ghat.vertex_alive[x]:
                st.s[x] += unit
    for v in alive:
        st.clear_vertex(v)
    return len(edges)


def find_sparse_level_cut(
    st: FlowState,
    config: PruneConfig,
    counter: OpCounter | None = None,
) -> tuple[set[VertexId], int]:
    """Grow a residual BFS ball around the excess until its residual boundary is sparse.

    The ball S_≤j stops at the first j with |residual arcs leaving S_≤j| < sparsity·(vol_d(S_≤j) + ‖x‖₁/σ).
    Vertices of each layer are visited in ascending order.

    Returns:
        The ball and its radius j

    Raises:
        SparseCutSearchError: If the radius reaches the round limit h
    """
    graph = st.graph
    total = st.total_excess()
    ball = {v for v in graph.alive_vertices() if st.excess_of(v) > 0}
    frontier = sorted(ball)
    threshold_extra = Fraction(total, st.scale)
    h = config.rounds
    j = 0
    ops = 0
    while True:
        cut = 0
        for v in sorted(ball):
            for e in graph.adjacency[v]:
                ops += 1
                if not graph.edge_alive[e]:
                    continue
                w = graph.other(e, v)
                if w not in ball and st.residual(graph.arc_from(e, v)) > 0:
                    cut += 1
        if cut < config.sparsity * (graph.volume_d(ball) + threshold_extra):
            break
        if j + 1 >= h:
            raise SparseCutSearchError(f"Residual ball reached radius {j + 1} ≥ h = {h} without a sparse cut")
        layer: set[VertexId] = set()
        for v in frontier:
            for e in graph.adjacency[v]:
                if graph.edge_alive[e]:
                    w = graph.other(e, v)
                    if w not in ball and st.residual(graph.arc_from(e, v)) > 0:
                        layer.add(w)
        if not layer:
            break
        ball |= layer
        frontier = sorted(layer)
        j += 1

    if counter is not None:
        counter.add(ops)
    return ball, j


def level_steps(
    state: LevelState,
    level: int,
    batch: Iterable[EdgeId],
    forced: Iterable[VertexId],
    config: PruneConfig,
    counter: OpCounter | None = None,
) -> Steps[LevelOutcome]:
    """One level of batch pruning as a step generator. Mutates `state`.

    Raises:
        DemandBalanceError: If total source exceeds total sink
        ExcessBoundError: If the excess left after the sparse cut exceeds 2^(k−i)·σ/φ
        VolumeBoundError: If the pruned volume exceeds the level bound
        SparseCutSearchError: If the ball search reaches h
    """
    ghat, st = state.ghat, state.st
    unit = config.source_unit
    removed = _remove_edges(state, sorted(set(batch)), unit)
    removed += _remove_vertices(state, forced, unit)

    for v in ghat.alive_vertices():
        st.t[v] += MathUtil.ceil_div(Fraction(ghat.d[v] * config.scale, config.lam))

    excess_before = st.total_excess()
    yield from dinitz_steps(st, config.rounds, counter)

    excess_after = st.total_excess()
    bound = config.level_excess_bound(level)
    outcome = LevelOutcome()
    radius: int | None = None
    if excess_after > bound:
        proposal, radius = find_sparse_level_cut(st, config, counter)
        outcome.proposal = proposal
        _remove_vertices(state, proposal, unit)
        yield len(proposal)

    final_excess = st.total_excess()
    excess_ok = final_excess <= bound
    volume = ghat.volume_d(outcome.proposal)
    volume_bound = config.level_volume_bound(level)
    volume_ok = volume <= volume_bound
    outcome.report = LevelReport(
        level=level,
        removed_edges=removed,
        excess_before=excess_before,
        excess_after=excess_after,
        excess_bound=bound,
        excess_ok=excess_ok,
        cut_radius=radius,
        pruned=sorted(outcome.proposal),
        pruned_volume=volume,
        volume_bound=volume_bound,
        volume_ok=volume_ok,
    )
    if not excess_ok:
        raise ExcessBoundError(f"Level {level}: excess {final_excess} after the sparse cut, bound {bound}")
    if not volume_ok:
        raise VolumeBoundError(f"Level {level}: pruned volume {volume}, bound {volume_bound}")
    return outcome


def run_level(
    state: LevelState,
    level: int,
    batch: Iterable[EdgeId],
    forced: Iterable[VertexId],
    config: PruneConfig,
    counter: OpCounter | None = None,
) -> LevelOutcome:
    """Run one level to completion. See `level_steps`."""
    return run_to_completion(level_steps(state, level, batch, forced, config, counter))


class BatchPruneSession:
    """Batch pruning with one snapshot per level, so a run can restart from any level.

    Snapshot 0 is the initial graph with a zero flow of capacity ⌈a·σ/φ⌉ per arc.
    """

    def __init__(self, graph: DecGraph, config: PruneConfig, counter: OpCounter | None = None) -> None:
        self.g0 = graph
        self.config = config
        self.counter = counter
        lam = config.lam
        ghat = graph.copy()
        self.snapshots: list[LevelState | None] = [None] * (lam + 1)
        self.snapshots[0] = LevelState(ghat, FlowState(ghat, config.source_unit, config.scale))
        self.proposals: list[set[VertexId]] = [set() for _ in range(lam + 2)]
        self.reports: list[LevelReport | None] = [None] * (lam + 1)
        self.batches: list[list[EdgeId]] = [[] for _ in range(lam + 2)]
        self.forced: list[set[VertexId]] = [set() for _ in range(lam + 2)]

    def fork(self) -> "BatchPruneSession":
        """Independent copy that shares no mutable state with this session."""
        clone = BatchPruneSession.__new__(BatchPruneSession)
        clone.g0 = self.g0
        clone.config = self.config
        clone.counter = self.counter
        clone.snapshots = [snap.copy() if snap is not None else None for snap in self.snapshots]
        clone.proposals = [set(p) for p in self.proposals]
        clone.reports = list(self.reports)
        clone.batches = [list(b) for b in self.batches]
        clone.forced = [set(a) for a in self.forced]
        return clone

    def state_before(self, level: int) -> LevelState:
        snapshot = self.snapshots[level - 1]
        if snapshot is None:
            raise BatchStateCorruptedError(f"No snapshot before level {level}; run earlier levels first")
        return snapshot.copy()

    def level_task(self, level: int, batch: list[EdgeId], forced: set[VertexId]) -> Steps[LevelOutcome]:
        """Run a single level from the stored snapshot before it and store its result."""
        state = self.state_before(level)
        outcome = yield from level_steps(state, level, batch, forced, self.config, self.counter)
        self.snapshots[level] = state
        self.proposals[level] = set(outcome.proposal)
        self.reports[level] = outcome.report
        self.batches[level] = list(batch)
        self.forced[level] = set(forced)
        return outcome

    def run_from_steps(
        self,
        start: int,
        batches: list[list[EdgeId]],
        forced: list[set[VertexId]],
    ) -> Steps[set[VertexId]]:
        """Levels start..λ as a step generator, returning the surviving vertex set V̂."""
        for level in range(start, self.config.lam + 1):
            yield from self.level_task(level, batches[level], forced[level])
        final = self.snapshots[self.config.lam]
        assert final is not None
        return set(final.ghat.alive_vertices())

    def run_from(self, start: int, batches: list[list[EdgeId]], forced: list[set[VertexId]]) -> set[VertexId]:
        """Rerun levels start..λ with the given B_j and A_j (indexed by level) and return V̂."""
        survivors = run_to_completion(self.run_from_steps(start, batches, forced))
        logger.debug(f"Batch pruning rerun from level {start}: {len(survivors)} vertices survive")
        return survivors

    @property
    def final_state(self) -> LevelState:
        final = self.snapshots[self.config.lam]
        if final is None:
            return self.state_before(1)
        return final

    def surviving(self) -> set[VertexId]:
        return set(self.final_state.ghat.alive_vertices())

    def level_reports(self) -> list[LevelReport]:
        return [r for r in self.reports if r is not None]


def expansion_certificate(session: BatchPruneSession) -> CertificateReport:
    """Build and check the deletion-flow certificate on G′ = G[V̂] ∖ B of the session's latest run."""
    config = session.config
    g0 = session.g0
    survivors = session.surviving()
    A = [v for v in g0.alive_vertices() if v not in survivors]
    B = sorted({e for batch in session.batches for e in batch})
    f = build_exp_cert(g0, A, B, config.phi, config.scale, config.preset.source_factor)
    return exp_cert_report(g0, A, B, f, config.phi, config.preset.source_factor)
