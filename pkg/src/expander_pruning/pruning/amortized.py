# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Delayed pruning with worst-case recourse and amortized time.

Every deletion first drains η edges around each layer set Ŝ_i through the batch certificate, then lets the
batching scheme pick a rebuild level i, reruns batch pruning from i and reinitializes the certificate layers i..k
with the new proposals. Vertices only ever enter the pruned set S_0 through the certificate, so S_0 grows by a
bounded amount per deletion.
"""

import logging

from expander_pruning.common.exceptions import (
    DeletionBudgetExceededError,
    EdgeAlreadyDeletedError,
    FullDrainError,
    MonotonicityError,
)
from expander_pruning.common.steps import OpCounter
from expander_pruning.graph.dyngraph import DecGraph, EdgeId, VertexId
from expander_pruning.models.events import PruneDelta
from expander_pruning.models.prune_config import PruneConfig
from expander_pruning.pruning.batchcert import BatchCertState
from expander_pruning.pruning.batching import BatchState
from expander_pruning.pruning.batchprune import BatchPruneSession
from expander_pruning.pruning.preconditions import check_expander

logger = logging.getLogger(__name__)


def certificate_sets(proposals: list[set[VertexId]], start: int, k: int, lam: int) -> dict[int, set[VertexId]]:
    """Layer sets S′_start..S′_k, with S′_k holding every proposal of level k and above."""
    sets = {j: set(proposals[j]) for j in range(start, k)}
    top: set[VertexId] = set()
    for j in range(k, lam + 1):
        top |= proposals[j]
    sets[k] = top
    return sets


class PrunerBase:
    """State shared by the amortized and worst-case pruners: the live graph, batches, batch pruning and certificate.

    Raises:
        ExpanderPreconditionError: If the initial graph is certainly not a φ-expander
    """

    def __init__(self, graph: DecGraph, config: PruneConfig, counter: OpCounter | None = None) -> None:
        self.initial_conductance = check_expander(graph, config.phi)
        self.config = config
        self.counter = counter if counter is not None else OpCounter()
        self.graph = graph.copy()
        self.batch_state = BatchState(config.k, config.lam, config.deletion_budget)
        self.session = BatchPruneSession(graph.copy(), config, self.counter)
        self.cert = BatchCertState.initialize(graph, config, self.counter)
        self.deltas: list[PruneDelta] = []
        self.seen_pruned: set[VertexId] = set()

        empty: list[set[VertexId]] = [set() for _ in range(config.lam + 2)]
        self.session.run_from(1, [[] for _ in range(config.lam + 2)], empty)
        self.batch_state.record_proposals(1, self._proposals_from(1))
        outcome = self.cert.reinitialize(1, certificate_sets(self.session.proposals, 1, config.k, config.lam))
        if outcome.isolated:
            logger.warning(f"Initial certificate pruned isolated vertices {outcome.isolated}")
        logger.info(
            f"Pruner ready: n={config.n} m={config.m} k={config.k} λ={config.lam} "
            f"budget={config.deletion_budget} preset={config.preset.name.value}",
        )

    @property
    def pruned(self) -> set[VertexId]:
        return set(self.cert.S0)

    def _proposals_from(self, start: int) -> dict[int, set[VertexId]]:
        return {j: set(self.session.proposals[j]) for j in range(start, self.config.lam + 1)}

    def _check_deletion(self, e: EdgeId) -> None:
        if not 0 <= e < self.graph.m or not self.graph.edge_alive[e]:
            raise EdgeAlreadyDeletedError(f"Edge {e} is not a live edge of the graph")
        if self.batch_state.deletions_processed >= self.batch_state.deletion_budget:
            raise DeletionBudgetExceededError(f"Deletion budget of {self.batch_state.deletion_budget} is exhausted")

    def drain_edges(self, level: int, eta: int) -> list[EdgeId]:
        """Up to η live edges of Ĝ with an endpoint in Ŝ_level, ascending (vertex, edge), outside the lower sets."""
        cert = self.cert
        lower: set[VertexId] = set()
        for j in range(1, level):
            lower |= cert.S[j]
        picked: list[EdgeId] = []
        seen: set[EdgeId] = set()
        for v in sorted(cert.Shat[level]):
            for e in sorted(cert.ghat.adjacency[v]):
                if e in seen or not cert.ghat.edge_alive[e] or cert.ghat.other(e, v) in lower:
                    continue
                seen.add(e)
                picked.append(e)
                if len(picked) >= eta:
                    return picked
        return picked

    def drain(self, eta: int, delta: PruneDelta) -> list[VertexId]:
        """Feed η edges per level through the certificate. Returns the vertices this pruned."""
        pruned: list[VertexId] = []
        violations = self.cert.recourse_violations
        for level in range(1, self.config.k + 1):
            for e in self.drain_edges(level, eta):
                if self.cert.ghat.edge_alive[e]:
                    pruned.extend(self.cert.remove_edge(e))
        if self.cert.recourse_violations != violations:
            delta.recourse_ok = False
        return pruned

    def check_full_drain(self, level: int) -> None:
        """Every layer set S_j, j ≥ level, about to be replaced must already lie in S_0.

        Raises:
            FullDrainError: If a layer still holds unpruned vertices
        """
        for j in range(level, self.config.k + 1):
            left = self.cert.Shat[j]
            if left:
                raise FullDrainError(
                    f"Layer {j} holds {len(left)} unpruned vertices when level {level} is rebuilt: {sorted(left)[:5]}",
                )

    def _check_monotone(self, pruned: list[VertexId]) -> None:
        """S_0 only grows and a delta lists new vertices only.

        Raises:
            MonotonicityError: If a vertex left S_0 or was reported as pruned twice
        """
        current = self.cert.S0
        lost = self.seen_pruned - current
        if lost:
            raise MonotonicityError(f"Vertices {sorted(lost)} left the pruned set")
        repeated = self.seen_pruned.intersection(pruned)
        if repeated:
            raise MonotonicityError(f"Vertices {sorted(repeated)} were already pruned")
        self.seen_pruned = set(current)

    def finish_deletion(self, e: EdgeId, pruned: list[VertexId], delta: PruneDelta, start_ops: int) -> PruneDelta:
        """Forward e to the certificate, delete it and close the delta."""
        violations = self.cert.recourse_violations
        if self.cert.ghat.edge_alive[e]:
            pruned.extend(self.cert.remove_edge(e))
        if self.cert.recourse_violations != violations:
            delta.recourse_ok = False
        self.graph.delete_edge(e)

        self._check_monotone(pruned)
        delta.pruned = sorted(set(pruned))
        delta.op_count = self.counter.total - start_ops
        if len(delta.pruned) > self.config.recourse_bound:
            delta.recourse_ok = False
            logger.warning(
                f"Deletion of edge {e} pruned {len(delta.pruned)} > {float(self.config.recourse_bound):.1f} vertices",
            )
        self.deltas.append(delta)
        logger.debug(
            f"Deleted edge {e}: rebuild level {delta.rebuild_level}, pruned {delta.pruned}, ops {delta.op_count}",
        )
        return delta


class AmortizedPruner(PrunerBase):
    """Pruner whose per-deletion recourse is bounded and whose running time is bounded on average."""

    def __init__(self, graph: DecGraph, config: PruneConfig, counter: OpCounter | None = None) -> None:
        super().__init__(graph, config, counter)
        self.eta = config.drain

    def process_deletion(self, e: EdgeId) -> PruneDelta:
        """Process the deletion of edge e.

        Returns:
            The vertices newly added to S_0 and the claims checked while processing

        Raises:
            EdgeAlreadyDeletedError: If e is not alive
            DeletionBudgetExceededError: If the deletion budget is exhausted
            FullDrainError: If a rebuilt layer was not drained
            ExcessBoundError, DemandBalanceError: If batch pruning leaves its invariants
            ReinitializationError: If a certificate layer cannot route its sources
        """
        self._check_deletion(e)
        start_ops = self.counter.total
        delta = PruneDelta()
        pruned = self.drain(self.eta, delta)

        level = self.batch_state.insert_deletion(e)
        delta.rebuild_level = level
        self.check_full_drain(level)

        self.session.run_from(level, self.batch_state.B, self.batch_state.A)
        self.batch_state.record_proposals(level, self._proposals_from(level))

        sets = certificate_sets(self.session.proposals, level, self.config.k, self.config.lam)
        outcome = self.cert.reinitialize(level, sets)
        pruned.extend(outcome.isolated)

        return self.finish_deletion(e, pruned, delta, start_ops)
