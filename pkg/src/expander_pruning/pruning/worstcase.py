# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Pruning with worst-case recourse and worst-case time per deletion.

A rebuild of level i ≤ k − 2 is prepared in the background as soon as B_(i+1) becomes full while B_i is not. The
job forks batch pruning, runs level i and one more level every time a further batch fills, and starts a worst-case
flow for each computed level. It is ticked with a fixed per-deletion step budget. When batching finally picks
level i as rebuild index, the job's levels and flows are swapped in and the certificate is reinitialized without
running a flow. Levels k − 1 and k are always rebuilt inline.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum

from expander_pruning.common.exceptions import BatchStateCorruptedError, JobDeadlineError
from expander_pruning.common.math_util import MathUtil
from expander_pruning.common.steps import OpCounter, Steps, StepTask
from expander_pruning.config import ENV
from expander_pruning.flow.localflow import FlowState
from expander_pruning.graph.dyngraph import DecGraph, EdgeId, VertexId
from expander_pruning.models.events import PruneDelta
from expander_pruning.models.prune_config import PruneConfig
from expander_pruning.pruning.amortized import PrunerBase, certificate_sets
from expander_pruning.pruning.backtracking import WorstCaseFlowJob
from expander_pruning.pruning.batching import BatchFullness
from expander_pruning.pruning.batchprune import BatchPruneSession

logger = logging.getLogger(__name__)


class JobStatus(str, Enum):
    RUNNING = "running"
    SWAPPED = "swapped"
    DISCARDED = "discarded"


@dataclass
class JobStage:
    """Batch and forced set a job froze for one level."""

    level: int
    batch: list[EdgeId]
    forced: set[VertexId] = field(default_factory=set)


class RebuildJob:
    """Background rebuild of levels i..λ and of the certificate flows of levels i..k − 2."""

    def __init__(
        self,
        level: int,
        shadow: BatchPruneSession,
        base: DecGraph,
        config: PruneConfig,
        counter: OpCounter,
        edge_cursor: int,
        prune_cursor: int,
    ) -> None:
        self.level = level
        self.shadow = shadow
        self.base = base
        self.config = config
        self.counter = counter
        self.edge_cursor = edge_cursor
        self.prune_cursor = prune_cursor
        self.next_level = level
        self.stages: dict[int, JobStage] = {}
        self.flow_jobs: dict[int, WorstCaseFlowJob] = {}
        self.tasks: deque[StepTask[None]] = deque()
        self.status = JobStatus.RUNNING
        self.steps_spent = 0
        estimate = config.job_work_estimate(level)
        self.budget = MathUtil.ceil_div(estimate * ENV.EP_JOB_SAFETY_FACTOR / config.job_window(level))

    @property
    def done(self) -> bool:
        return not self.tasks

    def add_stage(self, batch: list[EdgeId], forced: set[VertexId]) -> None:
        """Freeze the batch and forced set of the next level and queue its computation."""
        level = self.next_level
        stage = JobStage(level, list(batch), set(forced))
        self.stages[level] = stage
        self.tasks.append(StepTask(self._stage_steps(stage), self.config.job_work_estimate(level)))
        self.next_level += 1
        logger.debug(f"Rebuild job {self.level}: froze level {level} with {len(batch)} deletions")

    def add_feed(self, edges: list[EdgeId], vertices: list[VertexId]) -> None:
        """Queue a deletion batch for every flow started so far."""
        self.tasks.append(StepTask(self._feed_steps(edges, vertices), len(edges) + len(vertices)))

    def _stage_steps(self, stage: JobStage) -> Steps[None]:
        outcome = yield from self.shadow.level_task(stage.level, stage.batch, stage.forced)
        graph = self.base.copy()
        excluded: set[VertexId] = set()
        for j in range(self.level, stage.level):
            excluded |= self.shadow.proposals[j]
        graph.remove_vertices(excluded)
        flow_job = WorstCaseFlowJob(graph, outcome.proposal, stage.level, self.config, self.counter)
        yield from flow_job.start_steps()
        self.flow_jobs[stage.level] = flow_job

    def _feed_steps(self, edges: list[EdgeId], vertices: list[VertexId]) -> Steps[None]:
        for level in sorted(self.flow_jobs):
            yield from self.flow_jobs[level].feed_steps(edges, vertices)
        for e in edges:
            if self.base.edge_alive[e]:
                self.base.delete_edge(e)
        self.base.remove_vertices(vertices)
        yield 1

    def tick(self, budget: int) -> int:
        """Spend about `budget` operations on the queued work, oldest first."""
        spent = 0
        while self.tasks and spent < budget:
            task = self.tasks[0]
            spent += task.step(budget - spent)
            if task.done:
                self.tasks.popleft()
        self.steps_spent += spent
        return spent

    def finish(self) -> int:
        spent = 0
        while self.tasks:
            spent += self.tasks.popleft().finish()
        self.steps_spent += spent
        return spent

    def flows(self) -> dict[int, FlowState]:
        return {level: job.total_flow() for level, job in self.flow_jobs.items()}


class WorstCasePruner(PrunerBase):
    """Pruner whose per-deletion recourse and running time are both bounded for every single deletion."""

    def __init__(self, graph: DecGraph, config: PruneConfig, counter: OpCounter | None = None) -> None:
        super().__init__(graph, config, counter)
        self.eta = config.worstcase_drain
        self.jobs: dict[int, RebuildJob] = {}
        self.swaps = 0
        self.max_op_count = 0

    def _take_logs(self, job: RebuildJob) -> tuple[list[EdgeId], list[VertexId]]:
        edges = self.cert.edge_log[job.edge_cursor :]
        vertices = self.cert.prune_log[job.prune_cursor :]
        job.edge_cursor = len(self.cert.edge_log)
        job.prune_cursor = len(self.cert.prune_log)
        return edges, vertices

    def _start_job(self, level: int) -> RebuildJob:
        cert = self.cert
        base = cert.ghat.copy()
        excluded = set(cert.S0)
        for j in range(1, level):
            excluded |= cert.S[j]
        base.remove_vertices(excluded)
        job = RebuildJob(
            level,
            self.session.fork(),
            base,
            self.config,
            self.counter,
            len(cert.edge_log),
            len(cert.prune_log),
        )
        bs = self.batch_state
        job.add_stage(bs.B[level] + bs.B[level + 1], bs.A[level] | bs.S[level] | bs.A[level + 1] | bs.S[level + 1])
        logger.info(f"Started background rebuild of level {level} (budget {job.budget} per deletion)")
        return job

    def _schedule(self) -> None:
        """Start jobs whose upper batch just filled and freeze every level whose batch is now full."""
        bs = self.batch_state
        k = self.config.k
        for level in range(1, k - 1):
            if level in self.jobs:
                continue
            if bs.classify(level + 1) is BatchFullness.FULL and bs.classify(level) is not BatchFullness.FULL:
                self.jobs[level] = self._start_job(level)
        for level in sorted(self.jobs):
            job = self.jobs[level]
            while job.next_level <= k - 2 and bs.classify(job.next_level + 1) is BatchFullness.FULL:
                job.add_feed(*self._take_logs(job))
                j = job.next_level + 1
                job.add_stage(bs.B[j], bs.A[j] | bs.S[j])

    def _discard_above(self, level: int) -> None:
        for j in sorted(self.jobs):
            if j > level:
                self.jobs.pop(j).status = JobStatus.DISCARDED
                logger.debug(f"Discarded rebuild job {j} after a rebuild of level {level}")

    def _check_swap_sets(self, level: int) -> None:
        """Vertices outside the swapped layers that are gone must be exactly the tracked pruned sets.

        Raises:
            BatchStateCorruptedError: If S_0 ∪ S_(<i) differs from S_(<i) ∪ ⋃A_j
        """
        lower: set[VertexId] = set()
        for j in range(1, level):
            lower |= self.cert.S[j]
        tracked = set(lower)
        for j in range(1, self.config.lam + 1):
            tracked |= self.batch_state.A[j]
        current = self.cert.S0 | lower
        if current != tracked:
            extra = sorted(current - tracked)[:5]
            missing = sorted(tracked - current)[:5]
            raise BatchStateCorruptedError(
                f"Before swapping level {level}: G[V∖S_0] ≠ G[V∖⋃(S_i ∪ A_i)] (untracked {extra}, unpruned {missing})",
            )

    def _rebuild_inline(self, level: int) -> list[VertexId]:
        self.session.run_from(level, self.batch_state.B, self.batch_state.A)
        return self._reinitialize(level, None)

    def _reinitialize(self, level: int, flows: dict[int, FlowState] | None) -> list[VertexId]:
        self.batch_state.record_proposals(level, self._proposals_from(level))
        sets = certificate_sets(self.session.proposals, level, self.config.k, self.config.lam)
        outcome = self.cert.reinitialize(level, sets, flows=flows)
        return outcome.isolated

    def _swap(self, job: RebuildJob) -> list[VertexId]:
        level = job.level
        bs = self.batch_state
        for j, stage in job.stages.items():
            if sorted(stage.batch) != sorted(bs.B[j]) or stage.forced != bs.A[j]:
                raise BatchStateCorruptedError(f"Rebuild job {level} froze level {j} with batches that changed since")
        if not job.done:
            raise JobDeadlineError(
                f"Rebuild job {level} missed its window of {self.config.job_window(level)} deletions "
                f"with {len(job.tasks)} tasks left",
            )

        self._check_swap_sets(level)
        job.add_feed(*self._take_logs(job))
        job.finish()
        job.shadow.run_from(job.next_level, bs.B, bs.A)
        self.session = job.shadow
        job.status = JobStatus.SWAPPED
        self.swaps += 1
        isolated = self._reinitialize(level, job.flows())
        logger.info(f"Swapped in background rebuild of level {level} after {job.steps_spent} steps")
        return isolated

    def process_deletion(self, e: EdgeId) -> PruneDelta:
        """Process the deletion of edge e within a bounded amount of work.

        Returns:
            The vertices newly added to S_0, the work spent and the claims checked while processing

        Raises:
            EdgeAlreadyDeletedError: If e is not alive
            DeletionBudgetExceededError: If the deletion budget is exhausted
            BatchStateCorruptedError: If a swap finds the pruned sets out of sync
            JobDeadlineError: If a background rebuild is not done when its level is rebuilt
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
        self._discard_above(level)
        self.check_full_drain(level)

        job = self.jobs.pop(level, None)
        if job is not None:
            pruned.extend(self._swap(job))
        else:
            if level <= self.config.k - 2:
                logger.warning(f"No background rebuild prepared for level {level}; rebuilding inline")
            pruned.extend(self._rebuild_inline(level))

        self._schedule()
        steps = 0
        for j in sorted(self.jobs):
            steps += self.jobs[j].tick(self.jobs[j].budget)
        delta.active_jobs = len(self.jobs)
        delta.steps_spent = steps

        delta = self.finish_deletion(e, pruned, delta, start_ops)
        self.max_op_count = max(self.max_op_count, delta.op_count)
        if delta.op_count > self.config.work_bound:
            delta.work_ok = False
            logger.warning(f"Deletion of edge {e} took {delta.op_count} > {float(self.config.work_bound):.0f} ops")
        return delta
