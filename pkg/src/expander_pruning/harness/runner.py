# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Run a deletion experiment and write its event log, batch history and summary."""

import logging
from fractions import Fraction
from pathlib import Path

import pandas as pd

from expander_pruning.common.exceptions import (
    DemandBalanceError,
    ExcessBoundError,
    ExpanderPruningError,
    FullDrainError,
    JobDeadlineError,
    ReinitializationError,
    SparseCutSearchError,
    VolumeBoundError,
)
from expander_pruning.common.fs_util import FsUtil
from expander_pruning.common.steps import OpCounter
from expander_pruning.config import ENV
from expander_pruning.graph.dyngraph import DecGraph
from expander_pruning.harness.adversary import make_adversary
from expander_pruning.harness.generators import describe, generate
from expander_pruning.harness.graph_io import write_graph
from expander_pruning.models.events import BatchLog, EventRecord, PruneDelta
from expander_pruning.models.experiment import (
    SUMMARY_COLUMNS,
    BudgetStatusEnum,
    ChecksEnum,
    Experiment,
    PrunerEnum,
    RunSummary,
)
from expander_pruning.models.presets import get_preset
from expander_pruning.models.prune_config import PruneConfig
from expander_pruning.pruning.amortized import AmortizedPruner, PrunerBase
from expander_pruning.pruning.worstcase import WorstCasePruner

logger = logging.getLogger(__name__)

EXPERIMENT_FILE = "experiment.json"
GRAPH_FILE = "graph.txt"
EVENTS_FILE = "events.jsonl"
SUMMARY_FILE = "summary.csv"
BATCHES_FILE = "batches.json"


def build_config(experiment: Experiment, graph: DecGraph) -> PruneConfig:
    return PruneConfig.build(graph.n, graph.m, experiment.phi, get_preset(experiment.preset.value))


def build_pruner(experiment: Experiment, graph: DecGraph, config: PruneConfig) -> PrunerBase:
    """The pruner the experiment names, counting operations on a fresh counter."""
    if experiment.pruner is PrunerEnum.AMORTIZED:
        return AmortizedPruner(graph, config, OpCounter())
    return WorstCasePruner(graph, config, OpCounter())


def remainder_vertices(pruner: PrunerBase) -> list[int]:
    return [v for v in pruner.graph.alive_vertices() if v not in pruner.cert.S0]


def remainder_conductance(pruner: PrunerBase) -> Fraction | None:
    """Exact conductance of G[V ∖ S_0], None when fewer than two vertices remain."""
    from pruning_oracle import conductance_exact

    graph = pruner.graph
    vertices = remainder_vertices(pruner)
    if len(vertices) < 2:
        return None
    return conductance_exact(graph.n, graph.edge_list(), vertices=vertices).conductance


def run_checks(experiment: Experiment, pruner: PrunerBase) -> tuple[bool | None, Fraction | None]:
    """Certificate and oracle checks after a deletion.

    The certificate check flushes the link-cut trees, so replays must run the same checks to reproduce op counts.
    """
    if experiment.checks is ChecksEnum.NONE:
        return None, None
    cert_ok = pruner.cert.verify().valid
    conductance = None
    if experiment.checks is ChecksEnum.ORACLE_SMALL and pruner.graph.n <= ENV.EP_ORACLE_MAX_N:
        conductance = remainder_conductance(pruner)
    return cert_ok, conductance


def event_record(
    t: int,
    e: int,
    endpoints: tuple[int, int],
    delta: PruneDelta,
    checks: tuple[bool | None, Fraction | None],
) -> EventRecord:
    cert_ok, conductance = checks
    return EventRecord(
        t=t,
        deleted_edge=e,
        endpoints=endpoints,
        cert_ok=cert_ok,
        conductance=conductance,
        **delta.model_dump(),
    )


class ExperimentRunner:
    """Runs one experiment into an output directory.

    Module errors end the run; the summary names the error and everything recorded up to it is still written.
    """

    def __init__(self, experiment: Experiment, out_dir: Path) -> None:
        self.experiment = experiment
        self.out_dir = out_dir
        self.events: list[EventRecord] = []
        self.error: ExpanderPruningError | None = None
        self.failure: str | None = None
        self.initial_checks: tuple[bool | None, Fraction | None] = (None, None)

    def run(self) -> RunSummary:
        exp = self.experiment
        graph = generate(exp.graph, exp.seed)
        config = build_config(exp, graph)
        FsUtil.create_file(self.out_dir / EXPERIMENT_FILE, exp.model_dump_json(indent=2), overwrite=True)
        write_graph(graph, self.out_dir / GRAPH_FILE)

        deletions = min(exp.max_deletions, config.deletion_budget)
        if deletions < exp.max_deletions:
            logger.warning(
                f"Requested {exp.max_deletions} deletions but the budget is {config.deletion_budget}; "
                f"running {deletions}",
            )
        if config.recourse_bound >= graph.n:
            logger.warning(
                f"Recourse bound {float(config.recourse_bound):.0f} is not below n = {graph.n}; "
                "the recourse column cannot be violated",
            )

        pruner: PrunerBase | None = None
        try:
            pruner = build_pruner(exp, graph, config)
            self.initial_checks = run_checks(exp, pruner)
            adversary = make_adversary(exp.adversary, exp.seed)
            for t in range(1, deletions + 1):
                e = adversary.next_edge(pruner.graph, pruner.pruned)
                if e is None:
                    logger.info(f"No live edge left after {t - 1} deletions")
                    break
                endpoints = pruner.graph.endpoints(e)
                delta = pruner.process_deletion(e)
                self.events.append(event_record(t, e, endpoints, delta, run_checks(exp, pruner)))
        except ExpanderPruningError as e:
            self.error = e
            self.failure = f"{type(e).__name__}: {e}"
            logger.error(f"Run stopped after {len(self.events)} deletions: {self.failure}")

        summary = self.summarize(graph, config, pruner)
        self.write_outputs(config, pruner, summary)
        logger.info(
            f"Run finished: {summary.deletions} deletions, {summary.pruned_total} pruned, "
            f"max recourse {summary.max_recourse}, max ops {summary.max_op_count}",
        )
        return summary

    def summarize(self, graph: DecGraph, config: PruneConfig, pruner: PrunerBase | None) -> RunSummary:
        exp = self.experiment
        events = self.events
        recourse = [len(r.pruned) for r in events]
        ops = [r.op_count for r in events]
        total_ops = sum(ops)

        cert_flags = [self.initial_checks[0], *(r.cert_ok for r in events)]
        checked_certs = [flag for flag in cert_flags if flag is not None]
        conductances = [self.initial_checks[1], *(r.conductance for r in events)]
        computed = [c for c in conductances if c is not None]

        pruned_total = len(pruner.cert.S0) if pruner is not None else 0
        remaining = len(remainder_vertices(pruner)) if pruner is not None else graph.n
        pruned_volume = graph.volume_d(pruner.cert.S0) if pruner is not None else 0
        gap_ok = not pruner.batch_state.gap_violations if pruner is not None else None
        initial = pruner.initial_conductance if pruner is not None else None

        def all_events(flag: str) -> bool | None:
            return all(getattr(r, flag) for r in events) if events else None

        def unless(*errors: type[ExpanderPruningError], checked: bool = pruner is not None) -> BudgetStatusEnum:
            return BudgetStatusEnum.unless(self.error, errors, checked)

        if pruner is not None and remaining < 2:
            expansion = BudgetStatusEnum.VIOLATED
        else:
            expansion = BudgetStatusEnum.of(all(c >= config.expansion_floor for c in computed) if computed else None)

        return RunSummary(
            graph=describe(exp.graph),
            n=graph.n,
            m=graph.m,
            phi=str(exp.phi),
            preset=exp.preset.value,
            pruner=exp.pruner.value,
            adversary=exp.adversary.value,
            seed=exp.seed,
            checks=exp.checks.value,
            k=config.k,
            lam=config.lam,
            deletion_budget=config.deletion_budget,
            deletions_requested=exp.max_deletions,
            deletions=len(events),
            pruned_total=pruned_total,
            remaining=remaining,
            max_recourse=max(recourse, default=0),
            mean_recourse=sum(recourse) / len(recourse) if recourse else 0.0,
            recourse_bound=float(config.recourse_bound),
            recourse_binding=config.recourse_bound < graph.n,
            recourse=BudgetStatusEnum.of(all_events("recourse_ok")),
            max_op_count=max(ops, default=0),
            mean_op_count=total_ops / len(ops) if ops else 0.0,
            work_bound=float(config.work_bound),
            work=BudgetStatusEnum.of(all_events("work_ok") if exp.pruner is PrunerEnum.WORSTCASE else None),
            total_op_count=total_ops,
            total_work_bound=float(config.total_work_bound(len(events))),
            total_work=BudgetStatusEnum.of(total_ops <= config.total_work_bound(len(events)) if events else None),
            pruned_volume=pruned_volume,
            union_volume_bound=float(config.union_volume_bound(len(events))),
            union_volume=BudgetStatusEnum.of(
                pruned_volume <= config.union_volume_bound(len(events)) if pruner is not None else None,
            ),
            initial_conductance=str(initial) if initial is not None else None,
            final_conductance=str(conductances[-1]) if conductances[-1] is not None else None,
            expansion_floor=str(config.expansion_floor),
            expansion=expansion,
            cert_ok=cert_flags[-1],
            certificate=BudgetStatusEnum.of(all(checked_certs) if checked_certs else None),
            excess=unless(ExcessBoundError, DemandBalanceError, SparseCutSearchError),
            level_volume=unless(VolumeBoundError),
            drain=unless(FullDrainError),
            reinit=unless(ReinitializationError),
            rebuild_gap=BudgetStatusEnum.of(gap_ok),
            deadline=unless(JobDeadlineError, checked=isinstance(pruner, WorstCasePruner)),
            swaps=pruner.swaps if isinstance(pruner, WorstCasePruner) else 0,
            failure=self.failure,
        )

    def write_outputs(self, config: PruneConfig, pruner: PrunerBase | None, summary: RunSummary) -> None:
        FsUtil.write_lines(self.out_dir / EVENTS_FILE, (r.model_dump_json() for r in self.events))

        batch_log = BatchLog(k=config.k, lam=config.lam)
        if pruner is not None:
            batch_log.records = list(pruner.batch_state.history)
            batch_log.gap_violations = list(pruner.batch_state.gap_violations)
        FsUtil.create_file(self.out_dir / BATCHES_FILE, batch_log.model_dump_json(indent=2), overwrite=True)

        frame = pd.DataFrame([summary.model_dump(mode="json")], columns=SUMMARY_COLUMNS)
        FsUtil.create_file(self.out_dir / SUMMARY_FILE, frame.to_csv(index=False), overwrite=True)


def run_experiment(experiment: Experiment, out_dir: Path) -> RunSummary:
    return ExperimentRunner(experiment, out_dir).run()
