# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Replay a recorded run and check its log against the claims it makes."""

import logging
from enum import Enum
from pathlib import Path

from pydantic import BaseModel, Field

from expander_pruning.common.exceptions import (
    BatchStateCorruptedError,
    ExpanderPruningError,
    LogVerificationError,
)
from expander_pruning.common.fs_util import FsUtil
from expander_pruning.harness.graph_io import read_graph
from expander_pruning.harness.runner import (
    BATCHES_FILE,
    EVENTS_FILE,
    EXPERIMENT_FILE,
    GRAPH_FILE,
    build_config,
    build_pruner,
    run_checks,
)
from expander_pruning.models.events import BatchLog, EventRecord
from expander_pruning.models.experiment import Experiment
from expander_pruning.models.prune_config import PruneConfig
from expander_pruning.pruning.batching import classify, half_size

logger = logging.getLogger(__name__)


class VerificationFailureEnum(str, Enum):
    MONOTONICITY = "monotonicity"
    RECOURSE_BUDGET = "recourse_budget"
    RECOURSE_MISMATCH = "recourse_mismatch"
    OP_COUNT_MISMATCH = "op_count_mismatch"
    REBUILD_LEVEL_MISMATCH = "rebuild_level_mismatch"
    BATCH_SIZE = "batch_size"
    REBUILD_GAP = "rebuild_gap"
    CERTIFICATE_MISMATCH = "certificate_mismatch"
    REPLAY_ERROR = "replay_error"


class VerificationFailure(BaseModel):
    name: VerificationFailureEnum
    t: int | None = Field(default=None, description="Deletion the failure was found at.")
    message: str


class VerificationReport(BaseModel):
    passed: bool
    events: int
    failures: list[VerificationFailure] = Field(default_factory=list)

    def raise_for_failures(self) -> None:
        """Raises LogVerificationError naming the first failure, if any."""
        if self.failures:
            first = self.failures[0]
            where = f" at deletion {first.t}" if first.t is not None else ""
            raise LogVerificationError(f"{first.name.value}{where}: {first.message}")


class LogVerifier:
    """Checks a run directory written by ExperimentRunner.

    Log checks need only the files: S_0 only grows, each record stays within the recourse budget, batch sizes are
    legal and no level below k − 1 is rebuilt twice within half its batch size. The replay then reruns the pruner
    on the logged deletions and compares pruned sets, op counts, rebuild levels and certificate flags.
    """

    def __init__(self, run_dir: Path, graph_path: Path | None = None) -> None:
        self.run_dir = run_dir
        self.graph_path = graph_path or run_dir / GRAPH_FILE
        self.failures: list[VerificationFailure] = []

    def _fail(self, name: VerificationFailureEnum, message: str, t: int | None = None) -> None:
        logger.warning(f"Verification failure {name.value} at {t}: {message}")
        self.failures.append(VerificationFailure(name=name, t=t, message=message))

    def load_events(self) -> list[EventRecord]:
        return [EventRecord.model_validate_json(line) for line in FsUtil.read_lines(self.run_dir / EVENTS_FILE)]

    def verify(self) -> VerificationReport:
        experiment = Experiment.model_validate_json(FsUtil.read_file(self.run_dir / EXPERIMENT_FILE))
        graph = read_graph(self.graph_path)
        events = self.load_events()
        batch_log = BatchLog.model_validate_json(FsUtil.read_file(self.run_dir / BATCHES_FILE))
        config = build_config(experiment, graph)

        self.check_monotone(events)
        self.check_recourse(events, config)
        self.check_batches(batch_log)
        self.replay(experiment, events, config)

        report = VerificationReport(passed=not self.failures, events=len(events), failures=self.failures)
        logger.info(f"Verified {len(events)} events: {'pass' if report.passed else f'{len(self.failures)} failures'}")
        return report

    def check_monotone(self, events: list[EventRecord]) -> None:
        seen: set[int] = set()
        for record in events:
            if record.pruned != sorted(set(record.pruned)):
                self._fail(VerificationFailureEnum.MONOTONICITY, "pruned vertices not strictly ascending", record.t)
            repeated = seen.intersection(record.pruned)
            if repeated:
                self._fail(
                    VerificationFailureEnum.MONOTONICITY,
                    f"vertices {sorted(repeated)} were already pruned",
                    record.t,
                )
            seen.update(record.pruned)

    def check_recourse(self, events: list[EventRecord], config: PruneConfig) -> None:
        for record in events:
            if len(record.pruned) > config.recourse_bound:
                self._fail(
                    VerificationFailureEnum.RECOURSE_BUDGET,
                    f"{len(record.pruned)} vertices pruned, budget {float(config.recourse_bound):.1f}",
                    record.t,
                )

    def check_batches(self, batch_log: BatchLog) -> None:
        k, lam = batch_log.k, batch_log.lam
        last: dict[int, int] = {}
        for record in batch_log.records:
            for level, size in enumerate(record.sizes, start=1):
                try:
                    classify(k, level, [0] * size)
                except BatchStateCorruptedError as e:
                    self._fail(VerificationFailureEnum.BATCH_SIZE, str(e), record.t)
            for level in range(record.rebuild_level, lam + 1):
                previous = last.get(level)
                if level < k - 1 and previous is not None and record.t - previous < half_size(k, level):
                    self._fail(
                        VerificationFailureEnum.REBUILD_GAP,
                        f"level {level} rebuilt at deletions {previous} and {record.t}",
                        record.t,
                    )
                last[level] = record.t

    def replay(self, experiment: Experiment, events: list[EventRecord], config: PruneConfig) -> None:
        graph = read_graph(self.graph_path)
        try:
            pruner = build_pruner(experiment, graph, config)
            run_checks(experiment, pruner)
            for record in events:
                delta = pruner.process_deletion(record.deleted_edge)
                cert_ok, _ = run_checks(experiment, pruner)
                if delta.pruned != record.pruned:
                    self._fail(
                        VerificationFailureEnum.RECOURSE_MISMATCH,
                        f"logged pruned {record.pruned}, replay pruned {delta.pruned}",
                        record.t,
                    )
                if delta.op_count != record.op_count:
                    self._fail(
                        VerificationFailureEnum.OP_COUNT_MISMATCH,
                        f"logged {record.op_count} ops, replay counted {delta.op_count}",
                        record.t,
                    )
                if delta.rebuild_level != record.rebuild_level:
                    self._fail(
                        VerificationFailureEnum.REBUILD_LEVEL_MISMATCH,
                        f"logged level {record.rebuild_level}, replay rebuilt {delta.rebuild_level}",
                        record.t,
                    )
                if record.cert_ok is not None and cert_ok != record.cert_ok:
                    self._fail(
                        VerificationFailureEnum.CERTIFICATE_MISMATCH,
                        f"logged cert_ok={record.cert_ok}, replay found {cert_ok}",
                        record.t,
                    )
        except ExpanderPruningError as e:
            self._fail(VerificationFailureEnum.REPLAY_ERROR, f"{type(e).__name__}: {e}")


def verify_run(run_dir: Path, graph_path: Path | None = None) -> VerificationReport:
    return LogVerifier(run_dir, graph_path).verify()
