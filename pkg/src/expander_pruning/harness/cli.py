# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Command line: `expander_pruning generate|run|verify`."""

import logging
from pathlib import Path

from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, CliApp, CliSubCommand, SettingsConfigDict

from expander_pruning.common.exceptions import ExperimentError, LogVerificationError
from expander_pruning.config import DIRS, ENV
from expander_pruning.harness.generators import describe, generate
from expander_pruning.harness.graph_io import write_graph
from expander_pruning.harness.runner import run_experiment
from expander_pruning.harness.verifier import verify_run
from expander_pruning.models.experiment import (
    AdversaryEnum,
    BarbellGraphSource,
    ChecksEnum,
    CompleteGraphSource,
    Experiment,
    FileGraphSource,
    GraphKindEnum,
    GraphSource,
    HypercubeGraphSource,
    PrunerEnum,
    RandomRegularGraphSource,
)
from expander_pruning.models.presets import PresetNameEnum

logger = logging.getLogger(__name__)


class GraphOptions(BaseModel):
    """Generator parameters shared by `generate` and `run`."""

    n: int | None = Field(default=None, description="Vertex count (complete, random_regular).")
    d: int | None = Field(default=None, description="Dimension (hypercube) or degree (random_regular).")
    a: int | None = Field(default=None, description="First clique size (barbell).")
    b: int | None = Field(default=None, description="Second clique size (barbell).")
    bridge_edges: int = Field(default=1, description="Path length between the cliques (barbell).")

    def source(self, kind: GraphKindEnum) -> GraphSource:
        """Generator source for the given kind.

        Raises:
            ExperimentError: If a parameter the kind needs is missing
        """
        required = {
            GraphKindEnum.COMPLETE: ["n"],
            GraphKindEnum.HYPERCUBE: ["d"],
            GraphKindEnum.RANDOM_REGULAR: ["n", "d"],
            GraphKindEnum.BARBELL: ["a", "b"],
        }.get(kind, [])
        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            raise ExperimentError(f"Graph kind {kind.value} needs --{' --'.join(missing)}")
        match kind:
            case GraphKindEnum.COMPLETE:
                return CompleteGraphSource(n=self.n)
            case GraphKindEnum.HYPERCUBE:
                return HypercubeGraphSource(d=self.d)
            case GraphKindEnum.RANDOM_REGULAR:
                return RandomRegularGraphSource(n=self.n, d=self.d)
            case GraphKindEnum.BARBELL:
                return BarbellGraphSource(a=self.a, b=self.b, bridge_edges=self.bridge_edges)
        raise ExperimentError(f"Graph kind {kind.value} cannot be generated")


class GenerateCommand(GraphOptions):
    """Write a generated graph file."""

    kind: GraphKindEnum
    seed: int = 0
    out: Path | None = Field(default=None, description="Graph file to write.")

    def cli_cmd(self) -> None:
        source = self.source(self.kind)
        graph = generate(source, self.seed)
        path = self.out or DIRS.EP_GRAPHS_DIR / f"{describe(source)}-seed{self.seed}.txt"
        write_graph(graph, path)
        logger.info(f"Wrote {describe(source)} with {graph.n} vertices and {graph.m} edges to {path}")


class RunCommand(GraphOptions):
    """Run a deletion experiment."""

    graph: Path | None = Field(default=None, description="Graph file to run on.")
    generate: GraphKindEnum | None = Field(default=None, description="Generate the graph instead of reading it.")
    phi: str = Field(description="Conductance of the input graph as NUM/DEN.")
    preset: PresetNameEnum = PresetNameEnum(ENV.EP_DEFAULT_PRESET)
    adversary: AdversaryEnum = AdversaryEnum.RANDOM
    seed: int = 0
    deletions: int = 0
    pruner: PrunerEnum = PrunerEnum.WORSTCASE
    checks: ChecksEnum = ChecksEnum.CERT_EVERY_STEP
    out: Path | None = Field(default=None, description="Output directory.")

    def experiment(self) -> Experiment:
        """The experiment these options describe.

        Raises:
            ExperimentError: Unless exactly one of --graph and --generate is given
        """
        if (self.graph is None) == (self.generate is None):
            raise ExperimentError("Give exactly one of --graph and --generate")
        source = FileGraphSource(path=self.graph) if self.graph is not None else self.source(self.generate)
        return Experiment(
            graph=source,
            phi=self.phi,
            preset=self.preset,
            adversary=self.adversary,
            seed=self.seed,
            max_deletions=self.deletions,
            pruner=self.pruner,
            checks=self.checks,
        )

    def cli_cmd(self) -> None:
        experiment = self.experiment()
        out = self.out or DIRS.EP_OUTPUT_DIR / f"{describe(experiment.graph)}-{self.pruner.value}-seed{self.seed}"
        summary = run_experiment(experiment, out)
        if summary.failure is not None:
            raise SystemExit(1)


class VerifyCommand(BaseModel):
    """Replay a run directory and check its log."""

    log: Path = Field(description="Run directory holding events.jsonl.")
    graph: Path | None = Field(default=None, description="Graph file, the run's own copy by default.")

    def cli_cmd(self) -> None:
        report = verify_run(self.log, self.graph)
        try:
            report.raise_for_failures()
        except LogVerificationError as e:
            logger.error(f"Verification failed: {e}")
            raise SystemExit(1) from e
        logger.info(f"Verification passed for {report.events} events")


class ExpanderPruningCli(BaseSettings):
    """Decremental expander pruning experiments."""

    model_config = SettingsConfigDict(cli_prog_name="expander_pruning", cli_kebab_case=True, cli_implicit_flags=True)

    generate: CliSubCommand[GenerateCommand]
    run: CliSubCommand[RunCommand]
    verify: CliSubCommand[VerifyCommand]

    def cli_cmd(self) -> None:
        CliApp.run_subcommand(self)


def run_cli(args: list[str] | None = None) -> None:
    """Parse the arguments (sys.argv by default) and run the chosen sub-command."""
    CliApp.run(ExpanderPruningCli, cli_args=args)
