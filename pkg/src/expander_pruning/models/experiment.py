# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Annotated, Any, Literal

from pydantic import BaseModel, Field, field_validator

from expander_pruning.common.math_util import MathUtil
from expander_pruning.models.presets import PresetNameEnum


class GraphKindEnum(str, Enum):
    COMPLETE = "complete"
    HYPERCUBE = "hypercube"
    RANDOM_REGULAR = "random_regular"
    BARBELL = "barbell"
    FILE = "file"


class AdversaryEnum(str, Enum):
    """How the next deleted edge is chosen."""

    RANDOM = "random"
    BOUNDARY_TARGETED = "boundary_targeted"
    VERTEX_DRAIN = "vertex_drain"


class PrunerEnum(str, Enum):
    AMORTIZED = "amortized"
    WORSTCASE = "worstcase"


class ChecksEnum(str, Enum):
    """Checks run after every deletion."""

    CERT_EVERY_STEP = "cert_every_step"
    ORACLE_SMALL = "oracle_small"
    NONE = "none"


class BudgetStatusEnum(str, Enum):
    RESPECTED = "respected"
    VIOLATED = "violated"
    NOT_CHECKED = "not_checked"

    @classmethod
    def of(cls, ok: bool | None) -> "BudgetStatusEnum":
        if ok is None:
            return cls.NOT_CHECKED
        return cls.RESPECTED if ok else cls.VIOLATED

    @classmethod
    def unless(
        cls,
        failure: BaseException | None,
        errors: tuple[type[BaseException], ...],
        checked: bool,
    ) -> "BudgetStatusEnum":
        """Violated if the run stopped on one of `errors`, otherwise respected when the property was checked."""
        if isinstance(failure, errors):
            return cls.VIOLATED
        return cls.of(True if checked else None)


class CompleteGraphSource(BaseModel):
    kind: Literal[GraphKindEnum.COMPLETE] = GraphKindEnum.COMPLETE
    n: int = Field(ge=2)


class HypercubeGraphSource(BaseModel):
    kind: Literal[GraphKindEnum.HYPERCUBE] = GraphKindEnum.HYPERCUBE
    d: int = Field(description="Dimension; the cube has 2^d vertices.", ge=1)


class RandomRegularGraphSource(BaseModel):
    kind: Literal[GraphKindEnum.RANDOM_REGULAR] = GraphKindEnum.RANDOM_REGULAR
    n: int = Field(ge=2)
    d: int = Field(ge=1)


class BarbellGraphSource(BaseModel):
    """Two cliques joined by a path."""

    kind: Literal[GraphKindEnum.BARBELL] = GraphKindEnum.BARBELL
    a: int = Field(description="Size of the first clique.", ge=2)
    b: int = Field(description="Size of the second clique.", ge=2)
    bridge_edges: int = Field(description="Edges on the path between the cliques.", ge=1)


class FileGraphSource(BaseModel):
    kind: Literal[GraphKindEnum.FILE] = GraphKindEnum.FILE
    path: Path


GraphSource = Annotated[
    CompleteGraphSource | HypercubeGraphSource | RandomRegularGraphSource | BarbellGraphSource | FileGraphSource,
    Field(discriminator="kind"),
]


class Experiment(BaseModel):
    """One deletion experiment. Every random choice is derived from `seed`."""

    graph: GraphSource
    phi: Fraction = Field(description="Conductance of the input graph, as an exact rational.")
    preset: PresetNameEnum = PresetNameEnum.DESK
    adversary: AdversaryEnum = AdversaryEnum.RANDOM
    seed: int = 0
    max_deletions: int = Field(default=0, ge=0)
    pruner: PrunerEnum = PrunerEnum.WORSTCASE
    checks: ChecksEnum = ChecksEnum.CERT_EVERY_STEP

    @field_validator("phi", mode="before")
    @classmethod
    def _parse_phi(cls, value: Any) -> Fraction:
        if isinstance(value, str | int | Fraction):
            parsed = MathUtil.parse_fraction(value)
            if parsed > 1:
                raise ValueError(f"φ must be at most 1, got {parsed}")
            return parsed
        raise ValueError(f"Expected φ as 'NUM/DEN', got {value!r}")


class RunSummary(BaseModel):
    """One row of summary.csv. Column order is `SUMMARY_COLUMNS`."""

    graph: str
    n: int
    m: int
    phi: str
    preset: str
    pruner: str
    adversary: str
    seed: int
    checks: str
    k: int
    lam: int
    deletion_budget: int
    deletions_requested: int
    deletions: int
    pruned_total: int
    remaining: int = Field(description="Live vertices outside S_0 at the end of the run.")
    max_recourse: int
    mean_recourse: float
    recourse_bound: float
    recourse_binding: bool = Field(description="Whether the recourse bound is below n, so that it can be exceeded.")
    recourse: BudgetStatusEnum
    max_op_count: int
    mean_op_count: float
    work_bound: float
    work: BudgetStatusEnum
    total_op_count: int
    total_work_bound: float
    total_work: BudgetStatusEnum
    pruned_volume: int
    union_volume_bound: float
    union_volume: BudgetStatusEnum
    initial_conductance: str | None
    final_conductance: str | None
    expansion_floor: str
    expansion: BudgetStatusEnum
    cert_ok: bool | None
    certificate: BudgetStatusEnum
    excess: BudgetStatusEnum
    level_volume: BudgetStatusEnum
    drain: BudgetStatusEnum
    reinit: BudgetStatusEnum
    rebuild_gap: BudgetStatusEnum
    deadline: BudgetStatusEnum
    swaps: int
    failure: str | None = Field(default=None, description="Name and message of the error that ended the run.")


SUMMARY_COLUMNS: list[str] = list(RunSummary.model_fields)
