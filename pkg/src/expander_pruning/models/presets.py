# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

from enum import Enum
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field

from expander_pruning.common.exceptions import ExperimentError


class PresetNameEnum(str, Enum):
    PAPER = "paper"
    DESK = "desk"


class PrunePreset(BaseModel):
    """Algorithm constants.

    The paper preset carries the asymptotic constants. The desk preset shrinks the round count, the sparse-cut
    denominator, the drain, the certificate capacities and the deletion budget so that every branch of every
    algorithm runs on graphs with at most a few dozen vertices. Sources, sinks and excess bounds are the same in
    both presets. Certificate flows use the unit σ = 1 at desk scale; their sources, sinks and thresholds are
    all multiples of σ, so only the capacity scaling changes what they can route.
    """

    model_config = ConfigDict(frozen=True)

    name: PresetNameEnum
    dinitz_round_constant: int = Field(description="C in h = C·λ·log₂n·log₂log₂n/φ.", gt=0)
    sparsity_denominator: int = Field(description="Denominator of the sparse-cut loop condition.", gt=0)
    source_factor: int = Field(
        description="Source per removed edge, in units of 1/φ. Capacity is 4× and sinks are 2·d.",
        gt=0,
    )
    volume_constant: int = Field(description="Constant of the per-level pruned volume bound.", gt=0)
    drain_constant: int = Field(description="η = drain·λ·⌈log₂n⌉/φ for the amortized pruner.", gt=0)
    worstcase_drain_constant: int = Field(description="η for the worst-case pruner.", gt=0)
    cert_cap_scale: Fraction = Field(description="Multiplier on the certificate edge capacities.", gt=0)
    cert_unit_scale: int = Field(description="Flow unit σ of certificate flows, 0 means λ.", ge=0)
    budget_denominator: Fraction = Field(description="Deletion budget ⌊φ·2^(k−1)/(den·log₂^p n)⌋ denominator.", gt=0)
    budget_log_power: int = Field(description="Deletion budget log power p.", ge=0)
    recourse_constant: Fraction = Field(default=Fraction(1), gt=0)
    work_constant: Fraction = Field(default=Fraction(1), gt=0)
    total_work_constant: Fraction = Field(default=Fraction(1), gt=0)
    expansion_constant: Fraction = Field(default=Fraction(1), gt=0)
    union_volume_constant: Fraction = Field(default=Fraction(1), gt=0)
    backtrack_source_offset: int = Field(
        default=1,
        description="Backtracker sources are (θ + offset)·d.",
        ge=1,
    )


PAPER_PRESET = PrunePreset(
    name=PresetNameEnum.PAPER,
    dinitz_round_constant=10**8,
    sparsity_denominator=10**6,
    source_factor=8,
    volume_constant=6400,
    drain_constant=10**6,
    worstcase_drain_constant=10**7,
    cert_cap_scale=Fraction(1),
    cert_unit_scale=0,
    budget_denominator=Fraction(10**7),
    budget_log_power=6,
)

DESK_PRESET = PrunePreset(
    name=PresetNameEnum.DESK,
    dinitz_round_constant=4,
    sparsity_denominator=4,
    source_factor=8,
    volume_constant=6400,
    drain_constant=4,
    worstcase_drain_constant=4,
    cert_cap_scale=Fraction(1, 1000),
    cert_unit_scale=1,
    budget_denominator=Fraction(1),
    budget_log_power=0,
)

PRESETS: dict[str, PrunePreset] = {
    PresetNameEnum.PAPER.value: PAPER_PRESET,
    PresetNameEnum.DESK.value: DESK_PRESET,
}


def get_preset(name: str) -> PrunePreset:
    """Look up a preset by name.

    Raises:
        ExperimentError: If no preset has that name
    """
    preset = PRESETS.get(name)
    if preset is None:
        raise ExperimentError(f"Unknown preset {name!r}, expected one of {sorted(PRESETS)}")
    return preset
