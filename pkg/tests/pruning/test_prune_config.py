# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

from fractions import Fraction

import pytest
from pydantic import ValidationError

from expander_pruning.common.exceptions import ExperimentError
from expander_pruning.models.presets import DESK_PRESET, PAPER_PRESET, PresetNameEnum, get_preset
from expander_pruning.models.prune_config import PruneConfig


def test_desk_parameters_for_k8(k8_config: PruneConfig) -> None:
    """Test the derived parameters of K8 with φ = 1/2.

    Verifies that:
    - k = ⌈log₂ 28⌉ and λ = k + ⌈log₂ 2⌉ + 1
    - The deletion budget is ⌊φ·2^(k−1)⌋
    - The batch flow unit is λ and the source unit is ⌈8σ/φ⌉
    """
    assert (k8_config.k, k8_config.lam) == (5, 7)
    assert (k8_config.log_n, k8_config.loglog_n) == (3, 2)
    assert k8_config.scale == 7
    assert k8_config.cert_scale == 1
    assert k8_config.deletion_budget == 8
    assert k8_config.source_unit == 112


def test_desk_parameters_for_k16(k16_config: PruneConfig) -> None:
    """Test the derived parameters of K16 with φ = 1/2.

    Verifies that:
    - Sources, excess bounds and capacities match the hand-computed values
    - The certificate capacity carries the 1/1000 scaling and the backtracker capacity none
    - The recourse bound is far above n
    """
    assert (k16_config.k, k16_config.lam, k16_config.scale) == (7, 9, 9)
    assert k16_config.deletion_budget == 32
    assert k16_config.source_unit == 144
    assert k16_config.rounds == 576
    assert k16_config.drain == 288
    assert k16_config.level_excess_bound(6) == 36
    assert k16_config.cert_capacity == 5488
    assert k16_config.cert_recourse_bound == 38416
    assert k16_config.backtrack_capacity(1) == 800
    assert k16_config.expansion_floor == Fraction(1, 4802)
    assert k16_config.recourse_bound > k16_config.n


def test_desk_parameters_for_q4(q4_config: PruneConfig) -> None:
    assert (q4_config.k, q4_config.lam) == (5, 8)
    assert q4_config.deletion_budget == 4
    assert q4_config.source_unit == 256
    assert q4_config.level_excess_bound(3) == Fraction(4 * 8 * 4)
    assert q4_config.expansion_floor == Fraction(1, 4 * 625)


def test_presets_share_sources_and_excess_bounds() -> None:
    assert DESK_PRESET.source_factor == PAPER_PRESET.source_factor == 8
    assert DESK_PRESET.volume_constant == PAPER_PRESET.volume_constant
    assert DESK_PRESET.budget_denominator == 1
    assert DESK_PRESET.budget_log_power == 0
    assert DESK_PRESET.cert_cap_scale == Fraction(1, 1000)


def test_paper_budget_is_zero_on_small_graphs() -> None:
    config = PruneConfig.build(8, 28, Fraction(1, 2), PAPER_PRESET)
    assert config.deletion_budget == 0
    assert config.cert_scale == config.lam


def test_budget_never_exceeds_batch_capacity() -> None:
    """Test that the budget stays below 2^k − 1 even with a generous preset."""
    generous = DESK_PRESET.model_copy(update={"budget_denominator": Fraction(1, 1000)})
    config = PruneConfig.build(64, 1024, Fraction(1, 2), generous)
    assert config.deletion_budget == 2**config.k - 2


def test_phi_is_validated() -> None:
    with pytest.raises(ValidationError):
        PruneConfig.build(8, 28, Fraction(3, 2), DESK_PRESET)


def test_get_preset() -> None:
    assert get_preset("desk") is DESK_PRESET
    assert get_preset(PresetNameEnum.PAPER.value) is PAPER_PRESET
    with pytest.raises(ExperimentError):
        get_preset("nope")
