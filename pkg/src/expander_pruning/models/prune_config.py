# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field

from expander_pruning.common.math_util import MathUtil
from expander_pruning.models.presets import PrunePreset


class PruneConfig(BaseModel):
    """Parameters derived from the initial graph, φ and a preset.

    All bounds are exact rationals in scaled flow units; they are rounded up only where they become capacities,
    sources or counts.
    """

    model_config = ConfigDict(frozen=True)

    phi: Fraction = Field(gt=0, le=1)
    n: int = Field(ge=0)
    m: int = Field(ge=0)
    k: int = Field(description="Level count ⌈log₂ m⌉, at least 1.")
    lam: int = Field(description="Level total k + ⌈log₂ φ⁻¹⌉ + 1.")
    log_n: int
    loglog_n: int
    scale: int = Field(description="Flow unit σ of batch pruning flows.", gt=0)
    cert_scale: int = Field(description="Flow unit σ of certificate flows.", gt=0)
    preset: PrunePreset

    @classmethod
    def build(cls, n: int, m: int, phi: Fraction, preset: PrunePreset) -> "PruneConfig":
        k = MathUtil.ceil_log2(max(m, 2))
        lam = k + MathUtil.ceil_log2(1 / phi, floor=0) + 1
        log_n, loglog_n = MathUtil.log_terms(n)
        return cls(
            phi=phi,
            n=n,
            m=m,
            k=k,
            lam=lam,
            log_n=log_n,
            loglog_n=loglog_n,
            scale=lam,
            cert_scale=preset.cert_unit_scale or lam,
            preset=preset,
        )

    @property
    def rounds(self) -> int:
        """Dinitz round limit h of batch pruning."""
        return MathUtil.ceil_div(self.preset.dinitz_round_constant * self.lam * self.log_n * self.loglog_n / self.phi)

    @property
    def cert_rounds(self) -> int:
        """Dinitz round limit of certificate and backtracker flows."""
        return MathUtil.ceil_div(200 * self.log_n / self.phi)

    @property
    def source_unit(self) -> int:
        """Source added at a surviving endpoint per removed edge."""
        return MathUtil.ceil_div(self.preset.source_factor * self.scale / self.phi)

    @property
    def sparsity(self) -> Fraction:
        return self.phi / (self.preset.sparsity_denominator * self.lam * self.log_n)

    def level_excess_bound(self, level: int) -> Fraction:
        return Fraction(2) ** (self.k - level) * self.scale / self.phi

    def level_volume_bound(self, level: int) -> Fraction:
        return self.preset.volume_constant * self.lam * self.log_n * self.level_excess_bound(level)

    @property
    def deletion_budget(self) -> int:
        """Deletions the pruner accepts, never above the 2^k − 2 the batches can hold."""
        numerator = self.phi * 2 ** (self.k - 1)
        denominator = self.preset.budget_denominator * self.log_n**self.preset.budget_log_power
        return min(int(numerator // denominator), 2**self.k - 2, self.m)

    @property
    def drain(self) -> int:
        return MathUtil.ceil_div(self.preset.drain_constant * self.lam * self.log_n / self.phi)

    @property
    def worstcase_drain(self) -> int:
        return MathUtil.ceil_div(self.preset.worstcase_drain_constant * self.lam * self.log_n / self.phi)

    @property
    def cert_capacity(self) -> int:
        """Per-layer edge capacity ⌈8000k³σ/φ·scale⌉ of certificate flows."""
        return MathUtil.ceil_div(8000 * self.k**3 * self.cert_scale * self.preset.cert_cap_scale / self.phi)

    @property
    def cert_recourse_bound(self) -> Fraction:
        """Vertices one certificate edge removal may prune."""
        return 8000 * self.k**4 * self.cert_scale * self.preset.cert_cap_scale / self.phi

    @property
    def recourse_bound(self) -> Fraction:
        return (
            self.preset.recourse_constant * self.k**4 * self.lam * self.log_n * self.scale / (self.phi * self.phi)
        )

    @property
    def work_bound(self) -> Fraction:
        return self.preset.work_constant * self.scale * self.k**4 * self.lam * self.log_n / (self.phi * self.phi)

    def total_work_bound(self, deletions: int) -> Fraction:
        return (
            self.preset.total_work_constant
            * deletions
            * self.scale
            * self.lam**2
            * self.log_n
            / (self.phi * self.phi)
        )

    def union_volume_bound(self, deletions: int) -> Fraction:
        return self.preset.union_volume_constant * deletions * self.log_n**3 * self.scale / self.phi

    @property
    def expansion_floor(self) -> Fraction:
        """Conductance the remainder keeps, φ/(c·log₂⁴ m)."""
        return self.phi / (self.preset.expansion_constant * self.k**4)

    def backtrack_capacity(self, theta: int) -> int:
        """Edge capacity ⌈400θσ/φ⌉ of a flow backtracker. The certificate capacity scaling does not apply."""
        return MathUtil.ceil_div(400 * theta * self.cert_scale / self.phi)

    def worstcase_theta(self, level: int) -> int:
        """Source multiplier 10(l·k + k) + l + 1 of every backtracker of a level-l worst-case flow."""
        return 10 * (level * self.k + self.k) + level + 1

    def job_window(self, level: int) -> int:
        """Deletions a level-l background rebuild is spread over."""
        return 2 ** max(self.k - level - 2, 0)

    def job_work_estimate(self, level: int) -> int:
        """Estimated operations of a level-l background rebuild, k⁴·2^(k−l)·σ/φ²."""
        return MathUtil.ceil_div(self.k**4 * 2 ** (self.k - level) * self.cert_scale / (self.phi * self.phi))
