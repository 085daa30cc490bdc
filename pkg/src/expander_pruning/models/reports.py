# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

from fractions import Fraction

from pydantic import BaseModel, Field


class CertificateReport(BaseModel):
    """Outcome of a certificate check, with one message per violated condition."""

    valid: bool
    violations: list[str] = Field(default_factory=list)

    @classmethod
    def from_violations(cls, violations: list[str]) -> "CertificateReport":
        return cls(valid=not violations, violations=violations)


class LevelReport(BaseModel):
    """Per-level record of a batch pruning run."""

    level: int
    removed_edges: int = Field(description="Edges removed at this level (batch, forced prunes and their boundary).")
    excess_before: int = Field(description="Total excess after the demand update, before the flow.")
    excess_after: int = Field(description="Total excess after the local flow.")
    excess_bound: Fraction
    excess_ok: bool
    cut_radius: int | None = Field(default=None, description="Ball radius of the sparse cut, None if none was cut.")
    pruned: list[int] = Field(default_factory=list)
    pruned_volume: int = 0
    volume_bound: Fraction
    volume_ok: bool
    ops: int = 0
