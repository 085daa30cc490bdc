# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

from fractions import Fraction

from pydantic import BaseModel, Field


class BatchRecord(BaseModel):
    """Batch sizes after one processed deletion."""

    t: int = Field(description="1-based index of the deletion.")
    edge: int
    rebuild_level: int
    sizes: list[int] = Field(description="|B_1|..|B_λ| after the reshuffle.")


class PruneDelta(BaseModel):
    """What one deletion changed, and which claims held while processing it."""

    pruned: list[int] = Field(default_factory=list, description="Vertices newly added to S_0, ascending.")
    op_count: int = 0
    rebuild_level: int | None = None
    recourse_ok: bool = True
    work_ok: bool = True
    active_jobs: int | None = None
    steps_spent: int | None = None


class EventRecord(BaseModel):
    """One line of events.jsonl."""

    t: int
    deleted_edge: int
    endpoints: tuple[int, int]
    rebuild_level: int | None = None
    pruned: list[int] = Field(default_factory=list)
    op_count: int
    cert_ok: bool | None = None
    conductance: Fraction | None = None
    recourse_ok: bool = True
    work_ok: bool = True
    active_jobs: int | None = None
    steps_spent: int | None = None


class BatchLog(BaseModel):
    """Contents of batches.json."""

    k: int
    lam: int
    records: list[BatchRecord] = Field(default_factory=list)
    gap_violations: list[str] = Field(default_factory=list)
