# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Deletion batches B_1..B_λ with sizes in {0, 2^(k−i−1), 2^(k−i)} and the forced-prune sets A_1..A_λ."""

import logging
from enum import Enum

from expander_pruning.common.exceptions import BatchStateCorruptedError, DeletionBudgetExceededError
from expander_pruning.graph.dyngraph import EdgeId, VertexId
from expander_pruning.models.events import BatchRecord

logger = logging.getLogger(__name__)


class BatchFullness(str, Enum):
    EMPTY = "empty"
    HALF_FULL = "half_full"
    FULL = "full"


def full_size(k: int, level: int) -> int:
    """2^(k−level), or 0 where that is not an integer."""
    return 2 ** (k - level) if level <= k else 0


def half_size(k: int, level: int) -> int:
    """2^(k−level−1), or 0 where that is not an integer."""
    return 2 ** (k - level - 1) if level < k else 0


def classify(k: int, level: int, batch: list[EdgeId]) -> BatchFullness:
    """Classify a batch by its size.

    Raises:
        BatchStateCorruptedError: If the size is none of 0, 2^(k−level−1), 2^(k−level)
    """
    size = len(batch)
    if size == 0:
        return BatchFullness.EMPTY
    if size == full_size(k, level):
        return BatchFullness.FULL
    if size == half_size(k, level):
        return BatchFullness.HALF_FULL
    raise BatchStateCorruptedError(
        f"Batch {level} holds {size} edges, expected 0, {half_size(k, level)} or {full_size(k, level)}",
    )


class BatchState:
    """Batches B_i, forced-prune sets A_i and the latest proposals S_i, for levels 1..λ.

    Index λ + 1 is an always-empty sentinel; index 0 is unused.
    """

    def __init__(self, k: int, lam: int, deletion_budget: int) -> None:
        self.k = k
        self.lam = lam
        self.deletion_budget = deletion_budget
        self.B: list[list[EdgeId]] = [[] for _ in range(lam + 2)]
        self.A: list[set[VertexId]] = [set() for _ in range(lam + 2)]
        self.S: list[set[VertexId]] = [set() for _ in range(lam + 2)]
        self.deletions_processed = 0
        self.last_affected: list[int | None] = [None] * (lam + 2)
        self.gap_violations: list[str] = []
        self.history: list[BatchRecord] = []

    def classify(self, level: int) -> BatchFullness:
        return classify(self.k, level, self.B[level])

    def sizes(self) -> list[int]:
        return [len(self.B[i]) for i in range(1, self.lam + 1)]

    def rebuild_index(self) -> int:
        """Largest i < k whose batch is empty or half-full.

        Raises:
            BatchStateCorruptedError: If every batch below k is full
        """
        for i in range(self.k - 1, 0, -1):
            if self.classify(i) is not BatchFullness.FULL:
                return i
        raise BatchStateCorruptedError("No batch below level k is empty or half-full")

    def insert_deletion(self, e: EdgeId) -> int:
        """Store a deletion and reshuffle the batches above the rebuild index.

        Returns:
            The rebuild index i; the proposals S_j for j ≥ i are cleared until `record_proposals` is called

        Raises:
            DeletionBudgetExceededError: If the deletion budget is exhausted
            BatchStateCorruptedError: If no rebuild index exists or a batch size becomes illegal
        """
        if self.deletions_processed >= self.deletion_budget:
            raise DeletionBudgetExceededError(
                f"Deletion budget of {self.deletion_budget} is exhausted",
            )

        self.B[self.k].append(e)
        i = self.rebuild_index()
        self.B[i] = self.B[i] + self.B[i + 1]
        self.A[i] = self.S[i] | self.A[i] | self.S[i + 1] | self.A[i + 1]
        for j in range(i + 1, self.lam + 1):
            self.B[j] = self.B[j + 1]
            self.A[j] = self.S[j + 1] | self.A[j + 1]
        for j in range(i, self.lam + 2):
            self.S[j] = set()
        self.B[self.lam + 1] = []
        self.A[self.lam + 1] = set()

        self.deletions_processed += 1
        self._check_after_update(i)
        self.history.append(
            BatchRecord(t=self.deletions_processed, edge=e, rebuild_level=i, sizes=self.sizes()),
        )
        logger.debug(f"Deletion {self.deletions_processed} (edge {e}) rebuilds from level {i}: {self.sizes()}")
        return i

    def _check_after_update(self, i: int) -> None:
        for level in range(1, self.lam + 1):
            self.classify(level)
        for level in range(self.k, self.lam + 1):
            if self.B[level]:
                raise BatchStateCorruptedError(f"Batch {level} ≥ k holds {len(self.B[level])} edges after an update")
        for level in range(i + 1, self.k):
            if self.classify(level) is not BatchFullness.HALF_FULL:
                raise BatchStateCorruptedError(f"Batch {level} above rebuild index {i} is not half-full")

        t = self.deletions_processed
        for level in range(i, self.lam + 1):
            previous = self.last_affected[level]
            if level < self.k - 1 and previous is not None and t - previous < half_size(self.k, level):
                message = (
                    f"Level {level} rebuilt at deletions {previous} and {t}, "
                    f"gap below {half_size(self.k, level)}"
                )
                logger.error(message)
                self.gap_violations.append(message)
            self.last_affected[level] = t

    def record_proposals(self, start: int, proposals: dict[int, set[VertexId]]) -> None:
        """Store the proposals S_j, j ≥ start, of a finished batch pruning run."""
        for j in range(start, self.lam + 1):
            self.S[j] = set(proposals.get(j, set()))

    def pruned_union(self) -> set[VertexId]:
        """⋃_i (A_i ∪ S_i)."""
        union: set[VertexId] = set()
        for j in range(1, self.lam + 1):
            union |= self.A[j] | self.S[j]
        return union
