# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Instrumented operation counting and resumable step tasks.

Long computations are written as generators that yield the number of elementary operations they just performed
and return their result. They can be driven to completion synchronously or a bounded number of operations at a
time by a StepTask.
"""

from collections.abc import Generator
from typing import Generic, TypeVar

T = TypeVar("T")

Steps = Generator[int, None, T]


class OpCounter:
    """Counter of elementary operations (arc scans, augment steps, tree operations)."""

    def __init__(self) -> None:
        self.total = 0

    def add(self, count: int = 1) -> None:
        self.total += count


def run_to_completion(steps: Steps[T]) -> T:
    """Drive a step generator until it returns, discarding the per-step counts."""
    while True:
        try:
            next(steps)
        except StopIteration as stop:
            return stop.value  # type: ignore[no-any-return]


class StepTask(Generic[T]):
    """A resumable computation that consumes a bounded number of operations per call to step()."""

    def __init__(self, steps: Steps[T], estimated_ops: int) -> None:
        self._steps = steps
        self.estimated_ops = max(1, estimated_ops)
        self.spent = 0
        self.done = False
        self._result: T | None = None

    def step(self, budget: int) -> int:
        """Run until at least `budget` operations were spent or the computation finished.

        Returns:
            Operations spent in this call
        """
        spent_now = 0
        while not self.done and spent_now < budget:
            try:
                spent_now += next(self._steps)
            except StopIteration as stop:
                self.done = True
                self._result = stop.value
        self.spent += spent_now
        return spent_now

    def finish(self) -> int:
        """Run the remaining work inline."""
        spent_now = 0
        while not self.done:
            spent_now += self.step(1 << 30)
        return spent_now

    @property
    def result(self) -> T:
        if not self.done:
            raise RuntimeError("Step task has not finished")
        return self._result  # type: ignore[return-value]
