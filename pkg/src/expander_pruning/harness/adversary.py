# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Deletion sequences. Each adversary draws from its own numpy generator seeded by the experiment."""

import logging
from abc import ABC, abstractmethod

import numpy as np

from expander_pruning.graph.dyngraph import DecGraph, EdgeId, VertexId
from expander_pruning.models.experiment import AdversaryEnum

logger = logging.getLogger(__name__)


class Adversary(ABC):
    """Chooses the next live edge to delete, given the graph and the pruned set so far."""

    def __init__(self, seed: int) -> None:
        self.rng = np.random.default_rng(seed)

    def random_edge(self, graph: DecGraph) -> EdgeId | None:
        live = list(graph.live_edges())
        if not live:
            return None
        return live[int(self.rng.integers(len(live)))]

    @abstractmethod
    def next_edge(self, graph: DecGraph, pruned: set[VertexId]) -> EdgeId | None:
        """The next edge to delete, None when the graph has no live edge left."""


class RandomAdversary(Adversary):
    def next_edge(self, graph: DecGraph, pruned: set[VertexId]) -> EdgeId | None:
        return self.random_edge(graph)


class BoundaryAdversary(Adversary):
    """Deletes edges on the boundary of the pruned set, or uniformly random edges while it has none."""

    def next_edge(self, graph: DecGraph, pruned: set[VertexId]) -> EdgeId | None:
        boundary = sorted(graph.boundary(pruned))
        if not boundary:
            return self.random_edge(graph)
        return boundary[int(self.rng.integers(len(boundary)))]


class VertexDrainAdversary(Adversary):
    """Deletes every edge of one random start vertex, then the edges of its neighbours, then random edges."""

    def __init__(self, seed: int) -> None:
        super().__init__(seed)
        self.targets: list[VertexId] | None = None

    def _targets(self, graph: DecGraph) -> list[VertexId]:
        if self.targets is None:
            start = int(self.rng.integers(graph.n))
            neighbours = sorted({graph.other(e, start) for e in graph.adjacency[start]})
            self.targets = [start, *neighbours]
            logger.debug(f"Draining vertex {start}, then its {len(neighbours)} neighbours")
        return self.targets

    def next_edge(self, graph: DecGraph, pruned: set[VertexId]) -> EdgeId | None:
        for v in self._targets(graph):
            live = graph.incident_live(v)
            if live:
                return min(live)
        return self.random_edge(graph)


ADVERSARIES: dict[AdversaryEnum, type[Adversary]] = {
    AdversaryEnum.RANDOM: RandomAdversary,
    AdversaryEnum.BOUNDARY_TARGETED: BoundaryAdversary,
    AdversaryEnum.VERTEX_DRAIN: VertexDrainAdversary,
}


def make_adversary(kind: AdversaryEnum, seed: int) -> Adversary:
    return ADVERSARIES[kind](seed)
