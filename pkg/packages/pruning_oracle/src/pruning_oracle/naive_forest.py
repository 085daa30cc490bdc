# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Rooted forest with parent pointers and explicit edge values, walked path by path."""

from pruning_oracle.exceptions import ForestError

ROOT = -1


class NaiveForest:
    """Every non-root vertex v stores its parent and the value of the edge (parent, v)."""

    def __init__(self, n: int) -> None:
        self.parent = [ROOT] * n
        self.values = [0] * n

    def path(self, u: int) -> list[int]:
        """Non-root vertices from u up to the root, u first."""
        nodes = []
        while self.parent[u] != ROOT:
            nodes.append(u)
            u = self.parent[u]
        return nodes

    def find_root(self, u: int) -> int:
        while self.parent[u] != ROOT:
            u = self.parent[u]
        return u

    def parent_of(self, v: int) -> int:
        return self.parent[v]

    def link(self, child: int, parent: int, value: int) -> None:
        if self.parent[child] != ROOT:
            raise ForestError(f"Vertex {child} already has parent {self.parent[child]}")
        if self.find_root(parent) == child:
            raise ForestError(f"Linking {child} under {parent} would close a cycle")
        self.parent[child] = parent
        self.values[child] = value

    def cut(self, child: int) -> int:
        """Detach child from its parent and return the edge's value."""
        if self.parent[child] == ROOT:
            raise ForestError(f"Vertex {child} is a root")
        self.parent[child] = ROOT
        return self.values[child]

    def find_min(self, u: int) -> int:
        """Child endpoint of the minimum edge on the path from u to its root, the one closest to u on ties."""
        nodes = self.path(u)
        if not nodes:
            raise ForestError(f"Vertex {u} is a root")
        best = nodes[0]
        for v in nodes[1:]:
            if self.values[v] < self.values[best]:
                best = v
        return best

    def update_flow(self, u: int, delta: int) -> None:
        nodes = self.path(u)
        if any(self.values[v] + delta < 0 for v in nodes):
            raise ForestError(f"Path update {delta} at {u} would make an edge negative")
        for v in nodes:
            self.values[v] += delta

    def value(self, child: int) -> int:
        return self.values[child]
