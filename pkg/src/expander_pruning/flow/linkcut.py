# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Link-cut trees over the arcs of a host graph.

Every tree edge is an arc (tail, head) and its value is stored at the head's splay node, so a path from a root to u
is represented by the nodes on it minus the root. Path additions are lazy; a tree edge's value is written back to
the shared flow list when the edge is cut or when the forest is flushed.
"""

import logging

from expander_pruning.common.exceptions import ForestViolationError, InfeasibleFlowError, TreeRootError
from expander_pruning.common.steps import OpCounter
from expander_pruning.graph.dyngraph import ArcId, DecGraph, VertexId

logger = logging.getLogger(__name__)

NIL = -1


class DynForest:
    """Rooted forest with path-minimum queries (ties toward the query vertex) and path additions."""

    def __init__(self, graph: DecGraph, flow: list[int], counter: OpCounter | None = None) -> None:
        n = graph.n
        self.graph = graph
        self.flow = flow  # aliased with the owning FlowState
        self.counter = counter
        self.in_arc = [NIL] * n
        self._left = [NIL] * n
        self._right = [NIL] * n
        self._parent = [NIL] * n  # splay parent or path-parent
        self._value = [0] * n
        self._lazy = [0] * n
        self._min = [0] * n
        self._argmin = [NIL] * n  # deepest node holding the subtree minimum, NIL if no tree edge below

    @classmethod
    def initialize(cls, graph: DecGraph, flow: list[int], counter: OpCounter | None = None) -> "DynForest":
        """Empty forest whose tree edges read their initial values from `flow`."""
        return cls(graph, flow, counter)

    def _tick(self, count: int = 1) -> None:
        if self.counter is not None:
            self.counter.add(count)

    def _is_splay_root(self, x: int) -> bool:
        p = self._parent[x]
        return p == NIL or (self._left[p] != x and self._right[p] != x)

    def _apply(self, x: int, delta: int) -> None:
        if self.in_arc[x] != NIL:
            self._value[x] += delta
        if self._argmin[x] != NIL:
            self._min[x] += delta
        self._lazy[x] += delta

    def _push(self, x: int) -> None:
        if self._lazy[x]:
            for child in (self._left[x], self._right[x]):
                if child != NIL:
                    self._apply(child, self._lazy[x])
            self._lazy[x] = 0

    def _pull(self, x: int) -> None:
        best_pos = x if self.in_arc[x] != NIL else NIL
        best = self._value[x]
        left = self._left[x]
        if left != NIL and self._argmin[left] != NIL and (best_pos == NIL or self._min[left] < best):
            best_pos, best = self._argmin[left], self._min[left]
        right = self._right[x]
        if right != NIL and self._argmin[right] != NIL and (best_pos == NIL or self._min[right] <= best):
            best_pos, best = self._argmin[right], self._min[right]
        self._argmin[x] = best_pos
        self._min[x] = best

    def _rotate(self, x: int) -> None:
        y = self._parent[x]
        z = self._parent[y]
        if self._left[y] == x:
            b = self._right[x]
            self._left[y] = b
            self._right[x] = y
        else:
            b = self._left[x]
            self._right[y] = b
            self._left[x] = y
        if b != NIL:
            self._parent[b] = y
        if z != NIL:
            if self._left[z] == y:
                self._left[z] = x
            elif self._right[z] == y:
                self._right[z] = x
        self._parent[y] = x
        self._parent[x] = z
        self._pull(y)
        self._pull(x)

    def _splay(self, x: int) -> None:
        chain = [x]
        y = x
        while not self._is_splay_root(y):
            y = self._parent[y]
            chain.append(y)
        for node in reversed(chain):
            self._push(node)
        rotations = 0
        while not self._is_splay_root(x):
            y = self._parent[x]
            if not self._is_splay_root(y):
                z = self._parent[y]
                zigzig = (self._left[y] == x) == (self._left[z] == y)
                self._rotate(y if zigzig else x)
                rotations += 1
            self._rotate(x)
            rotations += 1
        self._tick(rotations + 1)

    def _access(self, x: int) -> None:
        last = NIL
        y = x
        while y != NIL:
            self._splay(y)
            self._right[y] = last
            self._pull(y)
            last = y
            y = self._parent[y]
        self._splay(x)

    def find_root(self, u: VertexId) -> VertexId:
        self._access(u)
        x = u
        while True:
            self._push(x)
            if self._left[x] == NIL:
                break
            x = self._left[x]
        self._splay(x)
        return x

    def parent_of(self, v: VertexId) -> VertexId:
        """Tree parent of v, NIL at a root."""
        a = self.in_arc[v]
        return NIL if a == NIL else self.graph.arc_tail(a)

    def insert(self, a: ArcId) -> None:
        """Link arc a = (u, v), making u the parent of v.

        Raises:
            ForestViolationError: If v already has an in-edge or u lies in v's tree
        """
        u, v = self.graph.arc_tail(a), self.graph.arc_head(a)
        if self.in_arc[v] != NIL:
            raise ForestViolationError(f"Vertex {v} already has tree in-edge {self.in_arc[v]}, cannot insert arc {a}")
        if self.find_root(u) == v:
            raise ForestViolationError(f"Inserting arc {a} ({u}->{v}) would close a cycle")
        self._access(v)
        self.in_arc[v] = a
        self._value[v] = self.flow[a]
        self._pull(v)
        self._parent[v] = u

    def delete(self, a: ArcId) -> None:
        """Cut tree arc a and write its current value back to the flow.

        Raises:
            ForestViolationError: If a is not a tree edge
        """
        v = self.graph.arc_head(a)
        if self.in_arc[v] != a:
            raise ForestViolationError(f"Arc {a} is not a tree edge")
        self._access(v)
        self.flow[a] = self._value[v]
        left = self._left[v]
        if left != NIL:
            self._parent[left] = NIL
            self._left[v] = NIL
        self.in_arc[v] = NIL
        self._pull(v)

    def find_min(self, u: VertexId) -> ArcId:
        """Tree arc of minimum value on the root-to-u path, the one closest to u on ties.

        Raises:
            TreeRootError: If u is a root
        """
        if self.in_arc[u] == NIL:
            raise TreeRootError(f"find_min called at root {u}")
        self._access(u)
        return self.in_arc[self._argmin[u]]

    def update_flow(self, u: VertexId, delta: int) -> None:
        """Add delta to every tree arc on the root-to-u path.

        Raises:
            InfeasibleFlowError: If a value on the path would become negative; the forest is left unchanged
        """
        self._access(u)
        self._apply(u, delta)
        if self._argmin[u] != NIL and self._min[u] < 0:
            self._apply(u, -delta)
            raise InfeasibleFlowError(f"Path update {delta} at {u} would make a tree edge negative")

    def read_current_flow(self, a: ArcId) -> int:
        v = self.graph.arc_head(a)
        if self.in_arc[v] != a:
            return self.flow[a]
        self._access(v)
        return self._value[v]

    def tree_arcs(self) -> list[ArcId]:
        return [a for a in self.in_arc if a != NIL]

    def flush(self) -> None:
        """Write every tree edge's current value back to the flow list."""
        for v, a in enumerate(self.in_arc):
            if a != NIL:
                self._access(v)
                self.flow[a] = self._value[v]
