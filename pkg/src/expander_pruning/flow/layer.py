# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Acyclic flow with a dynamic forest over its support, retracted one unit at a time."""

import logging

from expander_pruning.common.steps import OpCounter
from expander_pruning.flow.linkcut import NIL, DynForest
from expander_pruning.flow.localflow import FlowState
from expander_pruning.graph.dyngraph import ArcId, EdgeId, VertexId

logger = logging.getLogger(__name__)


class FlowLayer:
    """Flow state, its support arcs and a DynForest over them.

    Tree arcs hold their values lazily in the forest. Call `flush()` before reading `st.f` directly.
    """

    def __init__(self, st: FlowState, counter: OpCounter | None = None) -> None:
        self.st = st
        self.graph = st.graph
        self.counter = counter
        self.forest = DynForest.initialize(st.graph, st.f, counter)
        self.support: set[ArcId] = set()
        self.in_support: list[set[ArcId]] = [set() for _ in range(st.graph.n)]
        for a in st.support():
            self.support.add(a)
            self.in_support[self.graph.arc_head(a)].add(a)

    def _tick(self, count: int = 1) -> None:
        if self.counter is not None:
            self.counter.add(count)

    def _discard(self, a: ArcId) -> None:
        if a in self.support:
            self.support.discard(a)
            self.in_support[self.graph.arc_head(a)].discard(a)

    def flow_on(self, a: ArcId) -> int:
        return self.forest.read_current_flow(a)

    def carrying_arc(self, e: EdgeId) -> ArcId | None:
        """The support arc of edge e with positive flow, if any."""
        for a in (2 * e, 2 * e + 1):
            if a in self.support and self.forest.read_current_flow(a) > 0:
                return a
        return None

    def retract(self, a: ArcId) -> VertexId:
        """Remove one unit of flow from support arc a together with the tree path feeding it.

        If a is the tree in-arc of its head v, the unit is taken along the root-to-v path. Otherwise a is
        decremented directly and the unit is taken along the root-to-tail path. A zero-valued minimum arc on that
        path is cut first.

        Returns:
            The root r the unit was retracted to
        """
        graph = self.graph
        st = self.st
        u, v = graph.arc_tail(a), graph.arc_head(a)
        self._tick()
        if self.forest.in_arc[v] == a:
            top = v
        else:
            st.f[a] -= 1
            st.bf[u] -= 1
            st.bf[v] += 1
            if st.f[a] == 0:
                self._discard(a)
            top = u

        if self.forest.in_arc[top] != NIL:
            low = self.forest.find_min(top)
            if self.forest.read_current_flow(low) == 0:
                self.forest.delete(low)
                self._discard(low)
            if self.forest.in_arc[top] != NIL:
                self.forest.update_flow(top, -1)

        r = self.forest.find_root(top)
        if r != top:
            st.bf[r] -= 1
            st.bf[top] += 1
        return r

    def relink(self, r: VertexId) -> bool:
        """Link root r to its smallest support in-arc that still carries flow.

        Returns:
            True if an arc was inserted
        """
        for a in sorted(self.in_support[r]):
            self._tick()
            if self.forest.read_current_flow(a) > 0:
                self.forest.insert(a)
                return True
            self._discard(a)
        return False

    def drop_support(self, a: ArcId) -> None:
        """Forget a support arc that carries no flow."""
        self._discard(a)

    def detach_edge(self, e: EdgeId) -> None:
        """Cut edge e out of the forest, clear its flow and delete it from the layer graph."""
        st = self.st
        for a in (2 * e, 2 * e + 1):
            if self.forest.in_arc[self.graph.arc_head(a)] == a:
                self.forest.delete(a)
            if st.f[a]:
                st.bf[self.graph.arc_tail(a)] -= st.f[a]
                st.bf[self.graph.arc_head(a)] += st.f[a]
                st.f[a] = 0
            self._discard(a)
        if self.graph.edge_alive[e]:
            self.graph.delete_edge(e)

    def flush(self) -> FlowState:
        """Write tree values back and return the flow state."""
        self.forest.flush()
        return self.st

    def support_list(self) -> list[ArcId]:
        return sorted(self.support)
