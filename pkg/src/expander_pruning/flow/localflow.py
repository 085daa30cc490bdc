# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Integral flows on the directed version of a DecGraph.

Arc 2e runs tail to head of edge e and arc 2e + 1 runs back. A push on an arc first cancels flow on its reverse,
so at most one direction of an edge carries flow.

Balances are booked: `bf[v]` is the net out-flow that was ever routed from v, and it is not rewound when an edge
is dropped. Dropping an edge instead moves the edge's net flow into `delta`, so `s + delta - t - bf` is the
demand still unrouted over the live edges.
"""

import logging
from collections import deque
from dataclasses import dataclass

from expander_pruning.common.exceptions import DemandBalanceError, InfeasibleFlowError
from expander_pruning.common.steps import OpCounter, Steps, run_to_completion
from expander_pruning.graph.dyngraph import ArcId, DecGraph, EdgeId, VertexId

logger = logging.getLogger(__name__)

YIELD_EVERY = 64  # elementary operations between two yields of a step generator


class FlowState:
    """Preflow with source, sink and extra-demand vectors on a DecGraph."""

    def __init__(self, graph: DecGraph, capacity: int, scale: int = 1) -> None:
        self.graph = graph
        self.scale = scale
        self.capacity = capacity
        self.cap = [capacity if graph.edge_alive[a >> 1] else 0 for a in range(2 * graph.m)]
        self.f = [0] * (2 * graph.m)
        self.s = [0] * graph.n
        self.t = [0] * graph.n
        self.delta = [0] * graph.n
        self.bf = [0] * graph.n

    def copy(self, graph: DecGraph | None = None) -> "FlowState":
        clone = FlowState.__new__(FlowState)
        clone.graph = graph if graph is not None else self.graph
        clone.scale = self.scale
        clone.capacity = self.capacity
        clone.cap = self.cap.copy()
        clone.f = self.f.copy()
        clone.s = self.s.copy()
        clone.t = self.t.copy()
        clone.delta = self.delta.copy()
        clone.bf = self.bf.copy()
        return clone

    def balance(self, v: VertexId) -> int:
        """Signed unrouted demand at v: positive is excess, negative is remaining sink room."""
        return self.s[v] + self.delta[v] - self.t[v] - self.bf[v]

    def excess_of(self, v: VertexId) -> int:
        return max(self.balance(v), 0)

    def room_of(self, v: VertexId) -> int:
        return min(self.t[v], max(-self.balance(v), 0))

    def total_excess(self) -> int:
        return sum(self.excess_of(v) for v in self.graph.alive_vertices())

    def residual(self, a: ArcId) -> int:
        if not self.graph.edge_alive[a >> 1]:
            return 0
        return self.cap[a] - self.f[a] + self.f[a ^ 1]

    def net_flow(self, e: EdgeId) -> int:
        """Net flow on e from its tail to its head."""
        return self.f[2 * e] - self.f[2 * e + 1]

    def push(self, a: ArcId, amount: int) -> None:
        """Route `amount` units along arc a, cancelling reverse flow first."""
        back = min(self.f[a ^ 1], amount)
        self.f[a ^ 1] -= back
        self.f[a] += amount - back
        self.bf[self.graph.arc_tail(a)] += amount
        self.bf[self.graph.arc_head(a)] -= amount

    def drop_edge(self, e: EdgeId) -> int:
        """Remove the flow of edge e and move its net flow into delta.

        Returns:
            The net flow e carried from its tail to its head
        """
        tail, head = self.graph.endpoints(e)
        carried = self.net_flow(e)
        self.f[2 * e] = 0
        self.f[2 * e + 1] = 0
        self.delta[tail] += carried
        self.delta[head] -= carried
        return carried

    def clear_vertex(self, v: VertexId) -> None:
        """Forget all demand bookkeeping of a vertex that left the graph."""
        self.s[v] = 0
        self.t[v] = 0
        self.delta[v] = 0
        self.bf[v] = 0

    def recompute_balance(self) -> None:
        """Rebook `bf` from the arc flows and clear delta (valid when no flow was ever dropped)."""
        self.bf = [0] * self.graph.n
        self.delta = [0] * self.graph.n
        for a, value in enumerate(self.f):
            if value:
                self.bf[self.graph.arc_tail(a)] += value
                self.bf[self.graph.arc_head(a)] -= value

    def support(self) -> list[ArcId]:
        return [a for a, value in enumerate(self.f) if value > 0]

    def check_feasible(self) -> None:
        """Raises InfeasibleFlowError unless 0 ≤ f ≤ cap on live arcs and dead edges carry nothing."""
        for a, value in enumerate(self.f):
            if value < 0:
                raise InfeasibleFlowError(f"Arc {a} carries negative flow {value}")
            if not self.graph.edge_alive[a >> 1] and value:
                raise InfeasibleFlowError(f"Dead edge {a >> 1} still carries flow {value}")
            if value > self.cap[a]:
                raise InfeasibleFlowError(f"Arc {a} carries {value} over capacity {self.cap[a]}")


def excess(st: FlowState) -> list[int]:
    """Per-vertex excess max(s + delta - t - Bf, 0); zero at dead vertices."""
    return [st.excess_of(v) if st.graph.vertex_alive[v] else 0 for v in range(st.graph.n)]


@dataclass
class DinitzOutcome:
    """Summary of a local Dinitz run."""

    phases: int  # blocking-flow phases executed
    distance: int  # residual distance from excess to room at termination, -1 when no room is reachable
    routed: int  # units moved from excess vertices into sinks
    ops: int  # elementary operations spent


def _arcs_out(graph: DecGraph, v: VertexId) -> list[ArcId]:
    return [graph.arc_from(e, v) for e in graph.adjacency[v] if graph.edge_alive[e]]


def dinitz_steps(
    st: FlowState,
    h: int,
    counter: OpCounter | None = None,
    require_balance: bool = True,
) -> Steps[DinitzOutcome]:
    """Local Dinitz with a round limit, as a step generator.

    Each phase builds BFS levels in the residual graph from all excess vertices and stops at the first layer
    holding a vertex with sink room. A blocking flow is then pushed from level 0 to room vertices of that layer.
    The run ends once no excess is left, no room is reachable, or the distance reaches h.

    Raises:
        DemandBalanceError: If `require_balance` and total effective source exceeds total sink capacity
    """
    graph = st.graph
    alive = graph.alive_vertices()
    supply = sum(st.s[v] + st.delta[v] - st.bf[v] for v in alive)
    sink = sum(st.t[v] for v in alive)
    if supply > sink:
        message = f"Total effective source {supply} exceeds total sink capacity {sink}"
        if require_balance:
            raise DemandBalanceError(message)
        logger.warning(message)

    ops = 0
    pending = 0
    routed = 0
    phases = 0
    distance = -1

    while True:
        sources = [v for v in alive if st.excess_of(v) > 0]
        if not sources:
            distance = 0
            break

        # BFS levels up to the first layer with room
        level: dict[VertexId, int] = dict.fromkeys(sources, 0)
        frontier = sources
        depth = 0
        found = False
        arcs_cache: dict[VertexId, list[ArcId]] = {}
        while frontier and not found:
            next_frontier: list[VertexId] = []
            for v in frontier:
                arcs = arcs_cache.setdefault(v, _arcs_out(graph, v))
                for a in arcs:
                    pending += 1
                    w = graph.arc_head(a)
                    if w not in level and st.residual(a) > 0:
                        level[w] = depth + 1
                        next_frontier.append(w)
                        if st.room_of(w) > 0:
                            found = True
            depth += 1
            frontier = sorted(next_frontier)
            if pending >= YIELD_EVERY:
                ops += pending
                if counter is not None:
                    counter.add(pending)
                yield pending
                pending = 0

        if not found:
            distance = -1
            break
        distance = depth
        if depth >= h:
            break

        phases += 1
        current = dict.fromkeys(level, 0)
        blocked: set[VertexId] = set()
        for src in sources:
            while st.excess_of(src) > 0:
                path: list[ArcId] = []
                v = src
                reached = False
                while True:
                    if level[v] == depth:
                        reached = True
                        break
                    arcs = arcs_cache.setdefault(v, _arcs_out(graph, v))
                    advanced = False
                    while current[v] < len(arcs):
                        a = arcs[current[v]]
                        pending += 1
                        w = graph.arc_head(a)
                        if (
                            level.get(w) == level[v] + 1
                            and w not in blocked
                            and st.residual(a) > 0
                            and (level[w] < depth or st.room_of(w) > 0)
                        ):
                            path.append(a)
                            v = w
                            advanced = True
                            break
                        current[v] += 1
                    if advanced:
                        continue
                    blocked.add(v)
                    if not path:
                        break
                    a = path.pop()
                    v = graph.arc_tail(a)
                    current[v] += 1
                if not reached:
                    break
                amount = min(st.excess_of(src), st.room_of(v), *(st.residual(a) for a in path))
                for a in path:
                    st.push(a, amount)
                pending += len(path)
                routed += amount
                if pending >= YIELD_EVERY:
                    ops += pending
                    if counter is not None:
                        counter.add(pending)
                    yield pending
                    pending = 0

    if pending:
        ops += pending
        if counter is not None:
            counter.add(pending)
        yield pending

    return DinitzOutcome(phases=phases, distance=distance, routed=routed, ops=ops)


def dinitz_local(
    st: FlowState,
    h: int,
    counter: OpCounter | None = None,
    require_balance: bool = True,
) -> DinitzOutcome:
    """Run local Dinitz to completion. See `dinitz_steps`."""
    return run_to_completion(dinitz_steps(st, h, counter, require_balance))


def remove_cycles(st: FlowState, counter: OpCounter | None = None) -> int:
    """Cancel every directed cycle of the flow support in place.

    Iterative DFS over positive arcs. A back arc to a vertex on the stack closes a cycle, whose minimum is
    subtracted from each of its arcs. The stack is then cut back to the tail of the first arc that became zero.
    Net flow at every vertex is unchanged.

    Returns:
        Total amount cancelled
    """
    graph = st.graph
    n = graph.n
    out: list[list[ArcId]] = [[] for _ in range(n)]
    for a in st.support():
        out[graph.arc_tail(a)].append(a)

    state = [0] * n  # 0 unvisited, 1 on stack, 2 done
    cursor = [0] * n
    cancelled = 0
    ops = 0

    for root in range(n):
        if state[root] or not out[root]:
            continue
        stack_v = [root]
        stack_a: list[ArcId] = []
        position = {root: 0}
        state[root] = 1
        while stack_v:
            v = stack_v[-1]
            moved = False
            while cursor[v] < len(out[v]):
                a = out[v][cursor[v]]
                ops += 1
                if st.f[a] == 0:
                    cursor[v] += 1
                    continue
                w = graph.arc_head(a)
                if state[w] == 0:
                    stack_a.append(a)
                    position[w] = len(stack_v)
                    stack_v.append(w)
                    state[w] = 1
                    moved = True
                    break
                if state[w] == 1:
                    start = position[w]
                    cycle = [*stack_a[start:], a]
                    low = min(st.f[x] for x in cycle)
                    for x in cycle:
                        st.f[x] -= low
                    cancelled += low * len(cycle)
                    first_zero = next(j for j, x in enumerate(cycle) if st.f[x] == 0)
                    if first_zero < len(cycle) - 1:
                        keep = start + first_zero + 1
                        for u in stack_v[keep:]:
                            state[u] = 0
                            del position[u]
                        del stack_v[keep:]
                        del stack_a[keep - 1 :]
                    else:
                        cursor[v] += 1
                    moved = True
                    break
                cursor[v] += 1
            if not moved:
                state[v] = 2
                del position[v]
                stack_v.pop()
                if stack_a:
                    stack_a.pop()

    if counter is not None:
        counter.add(ops)
    return cancelled


def is_acyclic(st: FlowState) -> bool:
    """True iff the positive arcs of the flow form a DAG (Kahn's algorithm)."""
    graph = st.graph
    indegree = [0] * graph.n
    out: list[list[VertexId]] = [[] for _ in range(graph.n)]
    for a in st.support():
        out[graph.arc_tail(a)].append(graph.arc_head(a))
        indegree[graph.arc_head(a)] += 1
    queue = deque(v for v in range(graph.n) if indegree[v] == 0)
    seen = 0
    while queue:
        v = queue.popleft()
        seen += 1
        for w in out[v]:
            indegree[w] -= 1
            if indegree[w] == 0:
                queue.append(w)
    return seen == graph.n
