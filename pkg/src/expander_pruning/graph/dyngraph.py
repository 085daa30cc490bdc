# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Decremental multigraph with frozen initial degrees.

Edges and vertices are never compacted: a deleted edge keeps its EdgeId and is flagged dead, so flows and trees
can keep referring to edges by id across deletions. Each undirected edge e has two arcs, 2e (tail to head) and
2e + 1 (head to tail).
"""

from collections.abc import Iterable, Iterator

from expander_pruning.common.exceptions import EdgeAlreadyDeletedError, GraphConstructionError

VertexId = int
EdgeId = int
ArcId = int


class DecGraph:
    """Decremental multigraph. Use `DecGraph.new_graph` to build one."""

    def __init__(self, n: int, tails: list[VertexId], heads: list[VertexId]) -> None:
        self.n = n
        self.tails = tails
        self.heads = heads
        self.edge_alive = [True] * len(tails)
        self.adjacency: list[list[EdgeId]] = [[] for _ in range(n)]
        degrees = [0] * n
        for e, (u, v) in enumerate(zip(tails, heads, strict=True)):
            self.adjacency[u].append(e)
            self.adjacency[v].append(e)
            degrees[u] += 1
            degrees[v] += 1
        self.d: tuple[int, ...] = tuple(degrees)  # frozen initial degrees
        self.cur_deg = degrees
        self.vertex_alive = [True] * n
        self.live_edge_count = len(tails)

    @classmethod
    def new_graph(cls, edge_list: Iterable[tuple[int, int]], n: int) -> "DecGraph":
        """Build a graph from vertex pairs.

        Args:
            edge_list: Undirected edges as (u, v) pairs, multi-edges allowed
            n: Vertex count

        Returns:
            The graph with every edge alive

        Raises:
            GraphConstructionError: On a self-loop or an endpoint outside [0, n)
        """
        if n < 0:
            raise GraphConstructionError(f"Vertex count must be non-negative, got {n}")

        tails: list[VertexId] = []
        heads: list[VertexId] = []
        for u, v in edge_list:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphConstructionError(f"Edge ({u}, {v}) has an endpoint outside [0, {n})")
            if u == v:
                raise GraphConstructionError(f"Self-loop at vertex {u} is not allowed")
            tails.append(u)
            heads.append(v)

        return cls(n, tails, heads)

    @property
    def m(self) -> int:
        """Number of edges ever present (dead ones included)."""
        return len(self.tails)

    def copy(self) -> "DecGraph":
        clone = DecGraph.__new__(DecGraph)
        clone.n = self.n
        clone.tails = self.tails
        clone.heads = self.heads
        clone.edge_alive = self.edge_alive.copy()
        clone.adjacency = self.adjacency  # static incidence, shared
        clone.d = self.d
        clone.cur_deg = self.cur_deg.copy()
        clone.vertex_alive = self.vertex_alive.copy()
        clone.live_edge_count = self.live_edge_count
        return clone

    def endpoints(self, e: EdgeId) -> tuple[VertexId, VertexId]:
        return self.tails[e], self.heads[e]

    def other(self, e: EdgeId, v: VertexId) -> VertexId:
        return self.heads[e] if self.tails[e] == v else self.tails[e]

    def arc_tail(self, a: ArcId) -> VertexId:
        e = a >> 1
        return self.heads[e] if a & 1 else self.tails[e]

    def arc_head(self, a: ArcId) -> VertexId:
        e = a >> 1
        return self.tails[e] if a & 1 else self.heads[e]

    def arc_from(self, e: EdgeId, v: VertexId) -> ArcId:
        """The arc of e leaving v."""
        return 2 * e if self.tails[e] == v else 2 * e + 1

    def is_edge_alive(self, e: EdgeId) -> bool:
        return self.edge_alive[e]

    def is_vertex_alive(self, v: VertexId) -> bool:
        return self.vertex_alive[v]

    def live_edges(self) -> Iterator[EdgeId]:
        return (e for e, alive in enumerate(self.edge_alive) if alive)

    def alive_vertices(self) -> list[VertexId]:
        return [v for v in range(self.n) if self.vertex_alive[v]]

    def incident_live(self, v: VertexId) -> list[EdgeId]:
        return [e for e in self.adjacency[v] if self.edge_alive[e]]

    def delete_edge(self, e: EdgeId) -> None:
        """Delete a live edge.

        Raises:
            EdgeAlreadyDeletedError: If the edge is already dead
        """
        if not self.edge_alive[e]:
            raise EdgeAlreadyDeletedError(f"Edge {e} {self.endpoints(e)} was already deleted")
        self.edge_alive[e] = False
        self.cur_deg[self.tails[e]] -= 1
        self.cur_deg[self.heads[e]] -= 1
        self.live_edge_count -= 1

    def remove_vertices(self, vertices: Iterable[VertexId]) -> list[EdgeId]:
        """Kill every vertex in the set together with its incident edges. Dead vertices are skipped.

        Returns:
            The edges that were alive and are now dead, ascending
        """
        killed: list[EdgeId] = []
        for v in sorted(set(vertices)):
            if not self.vertex_alive[v]:
                continue
            for e in self.adjacency[v]:
                if self.edge_alive[e]:
                    self.delete_edge(e)
                    killed.append(e)
            self.vertex_alive[v] = False
        killed.sort()
        return killed

    def volume_d(self, vertices: Iterable[VertexId]) -> int:
        """Volume with respect to the frozen initial degrees."""
        return sum(self.d[v] for v in set(vertices))

    def boundary(self, vertices: Iterable[VertexId]) -> set[EdgeId]:
        """Live edges with exactly one endpoint in the set."""
        inside = set(vertices)
        cut: set[EdgeId] = set()
        for v in inside:
            for e in self.adjacency[v]:
                if self.edge_alive[e] and self.other(e, v) not in inside:
                    cut.add(e)
        return cut

    def cut_count(self, vertices: Iterable[VertexId]) -> int:
        return len(self.boundary(vertices))

    def edge_list(self, live_only: bool = True) -> list[tuple[VertexId, VertexId]]:
        return [
            (self.tails[e], self.heads[e]) for e in range(self.m) if self.edge_alive[e] or not live_only
        ]
