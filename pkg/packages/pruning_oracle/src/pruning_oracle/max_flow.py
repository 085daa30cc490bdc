# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Reference maximum flow with shortest augmenting paths."""

from collections.abc import Mapping, Sequence

import networkx as nx
from networkx.algorithms.flow import edmonds_karp

from pruning_oracle.models import MaxFlowResult

SUPER_SOURCE = "s"
SUPER_SINK = "t"


def exact_max_flow(
    n: int,
    arcs: Sequence[tuple[int, int, int]],
    sources: Mapping[int, int],
    sinks: Mapping[int, int],
) -> MaxFlowResult:
    """Maximum flow from the source demands into the sink capacities along capacitated arcs.

    Every arc (u, v, cap) gets its own middle node so parallel and antiparallel arcs keep separate flows.

    Args:
        n: Number of vertices
        arcs: Directed arcs with integral capacities
        sources: Supply per vertex, linked from a super source
        sinks: Sink capacity per vertex, linked to a super sink

    Returns:
        The flow value and the flow on every input arc
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(range(n))
    graph.add_nodes_from([SUPER_SOURCE, SUPER_SINK])
    for i, (u, v, cap) in enumerate(arcs):
        graph.add_edge(u, ("arc", i), capacity=cap)
        graph.add_edge(("arc", i), v, capacity=cap)
    for v, amount in sources.items():
        if amount > 0:
            graph.add_edge(SUPER_SOURCE, v, capacity=amount)
    for v, amount in sinks.items():
        if amount > 0:
            graph.add_edge(v, SUPER_SINK, capacity=amount)

    value, flow_dict = nx.maximum_flow(graph, SUPER_SOURCE, SUPER_SINK, flow_func=edmonds_karp)
    flow = [int(flow_dict[u][("arc", i)]) for i, (u, _, _) in enumerate(arcs)]
    return MaxFlowResult(value=int(value), flow=flow)
