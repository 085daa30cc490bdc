# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Graph text files: a header line "n m" followed by m lines "u v", vertices 0-indexed.

Line i + 1 holds edge i, dead edges included, so edge ids in event logs stay valid against the file.
"""

from pathlib import Path

from expander_pruning.common.exceptions import GraphConstructionError
from expander_pruning.common.fs_util import FsUtil
from expander_pruning.graph.dyngraph import DecGraph


def format_graph(graph: DecGraph) -> list[str]:
    edges = graph.edge_list(live_only=False)
    return [f"{graph.n} {len(edges)}", *(f"{u} {v}" for u, v in edges)]


def write_graph(graph: DecGraph, path: Path) -> None:
    FsUtil.write_lines(path, format_graph(graph))


def parse_graph(lines: list[str]) -> DecGraph:
    """Parse the lines of a graph file.

    Raises:
        GraphConstructionError: On a malformed header or edge line, or an edge count that does not match
    """
    if not lines:
        raise GraphConstructionError("Graph file is empty, expected a header line 'n m'")
    try:
        n, m = (int(token) for token in lines[0].split())
    except ValueError as e:
        raise GraphConstructionError(f"Malformed header {lines[0]!r}, expected 'n m'") from e

    edges: list[tuple[int, int]] = []
    for number, line in enumerate(lines[1:], start=2):
        try:
            u, v = (int(token) for token in line.split())
        except ValueError as e:
            raise GraphConstructionError(f"Malformed edge on line {number}: {line!r}") from e
        edges.append((u, v))
    if len(edges) != m:
        raise GraphConstructionError(f"Header announces {m} edges but the file has {len(edges)}")
    return DecGraph.new_graph(edges, n)


def read_graph(path: Path) -> DecGraph:
    try:
        return parse_graph(FsUtil.read_lines(path))
    except FileNotFoundError as e:
        raise GraphConstructionError(f"Graph file {path} does not exist") from e
