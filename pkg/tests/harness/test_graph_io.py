# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

from pathlib import Path

import pytest

from expander_pruning.common.exceptions import GraphConstructionError
from expander_pruning.graph.dyngraph import DecGraph
from expander_pruning.harness.graph_io import format_graph, parse_graph, read_graph, write_graph


def test_graph_file_keeps_dead_edges(k4: DecGraph, tmp_path: Path) -> None:
    """Test writing and reading a graph file.

    Verifies that:
    - The header names every edge ever created, dead ones included
    - Edge ids survive the round trip
    """
    k4.delete_edge(2)
    path = tmp_path / "k4.txt"
    write_graph(k4, path)

    lines = path.read_text().splitlines()
    assert lines[0] == "4 6"
    assert lines[3] == "0 3"

    graph = read_graph(path)
    assert graph.m == 6
    assert graph.endpoints(2) == (0, 3)
    assert graph.edge_list() == k4.edge_list(live_only=False)


def test_format_graph(k4: DecGraph) -> None:
    assert format_graph(k4) == ["4 6", "0 1", "0 2", "0 3", "1 2", "1 3", "2 3"]


@pytest.mark.parametrize(
    "lines",
    [
        [],
        ["four 6"],
        ["4"],
        ["3 2", "0 1"],
        ["3 2", "0 1", "1 x"],
    ],
)
def test_malformed_files(lines: list[str]) -> None:
    with pytest.raises(GraphConstructionError):
        parse_graph(lines)


def test_missing_file(tmp_path: Path) -> None:
    with pytest.raises(GraphConstructionError):
        read_graph(tmp_path / "absent.txt")
