# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

from hypothesis import given
from hypothesis import strategies as st
from pruning_oracle import exact_max_flow

from .conftest import PROPERTY_SETTINGS, complete_edges


def test_single_edge() -> None:
    """Test that a single arc limits the flow to its capacity."""
    result = exact_max_flow(2, [(0, 1, 3)], {0: 5}, {1: 5})
    assert result.value == 3
    assert result.flow == [3]


def test_complete_graph_three_paths() -> None:
    """Test routing three units out of one K4 vertex into unit sinks.

    Verifies that:
    - All three units arrive, one per sink
    - Flow on every arc stays within its unit capacity
    """
    arcs = [arc for u, v in complete_edges(4) for arc in ((u, v, 1), (v, u, 1))]
    result = exact_max_flow(4, arcs, {0: 3}, {1: 1, 2: 1, 3: 1})
    assert result.value == 3
    assert all(0 <= f <= 1 for f in result.flow)


def test_parallel_arcs_keep_separate_flow() -> None:
    result = exact_max_flow(2, [(0, 1, 2), (0, 1, 1)], {0: 10}, {1: 10})
    assert result.value == 3
    assert result.flow == [2, 1]


@PROPERTY_SETTINGS
@given(
    n=st.integers(min_value=2, max_value=8),
    data=st.data(),
)
def test_flow_is_feasible(n: int, data: st.DataObject) -> None:
    """Property: the returned flow respects capacities, supplies and sink capacities."""
    arcs = data.draw(
        st.lists(
            st.tuples(
                st.integers(0, n - 1),
                st.integers(0, n - 1),
                st.integers(0, 5),
            ).filter(lambda arc: arc[0] != arc[1]),
            max_size=20,
        ),
    )
    sources = data.draw(st.dictionaries(st.integers(0, n - 1), st.integers(0, 5), max_size=n))
    sinks = data.draw(st.dictionaries(st.integers(0, n - 1), st.integers(0, 5), max_size=n))
    result = exact_max_flow(n, arcs, sources, sinks)

    assert all(0 <= f <= cap for f, (_, _, cap) in zip(result.flow, arcs, strict=True))
    net = [0] * n
    for f, (u, v, _) in zip(result.flow, arcs, strict=True):
        net[u] -= f
        net[v] += f
    for v in range(n):
        assert -sources.get(v, 0) <= net[v] <= sinks.get(v, 0)
    assert result.value <= min(sum(sources.values()), sum(sinks.values()))
