# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Deterministic generators for the expanders (and the non-expander control) that experiments run on."""

import logging

import numpy as np

from expander_pruning.common.exceptions import GraphConstructionError
from expander_pruning.graph.dyngraph import DecGraph
from expander_pruning.harness.graph_io import read_graph
from expander_pruning.models.experiment import (
    BarbellGraphSource,
    CompleteGraphSource,
    FileGraphSource,
    GraphSource,
    HypercubeGraphSource,
    RandomRegularGraphSource,
)

logger = logging.getLogger(__name__)

RANDOM_REGULAR_RETRIES = 1000


def complete(n: int) -> DecGraph:
    return DecGraph.new_graph([(u, v) for u in range(n) for v in range(u + 1, n)], n)


def hypercube(d: int) -> DecGraph:
    """The d-dimensional hypercube: 2^d vertices, d·2^(d−1) edges."""
    n = 1 << d
    edges = [(v, v ^ (1 << bit)) for v in range(n) for bit in range(d) if v < v ^ (1 << bit)]
    return DecGraph.new_graph(edges, n)


def random_regular(n: int, d: int, seed: int) -> DecGraph:
    """Simple d-regular graph from the configuration model, resampling until no self-loop or multi-edge appears.

    Raises:
        GraphConstructionError: If n·d is odd, d ≥ n, or no simple pairing was drawn within the retry limit
    """
    if (n * d) % 2 != 0:
        raise GraphConstructionError(f"A {d}-regular graph on {n} vertices needs n·d even")
    if not 0 < d < n:
        raise GraphConstructionError(f"Degree must satisfy 0 < d < n, got d={d}, n={n}")

    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n), d)
    for attempt in range(1, RANDOM_REGULAR_RETRIES + 1):
        pairs = rng.permutation(stubs).reshape(-1, 2)
        pairs.sort(axis=1)
        if np.any(pairs[:, 0] == pairs[:, 1]):
            continue
        if len(np.unique(pairs, axis=0)) != len(pairs):
            continue
        logger.debug(f"Random {d}-regular graph on {n} vertices drawn after {attempt} attempts")
        ordered = sorted((int(u), int(v)) for u, v in pairs)
        return DecGraph.new_graph(ordered, n)
    raise GraphConstructionError(f"No simple {d}-regular pairing on {n} vertices after {RANDOM_REGULAR_RETRIES} draws")


def barbell(a: int, b: int, bridge_edges: int) -> DecGraph:
    """Cliques on a and b vertices joined by a path of `bridge_edges` edges through fresh vertices."""
    if bridge_edges < 1:
        raise GraphConstructionError(f"A barbell needs at least one bridge edge, got {bridge_edges}")
    n = a + b + bridge_edges - 1
    edges = [(u, v) for u in range(a) for v in range(u + 1, a)]
    edges += [(u, v) for u in range(a, a + b) for v in range(u + 1, a + b)]
    path = [a - 1, *range(a + b, n), a]
    edges += list(zip(path, path[1:], strict=False))
    return DecGraph.new_graph(edges, n)


def generate(source: GraphSource, seed: int) -> DecGraph:
    """Build the graph an experiment names."""
    match source:
        case CompleteGraphSource():
            return complete(source.n)
        case HypercubeGraphSource():
            return hypercube(source.d)
        case RandomRegularGraphSource():
            return random_regular(source.n, source.d, seed)
        case BarbellGraphSource():
            return barbell(source.a, source.b, source.bridge_edges)
        case FileGraphSource():
            return read_graph(source.path)
    raise GraphConstructionError(f"Unknown graph source {source!r}")


def describe(source: GraphSource) -> str:
    """Short label such as "hypercube(d=4)"."""
    fields = source.model_dump(exclude={"kind"})
    return f"{source.kind.value}({', '.join(f'{key}={value}' for key, value in fields.items())})"
