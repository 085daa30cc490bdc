# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Check that the initial graph can be a φ-expander before any pruning starts."""

import logging
import math
from fractions import Fraction

import numpy as np

from expander_pruning.common.exceptions import ExpanderPreconditionError
from expander_pruning.config import ENV
from expander_pruning.graph.dyngraph import DecGraph

logger = logging.getLogger(__name__)


def normalized_laplacian_gap(graph: DecGraph) -> float:
    """Second smallest eigenvalue of I − D^(−1/2)·A·D^(−1/2) over the live vertices."""
    vertices = graph.alive_vertices()
    index = {v: i for i, v in enumerate(vertices)}
    adjacency = np.zeros((len(vertices), len(vertices)))
    for u, v in graph.edge_list():
        adjacency[index[u], index[v]] += 1
        adjacency[index[v], index[u]] += 1
    degrees = adjacency.sum(axis=1)
    inv_sqrt = 1 / np.sqrt(degrees)
    laplacian = np.eye(len(vertices)) - inv_sqrt[:, None] * adjacency * inv_sqrt[None, :]
    eigenvalues = np.linalg.eigvalsh(laplacian)
    return float(eigenvalues[1])


def check_expander(graph: DecGraph, phi: Fraction) -> Fraction | None:
    """Reject graphs that are certainly not φ-expanders.

    Graphs with at most EP_ORACLE_MAX_N vertices are checked exactly. Larger graphs are rejected when the Cheeger
    upper bound √(2·λ₂) is already below φ.

    Returns:
        The exact conductance when it was computed

    Raises:
        ExpanderPreconditionError: If the graph's conductance is below φ
    """
    vertices = graph.alive_vertices()
    if len(vertices) < 2:
        return None
    isolated = [v for v in vertices if graph.cur_deg[v] == 0]
    if isolated:
        raise ExpanderPreconditionError(f"Vertices {isolated[:5]} are isolated; the graph is not a {phi}-expander")

    if len(vertices) <= ENV.EP_ORACLE_MAX_N:
        from pruning_oracle import conductance_exact

        report = conductance_exact(graph.n, graph.edge_list(), vertices=vertices, degrees=list(graph.cur_deg))
        if report.conductance is not None and report.conductance < phi:
            raise ExpanderPreconditionError(
                f"Initial conductance {report.conductance} is below φ = {phi} (cut {sorted(report.best_cut)})",
            )
        return report.conductance

    gap = normalized_laplacian_gap(graph)
    upper = math.sqrt(max(2 * gap, 0.0))
    if upper < float(phi) * (1 - 1e-9):
        raise ExpanderPreconditionError(f"Cheeger bound √(2λ₂) = {upper:.6f} is below φ = {phi}")
    if gap / 2 < float(phi):
        logger.info(f"Spectral gap {gap:.6f} does not certify φ = {phi}; continuing on trust")
    return None
