# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Exact conductance by enumerating every cut of the live vertices."""

from collections.abc import Sequence
from fractions import Fraction

import numpy as np

from pruning_oracle.exceptions import OracleLimitError
from pruning_oracle.models import CutReport

DEFAULT_MAX_N = 20


def conductance_exact(
    n: int,
    edges: Sequence[tuple[int, int]],
    vertices: Sequence[int] | None = None,
    degrees: Sequence[int] | None = None,
    max_n: int = DEFAULT_MAX_N,
) -> CutReport:
    """Minimum of |E(S, V∖S)| / min(vol(S), vol(V∖S)) over all nontrivial cuts S of `vertices`.

    Args:
        n: Number of vertex ids
        edges: Live edges (u, v); edges with an endpoint outside `vertices` are ignored
        vertices: Live vertices, all of 0..n−1 by default
        degrees: Volume per vertex id; defaults to the degree among `edges` (current measure). Passing the
            initial degrees gives the decremental measure.
        max_n: Largest number of live vertices accepted

    Returns:
        The sparsest cut and its conductance, None when no cut has positive volume on both sides

    Raises:
        OracleLimitError: If there are more than max_n live vertices
    """
    live = list(range(n)) if vertices is None else sorted(set(vertices))
    p = len(live)
    if p > max_n:
        raise OracleLimitError(f"Exhaustive conductance needs at most {max_n} vertices, got {p}")
    measure = "current" if degrees is None else "initial_d"
    if p < 2:
        return CutReport(best_cut=frozenset(), conductance=None, volume_measure=measure)

    index = {v: i for i, v in enumerate(live)}
    pairs = np.array([(index[u], index[v]) for u, v in edges if u in index and v in index], dtype=np.int64)
    if degrees is None:
        volume = np.zeros(p, dtype=np.int64)
        if len(pairs):
            np.add.at(volume, pairs[:, 0], 1)
            np.add.at(volume, pairs[:, 1], 1)
    else:
        volume = np.array([degrees[v] for v in live], dtype=np.int64)

    # Vertex p−1 stays outside S, so every cut is enumerated once.
    masks = np.arange(1, 1 << (p - 1), dtype=np.int64)
    bits = (masks[:, None] >> np.arange(p, dtype=np.int64)[None, :]) & 1
    vol_s = bits @ volume
    vol_rest = int(volume.sum()) - vol_s
    if len(pairs):
        crossing = (bits[:, pairs[:, 0]] != bits[:, pairs[:, 1]]).sum(axis=1)
    else:
        crossing = np.zeros(len(masks), dtype=np.int64)
    denominator = np.minimum(vol_s, vol_rest)
    valid = denominator > 0
    if not valid.any():
        return CutReport(best_cut=frozenset(), conductance=None, volume_measure=measure, cuts_checked=len(masks))

    ratio = np.full(len(masks), np.inf)
    ratio[valid] = crossing[valid] / denominator[valid]
    floor = ratio.min()
    candidates = np.flatnonzero(ratio <= floor * (1 + 1e-9) + 1e-12)
    best = min(candidates, key=lambda c: (Fraction(int(crossing[c]), int(denominator[c])), int(masks[c])))
    cut = frozenset(live[i] for i in range(p) if bits[best, i])
    return CutReport(
        best_cut=cut,
        conductance=Fraction(int(crossing[best]), int(denominator[best])),
        volume_measure=measure,
        cuts_checked=len(masks),
    )


def is_expander(
    n: int,
    edges: Sequence[tuple[int, int]],
    phi: Fraction,
    vertices: Sequence[int] | None = None,
    degrees: Sequence[int] | None = None,
) -> bool:
    """True if no cut of the live vertices has conductance below phi."""
    report = conductance_exact(n, edges, vertices=vertices, degrees=degrees)
    return report.conductance is None or report.conductance >= phi
