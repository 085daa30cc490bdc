# Copyright 2026, Expander Pruning contributors.
#
# SPDX-License-Identifier: AGPL-3.0-or-later

import logging.config
import shutil
import tempfile
from collections.abc import Generator
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from expander_pruning.config import DIRS
from expander_pruning.graph.dyngraph import DecGraph
from expander_pruning.harness.generators import complete, hypercube
from expander_pruning.logging_config import LOGGING_CONFIG
from expander_pruning.models.presets import DESK_PRESET
from expander_pruning.models.prune_config import PruneConfig

logging.config.dictConfig(LOGGING_CONFIG)

# Shared settings for property-based tests
PROPERTY_SETTINGS = settings(max_examples=50, deadline=None, suppress_health_check=[HealthCheck.too_slow])

# Conductance of the test expanders
K8_PHI = Fraction(1, 2)
K16_PHI = Fraction(1, 2)
Q4_PHI = Fraction(1, 4)

# Create a temporary directory for tests
TEST_TMP_DIR: Path = Path(tempfile.mkdtemp(prefix="expander_pruning_test_"))

# Override directory constants for tests
DIRS.EP_BASE_DIR = TEST_TMP_DIR
DIRS.EP_OUTPUT_DIR = TEST_TMP_DIR / "runs"
DIRS.EP_GRAPHS_DIR = TEST_TMP_DIR / "graphs"


# Clean up temporary directory after each test call
@pytest.fixture(scope="function", autouse=True)
def cleanup_test_tmp_dir() -> Generator[None]:
    yield
    shutil.rmtree(TEST_TMP_DIR, ignore_errors=True)


@st.composite
def graphs(draw: st.DrawFn, min_n: int = 2, max_n: int = 8, connected: bool = False) -> DecGraph:
    """Random simple graph; with `connected`, a random spanning tree is added first."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = set(draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))))
    if connected:
        for v in range(1, n):
            edges.add((draw(st.integers(min_value=0, max_value=v - 1)), v))
    return DecGraph.new_graph(sorted(edges), n)


@pytest.fixture
def k4() -> DecGraph:
    """Complete graph on four vertices."""
    return complete(4)


@pytest.fixture
def k8() -> DecGraph:
    """Complete graph on eight vertices, a 1/2-expander."""
    return complete(8)


@pytest.fixture
def q4() -> DecGraph:
    """Four-dimensional hypercube, a 1/4-expander on 16 vertices."""
    return hypercube(4)


@pytest.fixture
def k8_config(k8: DecGraph) -> PruneConfig:
    """Desk-preset parameters for K8."""
    return PruneConfig.build(k8.n, k8.m, K8_PHI, DESK_PRESET)


@pytest.fixture
def q4_config(q4: DecGraph) -> PruneConfig:
    """Desk-preset parameters for Q4."""
    return PruneConfig.build(q4.n, q4.m, Q4_PHI, DESK_PRESET)


@pytest.fixture
def k16() -> DecGraph:
    """Complete graph on sixteen vertices, a 1/2-expander."""
    return complete(16)


@pytest.fixture
def k16_config(k16: DecGraph) -> PruneConfig:
    """Desk-preset parameters for K16: k = 7, λ = 9, σ = 9 and a budget of 32 deletions."""
    return PruneConfig.build(k16.n, k16.m, K16_PHI, DESK_PRESET)


@pytest.fixture
def pendant() -> DecGraph:
    """K15 on 0..14 (edges 0..104) plus vertex 15 joined to 0, 1 and 2 by edges 105, 106 and 107."""
    edges = [(u, v) for u in range(15) for v in range(u + 1, 15)]
    edges += [(15, 0), (15, 1), (15, 2)]
    return DecGraph.new_graph(edges, 16)


@pytest.fixture
def pendant_config(pendant: DecGraph) -> PruneConfig:
    """Desk-preset parameters for the pendant graph, with the same k, λ and σ as K16."""
    return PruneConfig.build(pendant.n, pendant.m, K16_PHI, DESK_PRESET)
