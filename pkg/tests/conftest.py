"""Pytest configuration and fixtures."""

import pytest
from pathlib import Path
import random
import tempfile
import shutil

import sys
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from clubplex.generators import generate_random_graph
from clubplex.graph import Graph


@pytest.fixture
def temp_dir():
    """Create a temporary directory for tests."""
    tmp = tempfile.mkdtemp()
    yield Path(tmp)
    shutil.rmtree(tmp)


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


@pytest.fixture
def p3():
    """Path 0-1-2."""
    return path_graph(3)


@pytest.fixture
def p4():
    """Path 0-1-2-3."""
    return path_graph(4)


@pytest.fixture
def p5():
    """Path 0-1-2-3-4."""
    return path_graph(5)


@pytest.fixture
def c5():
    """Cycle on five vertices."""
    return Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])


@pytest.fixture
def k4():
    """Complete graph on four vertices."""
    return complete_graph(4)


@pytest.fixture
def star():
    """Star with center 0 and leaves 1..5."""
    return Graph.from_edges(6, [(0, leaf) for leaf in range(1, 6)])


@pytest.fixture
def k5_k3():
    """Disjoint K5 (0..4) and K3 (5..7)."""
    edges = [(u, v) for u in range(5) for v in range(u + 1, 5)]
    edges += [(5, 6), (5, 7), (6, 7)]
    return Graph.from_edges(8, edges)


@pytest.fixture
def graph_sample():
    """Factory for seeded G(n, p) samples: graph_sample(count, n_min, n_max, ps, seed)."""
    def make(count, n_min=4, n_max=10, ps=(0.2, 0.4, 0.6), seed=7):
        rng = random.Random(seed)
        return [
            generate_random_graph(rng.randint(n_min, n_max), rng.choice(ps), seed=rng.getrandbits(32))
            for _ in range(count)
        ]
    return make
