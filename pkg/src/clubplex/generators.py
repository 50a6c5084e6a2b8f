"""Seeded instance generators for tests and desk-scale experiments."""

import itertools
import logging
import random
from pathlib import Path
from typing import Union

import networkx as nx

from .errors import ContractError
from .graph import EDGELIST, Graph, write_graph

logger = logging.getLogger(__name__)

# Parameter pools for generate_suite
SUITE_RANDOM_SIZES = (10, 12, 14, 16)
SUITE_RANDOM_DENSITIES = (0.3, 0.5, 0.7)
SUITE_PLANTED_SIZES = (16, 20, 24)


def generate_random_graph(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p); the same seed always yields the same graph."""
    if not 0.0 <= p <= 1.0:
        raise ContractError("edge probability must lie in [0, 1]")
    if n < 0:
        raise ContractError("vertex count must be nonnegative")
    return Graph.from_networkx(nx.gnp_random_graph(n, p, seed=seed))


def generate_planted_graph(
    n: int,
    core_size: int,
    cores: int = 1,
    density: float = 0.9,
    seed: int = 0,
) -> Graph:
    """A path backbone with dense blocks planted on disjoint stretches of it.

    Each block covers `core_size` consecutive path vertices and keeps every
    other pair with probability `density`, so the 2-degeneracy stays close
    to `core_size` however large n grows.
    """
    if cores < 0 or core_size < 1:
        raise ContractError("need core_size >= 1 and cores >= 0")
    if cores and core_size * cores > n:
        raise ContractError(f"{cores} blocks of {core_size} vertices do not fit into {n} vertices")
    if not 0.0 <= density <= 1.0:
        raise ContractError("density must lie in [0, 1]")

    rng = random.Random(seed)
    edges = [(v, v + 1) for v in range(n - 1)]
    stride = n // cores if cores else n
    for block in range(cores):
        start = block * stride + rng.randrange(stride - core_size + 1)
        for u, v in itertools.combinations(range(start, start + core_size), 2):
            if rng.random() < density:
                edges.append((u, v))
    return Graph.from_edges(n, edges)


def generate_suite(
    out_dir: Union[str, Path],
    random_count: int = 20,
    planted_count: int = 10,
    seed: int = 1,
) -> Path:
    """Write a mixed random + planted-core instance set and its manifest.

    Returns the manifest path. Instances are small enough that even the
    whole-graph solver usually finishes.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = random.Random(seed)
    lines = [f"# generated suite: {random_count} random, {planted_count} planted, seed {seed}"]

    for i in range(random_count):
        n = rng.choice(SUITE_RANDOM_SIZES)
        p = rng.choice(SUITE_RANDOM_DENSITIES)
        g = generate_random_graph(n, p, seed=rng.getrandbits(32))
        path = out_dir / f"random_{i:03d}_n{n}_p{int(p * 100)}.txt"
        write_graph(g, path, EDGELIST)
        lines.append(f"{path.name} {EDGELIST}")

    for i in range(planted_count):
        n = rng.choice(SUITE_PLANTED_SIZES)
        core_size = rng.randint(n // 3, n // 2)
        g = generate_planted_graph(n, core_size, cores=1, density=0.85, seed=rng.getrandbits(32))
        path = out_dir / f"planted_{i:03d}_n{n}_c{core_size}.txt"
        write_graph(g, path, EDGELIST)
        lines.append(f"{path.name} {EDGELIST}")

    manifest = out_dir / "manifest.txt"
    manifest.write_text("\n".join(lines) + "\n", encoding="utf-8")
    logger.info("Wrote %d instances to %s", random_count + planted_count, out_dir)
    return manifest
