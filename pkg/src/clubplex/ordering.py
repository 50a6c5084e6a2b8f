"""x-degeneracy values, x-degeneracy orderings and their right-neighborhood cores."""

import heapq
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional

from .errors import CertificationError, ContractError
from .graph import Graph, bounded_neighborhood, check_vertices, distances_from

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class XOrdering:
    """A vertex deletion order witnessing the x-degeneracy d_x."""
    x: int  # neighborhood radius
    order: tuple[int, ...]  # v_1, ..., v_n
    d_x: int
    peel_sizes: tuple[int, ...]  # |N_x(v_i)| in G[v_i, ..., v_n]

    @cached_property
    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}


def _peel_reference(g: Graph, x: int) -> tuple[list[int], list[int]]:
    """Recompute every x-neighborhood in every round."""
    remaining = set(range(g.n))
    order, peel_sizes = [], []
    while remaining:
        sizes = {v: len(bounded_neighborhood(g, v, x, within=remaining)) for v in remaining}
        v = min(remaining, key=lambda u: (sizes[u], u))
        order.append(v)
        peel_sizes.append(sizes[v])
        remaining.remove(v)
    return order, peel_sizes


def _peel_incremental(g: Graph, x: int) -> tuple[list[int], list[int]]:
    """Only vertices within distance x of a deleted vertex can shrink."""
    remaining = set(range(g.n))
    sizes = {v: len(bounded_neighborhood(g, v, x)) for v in remaining}
    heap = [(size, v) for v, size in sizes.items()]
    heapq.heapify(heap)
    order, peel_sizes = [], []

    while heap:
        size, v = heapq.heappop(heap)
        if v not in remaining or sizes[v] != size:
            continue
        affected = bounded_neighborhood(g, v, x, within=remaining)
        order.append(v)
        peel_sizes.append(size)
        remaining.remove(v)
        for u in affected:
            sizes[u] = len(bounded_neighborhood(g, u, x, within=remaining))
            heapq.heappush(heap, (sizes[u], u))

    return order, peel_sizes


def x_degeneracy_ordering(g: Graph, x: int, incremental: bool = True) -> XOrdering:
    """Peel vertices by minimum x-neighborhood size (ties: smallest id).

    The incremental and reference strategies return identical orderings.
    """
    if x < 1:
        raise ContractError("x must be at least 1")
    peel = _peel_incremental if incremental else _peel_reference
    order, peel_sizes = peel(g, x)
    d_x = max(peel_sizes, default=0)
    logger.debug("x=%d degeneracy of %d-vertex graph: %d", x, g.n, d_x)
    return XOrdering(x=x, order=tuple(order), d_x=d_x, peel_sizes=tuple(peel_sizes))


def core(g: Graph, ordering: XOrdering, v: int) -> frozenset[int]:
    """Q_x[v]: v plus its x-neighborhood among v and the vertices after it."""
    check_vertices(g, [v])
    later = ordering.order[ordering.position[v]:]
    return frozenset(distances_from(g, v, within=frozenset(later), cutoff=ordering.x))


def iter_cores(g: Graph, ordering: XOrdering) -> Iterator[tuple[int, frozenset[int]]]:
    """Yield (v, Q_x[v]) for every vertex in ordering order."""
    remaining = set(range(g.n))
    for v in ordering.order:
        yield v, frozenset(distances_from(g, v, within=remaining, cutoff=ordering.x))
        remaining.remove(v)


def verify_ordering(g: Graph, ordering: XOrdering) -> tuple[bool, Optional[str]]:
    """Check every XOrdering invariant. Returns (valid, first violation)."""
    if ordering.x < 1:
        return False, f"radius x={ordering.x} is not positive"
    if sorted(ordering.order) != list(range(g.n)):
        return False, "order is not a permutation of the vertices"
    if len(ordering.peel_sizes) != g.n:
        return False, f"expected {g.n} peel sizes, found {len(ordering.peel_sizes)}"

    remaining = set(range(g.n))
    for i, v in enumerate(ordering.order):
        actual = len(bounded_neighborhood(g, v, ordering.x, within=remaining))
        if actual != ordering.peel_sizes[i]:
            return False, f"position {i} (vertex {v}): peel size {ordering.peel_sizes[i]} recorded, {actual} actual"
        if actual > ordering.d_x:
            return False, f"position {i} (vertex {v}): neighborhood of size {actual} exceeds d_x={ordering.d_x}"
        remaining.remove(v)

    expected = max(ordering.peel_sizes, default=0)
    if ordering.d_x != expected:
        return False, f"d_x={ordering.d_x} but the largest peel size is {expected}"
    return True, None


def degeneracy_profile(g: Graph, xs: Iterable[int] = (1, 2, 3)) -> dict[int, int]:
    """d_x for several radii, asserting d_1 <= d_2 <= ... <= n-1."""
    profile = {x: x_degeneracy_ordering(g, x).d_x for x in sorted(set(xs))}
    values = list(profile.values())
    ceiling = max(g.n - 1, 0)
    if any(a > b for a, b in zip(values, values[1:])) or any(d > ceiling for d in values):
        raise CertificationError(f"x-degeneracy profile {profile} is not monotone within [0, {ceiling}]")
    return profile
