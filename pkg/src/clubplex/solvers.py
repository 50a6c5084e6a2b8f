"""Exact maximization: brute force, small-plex enumeration and the Turing-kernel driver."""

import itertools
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional

from .deletion import maximum_via_deletion
from .errors import CertificationError, ContractError
from .graph import Graph, induced_subgraph
from .ordering import iter_cores, x_degeneracy_ordering
from .solution import Deadline, Solution, SolutionStatus, SolveStats, certify
from .verify import CandidateKind, ProblemKind, is_s_plex, satisfies

logger = logging.getLogger(__name__)

# Largest graph brute_force_maximum accepts without force=True
BRUTE_FORCE_LIMIT = 25

# small_plex_fallback enumerates sets of up to 2s-2 vertices
SMALL_PLEX_MAX_S = 3


class Variant(Enum):
    """Solver configurations."""
    NOTK = "notk"  # whole graph, no Turing kernel
    FULL = "full"  # every core solved independently
    DEFAULT = "default"  # cores solved with the best size so far as lower bound
    HINT = "hint"  # cores solved with the known optimum as lower bound


@dataclass(frozen=True)
class VariantConfig:
    """How turing_kernel_solve runs."""
    variant: Variant
    x: int  # kernel radius
    hint_value: Optional[int] = None  # required for HINT
    deadline: Optional[float] = None  # wall-clock budget in seconds
    jobs: int = 1  # worker processes for FULL

    def __post_init__(self):
        if self.x < 1:
            raise ContractError("kernel radius x must be at least 1")
        if (self.variant is Variant.HINT) != (self.hint_value is not None):
            raise ContractError("hint_value is required for the hint variant and only there")
        if self.jobs < 1:
            raise ContractError("jobs must be at least 1")
        if self.jobs > 1 and self.variant is not Variant.FULL:
            raise ContractError("parallel core solving is only available for the full variant")

    @classmethod
    def for_kind(
        cls,
        kind: CandidateKind,
        variant: Variant,
        x: Optional[int] = None,
        **kwargs,
    ) -> "VariantConfig":
        """Config with the kind's natural kernel radius (s) unless x is given."""
        return cls(variant=variant, x=x if x is not None else kind.s, **kwargs)


def brute_force_maximum(g: Graph, kind: CandidateKind, force: bool = False) -> Solution:
    """Check every vertex subset, largest first.

    Among maximum sets the lexicographically smallest member list wins.
    """
    if g.n > BRUTE_FORCE_LIMIT and not force:
        raise ContractError(f"brute force refuses {g.n} > {BRUTE_FORCE_LIMIT} vertices without force=True")
    started = time.perf_counter()
    stats = SolveStats()
    for size in range(g.n, -1, -1):
        for members in itertools.combinations(range(g.n), size):
            stats.branch_nodes += 1
            if satisfies(g, members, kind):
                stats.elapsed = time.perf_counter() - started
                return certify(g, members, kind, SolutionStatus.OPTIMAL, stats)
    raise CertificationError("the empty set always qualifies")  # unreachable


def _connected_sets(g: Graph, limit: int) -> Iterator[frozenset[int]]:
    """Every connected vertex set with at most `limit` vertices."""
    if limit < 1:
        return
    seen = {frozenset([v]) for v in range(g.n)}
    stack = list(seen)
    while stack:
        current = stack.pop()
        yield current
        if len(current) == limit:
            continue
        for u in current:
            for w in g.adjacency[u]:
                grown = current | {w}
                if w not in current and grown not in seen:
                    seen.add(grown)
                    stack.append(grown)


def small_plex_fallback(g: Graph, s: int) -> Solution:
    """Maximum s-plex among sets of at most 2s-2 vertices.

    Plexes are connected, so only connected sets are enumerated.
    """
    if not 1 <= s <= SMALL_PLEX_MAX_S:
        raise ContractError(f"small-plex enumeration supports s in 1..{SMALL_PLEX_MAX_S}")
    started = time.perf_counter()
    stats = SolveStats()
    best: tuple[int, ...] = ()
    for members in _connected_sets(g, 2 * s - 2):
        stats.branch_nodes += 1
        candidate = tuple(sorted(members))
        if (len(candidate), _negated(candidate)) > (len(best), _negated(best)) and is_s_plex(g, members, s):
            best = candidate
    stats.elapsed = time.perf_counter() - started
    return certify(g, best, CandidateKind.plex(s), SolutionStatus.OPTIMAL, stats)


def _negated(members: tuple[int, ...]) -> tuple[int, ...]:
    # larger key means lexicographically smaller member list
    return tuple(-v for v in members)


def _needs_small_plex_fallback(kind: CandidateKind, x: int) -> bool:
    """Kernels below radius s only cover plexes of at least 2s-1 vertices."""
    return kind.kind is ProblemKind.PLEX and (x == 2 or x < kind.s)


def _check_radius(kind: CandidateKind, x: int) -> None:
    if kind.kind is ProblemKind.CLUB and x < kind.s:
        raise ContractError(f"an s-club kernel needs x >= s (got x={x}, s={kind.s})")
    if kind.kind is ProblemKind.PLEX and x < min(kind.s, 2):
        raise ContractError(f"an s-plex kernel needs x >= 2 (got x={x})")
    if _needs_small_plex_fallback(kind, x) and kind.s > SMALL_PLEX_MAX_S:
        raise ContractError(f"x={x} plex kernels need the small-plex fallback, available for s <= {SMALL_PLEX_MAX_S}")


def _solve_core(
    sub: Graph,
    kind: CandidateKind,
    lower_bound: int,
    expires_at: Optional[float],
) -> Solution:
    """Oracle call on one core, run in a worker process."""
    return maximum_via_deletion(sub, kind, lower_bound, Deadline.at(expires_at))


def turing_kernel_solve(g: Graph, kind: CandidateKind, cfg: VariantConfig) -> Solution:
    """Maximum target of `kind` using the configured solver variant.

    Kernel variants sweep the x-degeneracy ordering and hand each core
    G[Q_x[v]] (at most d_x + 1 vertices) to the deletion-branching oracle.
    """
    started = time.perf_counter()
    deadline = Deadline(cfg.deadline)

    if cfg.variant is Variant.NOTK:
        solution = maximum_via_deletion(g, kind, 1 if g.n else 0, deadline)
        solution.stats.elapsed = time.perf_counter() - started
        return solution

    _check_radius(kind, cfg.x)
    ordering = x_degeneracy_ordering(g, cfg.x)
    stats = SolveStats(d_x=ordering.d_x)
    best: frozenset[int] = frozenset()
    timed_out = False

    if cfg.jobs > 1:
        best, timed_out = _sweep_parallel(g, kind, cfg, ordering, deadline, stats)
    else:
        for v, members in iter_cores(g, ordering):
            _check_core_bound(members, ordering.d_x)
            if cfg.variant is Variant.DEFAULT:
                lower_bound = len(best) + 1
            elif cfg.variant is Variant.HINT:
                lower_bound = cfg.hint_value
            else:
                lower_bound = 1
            if len(members) < lower_bound:
                continue

            sub, mapping = induced_subgraph(g, members)
            result = maximum_via_deletion(sub, kind, lower_bound, deadline)
            stats.oracle_calls += 1
            stats.max_core_size = max(stats.max_core_size, len(members))
            stats.branch_nodes += result.stats.branch_nodes
            if result.status is SolutionStatus.TIMEOUT:
                timed_out = True
                break
            if result.is_optimal and result.size > len(best):
                best = frozenset(mapping[i] for i in result.members)
                logger.debug("core of vertex %d raised the best %s to %d", v, kind.label, len(best))

    if not timed_out and _needs_small_plex_fallback(kind, cfg.x) and len(best) < 2 * kind.s - 1:
        fallback = small_plex_fallback(g, kind.s)
        stats.branch_nodes += fallback.stats.branch_nodes
        if fallback.size > len(best):
            best = fallback.members

    if timed_out:
        status = SolutionStatus.TIMEOUT
    elif cfg.variant is Variant.HINT and len(best) < cfg.hint_value:
        status = SolutionStatus.BELOW_BOUND
    else:
        status = SolutionStatus.OPTIMAL
    stats.elapsed = time.perf_counter() - started
    return certify(g, best, kind, status, stats)


def _check_core_bound(members: frozenset[int], d_x: int) -> None:
    if len(members) > d_x + 1:
        raise CertificationError(f"core of {len(members)} vertices exceeds d_x + 1 = {d_x + 1}")


def _sweep_parallel(g, kind, cfg, ordering, deadline, stats) -> tuple[frozenset[int], bool]:
    """FULL sweep with cores solved in worker processes; same sizes as sequential.

    Workers share the caller's absolute expiry. The first timed-out core
    ends the sweep and cancels every core that has not started.
    """
    cores = []
    for _, members in iter_cores(g, ordering):
        _check_core_bound(members, ordering.d_x)
        cores.append(induced_subgraph(g, members))

    best: frozenset[int] = frozenset()
    timed_out = False
    with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
        futures = [
            pool.submit(_solve_core, sub, kind, 1, deadline.expires_at)
            for sub, _ in cores
        ]
        for (sub, mapping), future in zip(cores, futures):
            result = future.result()
            stats.oracle_calls += 1
            stats.max_core_size = max(stats.max_core_size, sub.n)
            stats.branch_nodes += result.stats.branch_nodes
            if result.status is SolutionStatus.TIMEOUT:
                timed_out = True
                pool.shutdown(wait=False, cancel_futures=True)
                break
            if result.size > len(best):
                best = frozenset(mapping[i] for i in result.members)
    return best, timed_out
