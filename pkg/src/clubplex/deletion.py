"""Deletion-to-target branching and the maximization driver built on it.

A graph has a target (clique, s-club, s-plex) of size k exactly when at
most n - k vertices can be deleted to leave one. Clubs and cliques branch
two ways on a violating pair, plexes s+1 ways on a vertex that misses too
many others and s of its non-neighbors.
"""

import logging
import math
import time
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .errors import ContractError
from .graph import Graph, connected_components, distances_from
from .solution import Deadline, Solution, SolutionStatus, SolveStats, certify
from .verify import CandidateKind, ProblemKind

logger = logging.getLogger(__name__)


class SearchStatus(Enum):
    """Outcome of one deletion search."""
    FOUND = "found"
    NONE = "none"
    TIMEOUT = "timeout"


@dataclass
class DeletionResult:
    """Result of delete_to_target."""
    status: SearchStatus
    deleted: Optional[frozenset[int]]  # set when status is FOUND
    branch_nodes: int


class SearchTimeout(Exception):
    """Raised inside the recursion when the deadline passes."""


class BranchingSearch:
    """Bounded search tree for one (graph, kind) pair."""

    def __init__(self, g: Graph, kind: CandidateKind, deadline: Optional[Deadline] = None):
        self.g = g
        self.kind = kind
        self.deadline = deadline or Deadline()
        self.branch_nodes = 0

    def run(self, budget: int) -> Optional[frozenset[int]]:
        """A deletion set of size <= budget, or None. Raises SearchTimeout."""
        return self._search(frozenset(range(self.g.n)), budget)

    def _search(self, alive: frozenset[int], budget: int) -> Optional[frozenset[int]]:
        self.branch_nodes += 1
        if self.deadline.expired():
            raise SearchTimeout()

        if self.kind.kind is ProblemKind.PLEX:
            candidates, forced = self._plex_branching(alive)
            if forced is not None:
                return forced if len(forced) <= budget else None
        else:
            candidates = self._club_branching(alive)

        if not candidates:
            return frozenset()
        if budget == 0:
            return None
        for v in candidates:
            found = self._search(alive - {v}, budget - 1)
            if found is not None:
                return found | {v}
        return None

    def _club_branching(self, alive: frozenset[int]) -> tuple[int, ...]:
        """The pair at maximum induced distance above s (ties: smallest ids)."""
        limit = self.kind.s
        worst, worst_distance = (), limit
        ordered = sorted(alive)
        for i, u in enumerate(ordered):
            dist = distances_from(self.g, u, within=alive)
            for v in ordered[i + 1:]:
                d = dist.get(v, math.inf)
                if d > worst_distance:
                    worst, worst_distance = (u, v), d
            if worst_distance == math.inf:
                break
        return worst

    def _plex_branching(self, alive: frozenset[int]) -> tuple[tuple[int, ...], Optional[frozenset[int]]]:
        """Branching vertices, or a forced deletion when only connectivity fails.

        A vertex missing the most others (ties: smallest id) is branched
        together with its s smallest non-neighbors. When the degree condition
        holds but G[alive] is disconnected, a plex must sit inside one
        component, and the largest component already is one.
        """
        s = self.kind.s
        nbrs = self.g.neighbor_sets
        worst, worst_missing = None, s
        for v in sorted(alive):
            missing = len(alive - nbrs[v])
            if missing > worst_missing:
                worst, worst_missing = v, missing

        if worst is not None:
            non_neighbors = sorted(alive - nbrs[worst] - {worst})[:s]
            return (worst, *non_neighbors), None

        components = connected_components(self.g, alive)
        if len(components) <= 1:
            return (), None
        largest = max(components, key=len)
        return (), alive - largest


def delete_to_target(
    g: Graph,
    kind: CandidateKind,
    budget: int,
    deadline: Optional[Deadline] = None,
) -> DeletionResult:
    """Find at most `budget` vertices whose deletion leaves a target of `kind`."""
    if budget < 0:
        raise ContractError("deletion budget must be nonnegative")
    search = BranchingSearch(g, kind, deadline)
    try:
        deleted = search.run(budget)
    except SearchTimeout:
        return DeletionResult(SearchStatus.TIMEOUT, None, search.branch_nodes)
    status = SearchStatus.FOUND if deleted is not None else SearchStatus.NONE
    return DeletionResult(status, deleted, search.branch_nodes)


def maximum_via_deletion(
    g: Graph,
    kind: CandidateKind,
    lower_bound: int = 1,
    deadline: Optional[Deadline] = None,
) -> Solution:
    """Maximum target of size >= lower_bound by iterative deepening on the budget.

    The first budget l that succeeds is minimal, so n - l is the optimum.
    Status BELOW_BOUND means no target of size >= lower_bound exists.
    """
    if lower_bound < 0:
        raise ContractError("lower bound must be nonnegative")
    started = time.perf_counter()
    search = BranchingSearch(g, kind, deadline)
    members: frozenset[int] = frozenset()
    status = SolutionStatus.BELOW_BOUND

    try:
        for budget in range(g.n - lower_bound + 1):
            deleted = search.run(budget)
            if deleted is not None:
                members = frozenset(range(g.n)) - deleted
                status = SolutionStatus.OPTIMAL
                break
    except SearchTimeout:
        status = SolutionStatus.TIMEOUT
        logger.debug("deletion search timed out after %d nodes", search.branch_nodes)

    stats = SolveStats(branch_nodes=search.branch_nodes, elapsed=time.perf_counter() - started)
    return certify(g, members, kind, status, stats)
