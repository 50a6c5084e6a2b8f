"""Solver results, statistics and the cooperative deadline."""

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional

from .errors import CertificationError
from .graph import Graph
from .verify import CandidateKind, satisfies


class SolutionStatus(Enum):
    """How a maximization call ended."""
    OPTIMAL = "optimal"
    BELOW_BOUND = "below_bound"  # no target of the requested minimum size exists
    TIMEOUT = "timeout"  # members are best-so-far, not proven maximum


class Deadline:
    """Wall-clock budget, polled by the solvers at every branching node.

    The expiry is an absolute time.monotonic() value; worker processes
    rebuild the same deadline with Deadline.at().
    """

    def __init__(self, seconds: Optional[float] = None):
        self.seconds = seconds
        self.expires_at = None if seconds is None else time.monotonic() + seconds

    @classmethod
    def at(cls, expires_at: Optional[float]) -> "Deadline":
        """Deadline expiring at an absolute monotonic time (None: unlimited)."""
        deadline = cls()
        if expires_at is not None:
            deadline.seconds = max(0.0, expires_at - time.monotonic())
            deadline.expires_at = expires_at
        return deadline

    def expired(self) -> bool:
        return self.expires_at is not None and time.monotonic() >= self.expires_at

    def remaining(self) -> Optional[float]:
        """Seconds left, or None for an unlimited budget."""
        if self.expires_at is None:
            return None
        return max(0.0, self.expires_at - time.monotonic())


@dataclass
class SolveStats:
    """Counters exposed for the runtime analysis."""
    oracle_calls: int = 0  # kernel subproblems solved
    max_core_size: int = 0  # largest |Q_x[v]| handed to an oracle
    branch_nodes: int = 0
    elapsed: float = 0.0  # wall-clock seconds
    timed_out: bool = False
    d_x: Optional[int] = None  # x-degeneracy, when a kernel variant computed it

    def format_line(self) -> str:
        return (
            f"oracle_calls={self.oracle_calls} max_core_size={self.max_core_size} "
            f"branch_nodes={self.branch_nodes} elapsed={self.elapsed:.6f} "
            f"timed_out={str(self.timed_out).lower()}"
        )


@dataclass
class Solution:
    """A vertex set returned by a solver, with its certificate."""
    members: frozenset[int]
    kind: CandidateKind
    status: SolutionStatus
    certified: bool  # members passed the matching verify predicate
    stats: SolveStats = field(default_factory=SolveStats)

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def is_optimal(self) -> bool:
        return self.status is SolutionStatus.OPTIMAL

    def labels(self, g: Graph) -> list[str]:
        """Original labels of the members, in ascending id order."""
        return [g.label(v) for v in sorted(self.members)]


def certify(
    g: Graph,
    members: Iterable[int],
    kind: CandidateKind,
    status: SolutionStatus,
    stats: SolveStats,
) -> Solution:
    """Wrap members into a Solution, raising if they fail the kind's predicate."""
    members = frozenset(members)
    if not satisfies(g, members, kind):
        raise CertificationError(f"solver returned {sorted(members)}, which is not a {kind.label}")
    stats.timed_out = stats.timed_out or status is SolutionStatus.TIMEOUT
    return Solution(members=members, kind=kind, status=status, certified=True, stats=stats)
