"""Named problem configurations for the CLI and the benchmark grid."""

from dataclasses import dataclass
from typing import Optional

from .errors import ContractError
from .verify import CandidateKind, ProblemKind


@dataclass
class ProblemDefinition:
    """One benchmarkable problem: a target family, its s and the kernel radius."""
    name: str  # grid name, e.g. "2club" or "3plex-2"
    kind: ProblemKind
    s: int
    x: int  # kernel radius for the Turing-kernel variants
    description: str

    @property
    def candidate(self) -> CandidateKind:
        return CandidateKind(self.kind, self.s)


# Default problems; "3plex-2" uses the 2-degeneracy kernel for 3-plexes
DEFAULT_PROBLEMS = [
    ProblemDefinition(
        name="clique",
        kind=ProblemKind.CLIQUE,
        s=1,
        x=1,
        description="Maximum clique with the degeneracy kernel",
    ),
    ProblemDefinition(
        name="2club",
        kind=ProblemKind.CLUB,
        s=2,
        x=2,
        description="Maximum 2-club with the 2-degeneracy kernel",
    ),
    ProblemDefinition(
        name="3club",
        kind=ProblemKind.CLUB,
        s=3,
        x=3,
        description="Maximum 3-club with the 3-degeneracy kernel",
    ),
    ProblemDefinition(
        name="2plex",
        kind=ProblemKind.PLEX,
        s=2,
        x=2,
        description="Maximum 2-plex with the 2-degeneracy kernel",
    ),
    ProblemDefinition(
        name="3plex",
        kind=ProblemKind.PLEX,
        s=3,
        x=3,
        description="Maximum 3-plex with the 3-degeneracy kernel",
    ),
    ProblemDefinition(
        name="3plex-2",
        kind=ProblemKind.PLEX,
        s=3,
        x=2,
        description="Maximum 3-plex with the 2-degeneracy kernel plus small-plex enumeration",
    ),
]


def problem_label(kind: str, s: int, x: int) -> str:
    """Grid name for a (kind, s, x) triple as stored in results files."""
    if kind == ProblemKind.CLIQUE.value:
        return "clique"
    label = f"{s}{kind}"
    if x != s:
        label += f"-{x}"
    return label


class ProblemRegistry:
    """Registry of available problem configurations."""

    def __init__(self, problems: Optional[list[ProblemDefinition]] = None):
        self._problems = {p.name: p for p in (problems if problems is not None else DEFAULT_PROBLEMS)}

    def get_problem(self, name: str) -> Optional[ProblemDefinition]:
        """Get a problem definition by name."""
        return self._problems.get(name)

    def get_all_problems(self) -> list[ProblemDefinition]:
        """Get all registered problems."""
        return list(self._problems.values())

    def resolve(self, names: str) -> list[ProblemDefinition]:
        """Parse a comma-separated list such as '2club,3plex-2'."""
        problems = []
        for name in filter(None, (part.strip() for part in names.split(","))):
            problem = self.get_problem(name)
            if problem is None:
                known = ", ".join(self._problems)
                raise ContractError(f"unknown problem {name!r} (known: {known})")
            problems.append(problem)
        return problems
