"""Certified predicates for cliques, s-clubs and s-plexes."""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .errors import ContractError
from .graph import Graph, check_vertices, diameter, distances_from


class ProblemKind(Enum):
    """The three cohesive-subgraph families."""
    CLIQUE = "clique"
    CLUB = "club"
    PLEX = "plex"


@dataclass(frozen=True)
class CandidateKind:
    """A target family together with its relaxation parameter s."""
    kind: ProblemKind
    s: int = 1

    def __post_init__(self):
        if self.s < 1:
            raise ContractError("s must be at least 1")
        if self.kind is ProblemKind.CLIQUE and self.s != 1:
            raise ContractError("cliques have no relaxation parameter (s must be 1)")

    @classmethod
    def clique(cls) -> "CandidateKind":
        return cls(ProblemKind.CLIQUE, 1)

    @classmethod
    def club(cls, s: int) -> "CandidateKind":
        return cls(ProblemKind.CLUB, s)

    @classmethod
    def plex(cls, s: int) -> "CandidateKind":
        return cls(ProblemKind.PLEX, s)

    @property
    def label(self) -> str:
        """Short name such as 'clique', '2club' or '3plex'."""
        if self.kind is ProblemKind.CLIQUE:
            return "clique"
        return f"{self.s}{self.kind.value}"


def is_clique(g: Graph, members: Iterable[int]) -> bool:
    members = check_vertices(g, members)
    return all(members - {v} <= g.neighbor_sets[v] for v in members)


def is_s_club(g: Graph, members: Iterable[int], s: int) -> bool:
    """Whether G[members] has diameter at most s (distances inside G[members])."""
    if s < 1:
        raise ContractError("s must be at least 1")
    members = check_vertices(g, members)
    return all(
        len(distances_from(g, v, within=members, cutoff=s)) == len(members)
        for v in members
    )


def degree_condition(g: Graph, members: Iterable[int], s: int) -> bool:
    """|X \\ N(v)| <= s for every v in X; X \\ N(v) contains v itself."""
    members = check_vertices(g, members)
    return all(len(members - g.neighbor_sets[v]) <= s for v in members)


def is_s_plex(g: Graph, members: Iterable[int], s: int) -> bool:
    """Whether G[members] is connected and satisfies the plex degree condition."""
    if s < 1:
        raise ContractError("s must be at least 1")
    members = check_vertices(g, members)
    if len(members) <= 1:
        return True
    if not degree_condition(g, members, s):
        return False
    anchor = min(members)
    return len(distances_from(g, anchor, within=members)) == len(members)


def plex_diameter_witness(g: Graph, members: Iterable[int], s: int) -> bool:
    """Whether an s-plex of at least 2s-1 vertices has diameter at most 2.

    Any such plex does; this is a runtime check for that fact.
    """
    members = check_vertices(g, members)
    if len(members) < 2 * s - 1:
        raise ContractError(f"plex of size {len(members)} is smaller than 2s-1 = {2 * s - 1}")
    if not is_s_plex(g, members, s):
        raise ContractError(f"vertex set is not a {s}-plex")
    longest = diameter(g, members)
    return longest is not None and longest <= 2


def satisfies(g: Graph, members: Iterable[int], kind: CandidateKind) -> bool:
    """Dispatch to the predicate matching kind."""
    if kind.kind is ProblemKind.CLIQUE:
        return is_clique(g, members)
    if kind.kind is ProblemKind.CLUB:
        return is_s_club(g, members, kind.s)
    return is_s_plex(g, members, kind.s)
