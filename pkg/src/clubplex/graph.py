"""Undirected simple graphs: parsing, serialization, BFS and induced subgraphs."""

import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import BinaryIO, Collection, Iterable, Iterator, Optional, TextIO, Union

import networkx as nx

from .errors import ContractError, ParseError

logger = logging.getLogger(__name__)

# A set of vertex ids interpreted against one Graph.
VertexSet = frozenset

GraphText = Union[str, TextIO, Iterable[str]]

EDGELIST = "edgelist"
DIMACS = "dimacs"
GRAPH_FORMATS = (EDGELIST, DIMACS)

# File suffixes read as DIMACS when no format is given
DIMACS_SUFFIXES = (".dimacs", ".clq", ".col")


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph on the vertices 0..n-1."""
    adjacency: tuple[tuple[int, ...], ...]  # sorted neighbor ids per vertex
    labels: Optional[tuple[str, ...]] = None  # original vertex names, if any

    def __post_init__(self):
        if self.labels is not None and len(self.labels) != len(self.adjacency):
            raise ContractError("labels must name every vertex exactly once")

    @property
    def n(self) -> int:
        return len(self.adjacency)

    @cached_property
    def m(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    @cached_property
    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        """Adjacency as frozensets, for O(1) membership tests."""
        return tuple(frozenset(nbrs) for nbrs in self.adjacency)

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {self.label(v): v for v in range(self.n)}

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbor_sets[u]

    def label(self, v: int) -> str:
        """Original name of vertex v (its id when the graph has no labels)."""
        return self.labels[v] if self.labels is not None else str(v)

    def vertex_of(self, label: str) -> int:
        """Vertex id carrying the given original label."""
        try:
            return self._label_index[label]
        except KeyError:
            raise ContractError(f"unknown vertex label {label!r}") from None

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as (u, v) with u < v, in lexicographic order."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield u, v

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: Optional[Iterable[str]] = None,
    ) -> "Graph":
        """Build a graph, silently dropping self-loops and duplicate edges."""
        if n < 0:
            raise ContractError("vertex count must be nonnegative")
        neighbor_sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ContractError(f"edge ({u}, {v}) outside vertex range [0, {n})")
            if u == v:
                continue
            neighbor_sets[u].add(v)
            neighbor_sets[v].add(u)
        adjacency = tuple(tuple(sorted(nbrs)) for nbrs in neighbor_sets)
        return cls(adjacency, tuple(labels) if labels is not None else None)

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        """Convert a networkx graph; node order defines the vertex ids."""
        nodes = list(graph.nodes())
        index = {node: i for i, node in enumerate(nodes)}
        edges = ((index[u], index[v]) for u, v in graph.edges())
        return cls.from_edges(len(nodes), edges, labels=[str(node) for node in nodes])

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges())
        return graph

    @cached_property
    def nx_view(self) -> nx.Graph:
        """Frozen networkx copy shared by the component and distance helpers."""
        return nx.freeze(self.to_networkx())


def check_vertices(g: Graph, vertices: Iterable[int]) -> VertexSet:
    """Return vertices as a frozenset, raising if any id is out of range."""
    members = VertexSet(vertices)
    for v in members:
        if not isinstance(v, int) or not 0 <= v < g.n:
            raise ContractError(f"vertex {v!r} outside [0, {g.n})")
    return members


def _lines(text: GraphText) -> Iterable[str]:
    if isinstance(text, str):
        return text.splitlines()
    return text


def parse_edge_list(text: GraphText) -> Graph:
    """Parse a whitespace-separated edge list.

    Lines starting with '%' or '#' are comments. Tokens may be arbitrary
    strings; they become vertices 0..n-1 in order of first appearance.
    Two '#' headers written by serialize_edge_list are honoured:
    '# isolated <label>...' adds vertices without edges and '# n <count>'
    is checked against the vertices found.
    """
    index: dict[str, int] = {}
    labels: list[str] = []
    edges: list[tuple[int, int]] = []
    declared_n: Optional[int] = None

    def vertex(token: str) -> int:
        if token not in index:
            index[token] = len(labels)
            labels.append(token)
        return index[token]

    for lineno, raw in enumerate(_lines(text), start=1):
        line = raw.strip()
        if not line or line[0] == "%":
            continue
        if line[0] == "#":
            header = line[1:].split()
            if header[:1] == ["isolated"]:
                for token in header[1:]:
                    vertex(token)
            elif len(header) == 2 and header[0] == "n" and header[1].isdigit():
                declared_n = int(header[1])
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"expected 2 tokens, found {len(tokens)}", line=lineno)
        edges.append((vertex(tokens[0]), vertex(tokens[1])))

    if declared_n is not None and declared_n != len(labels):
        logger.warning("edge list header declares %d vertices, found %d", declared_n, len(labels))
    return Graph.from_edges(len(labels), edges, labels=labels)


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, found {token!r}", line=lineno) from None


def parse_dimacs(text: GraphText) -> Graph:
    """Parse DIMACS 'p edge n m' / 'e u v' text with 1-based vertex ids."""
    n: Optional[int] = None
    declared_m = 0
    edges: list[tuple[int, int]] = []

    for lineno, raw in enumerate(_lines(text), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if n is not None:
                raise ParseError("duplicate 'p' line", line=lineno)
            if len(tokens) != 4:
                raise ParseError("expected 'p edge <n> <m>'", line=lineno)
            n = _parse_int(tokens[2], lineno)
            declared_m = _parse_int(tokens[3], lineno)
            if n < 0:
                raise ParseError("negative vertex count", line=lineno)
        elif tokens[0] == "e":
            if n is None:
                raise ParseError("'e' line before the 'p' line", line=lineno)
            if len(tokens) < 3:
                raise ParseError("expected 'e <u> <v>'", line=lineno)
            u = _parse_int(tokens[1], lineno)
            v = _parse_int(tokens[2], lineno)
            for w in (u, v):
                if not 1 <= w <= n:
                    raise ParseError(f"vertex {w} outside [1, {n}]", line=lineno)
            edges.append((u - 1, v - 1))
        else:
            raise ParseError(f"unknown line type {tokens[0]!r}", line=lineno)

    if n is None:
        raise ParseError("missing 'p edge <n> <m>' line")
    if len(edges) != declared_m:
        logger.warning("DIMACS header declares %d edges, found %d 'e' lines", declared_m, len(edges))

    return Graph.from_edges(n, edges, labels=[str(v + 1) for v in range(n)])


def serialize_edge_list(g: Graph) -> str:
    """Edge list with '#' header comments; parse_edge_list reads it back, isolated vertices included."""
    lines = [f"# n {g.n}", f"# m {g.m}"]
    isolated = [g.label(v) for v in range(g.n) if not g.adjacency[v]]
    if isolated:
        lines.append("# isolated " + " ".join(isolated))
    lines.extend(f"{g.label(u)} {g.label(v)}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def serialize_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def detect_format(path: Path) -> str:
    """Guess the graph format from the file suffix."""
    return DIMACS if path.suffix.lower() in DIMACS_SUFFIXES else EDGELIST


def load_graph(path: Union[str, Path], fmt: Optional[str] = None) -> Graph:
    """Read a graph file in edge-list or DIMACS format."""
    path = Path(path)
    fmt = fmt or detect_format(path)
    if fmt not in GRAPH_FORMATS:
        raise ContractError(f"unknown graph format {fmt!r}, expected one of {GRAPH_FORMATS}")
    with path.open("rb") as handle:
        lines = _decoded_lines(handle)
        return parse_dimacs(lines) if fmt == DIMACS else parse_edge_list(lines)


def _decoded_lines(handle: BinaryIO) -> Iterator[str]:
    for lineno, raw in enumerate(handle, start=1):
        try:
            yield raw.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(f"invalid UTF-8 at byte {e.start}", line=lineno) from None


def write_graph(g: Graph, path: Union[str, Path], fmt: str = EDGELIST) -> None:
    if fmt not in GRAPH_FORMATS:
        raise ContractError(f"unknown graph format {fmt!r}, expected one of {GRAPH_FORMATS}")
    text = serialize_dimacs(g) if fmt == DIMACS else serialize_edge_list(g)
    Path(path).write_text(text, encoding="utf-8")


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Return G[vertices] and the mapping from its ids back to ids of g.

    New ids follow ascending order of the original ids.
    """
    members = sorted(check_vertices(g, vertices))
    position = {v: i for i, v in enumerate(members)}
    adjacency = tuple(
        tuple(position[u] for u in g.adjacency[v] if u in position)
        for v in members
    )
    labels = tuple(g.label(v) for v in members)
    return Graph(adjacency, labels), tuple(members)


def distances_from(
    g: Graph,
    source: int,
    within: Optional[Collection[int]] = None,
    cutoff: Optional[int] = None,
) -> dict[int, int]:
    """Breadth-first distances from source.

    Only vertices in `within` (all vertices when None) are traversed and
    only distances up to `cutoff` are explored. Unreachable vertices are
    absent from the result.
    """
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        d = dist[u]
        if cutoff is not None and d >= cutoff:
            continue
        for w in g.adjacency[u]:
            if w not in dist and (within is None or w in within):
                dist[w] = d + 1
                queue.append(w)
    return dist


def bounded_neighborhood(
    g: Graph,
    v: int,
    x: int,
    within: Optional[Collection[int]] = None,
) -> VertexSet:
    """N_x(v): vertices at distance 1..x from v (v itself excluded)."""
    if not 0 <= v < g.n:
        raise ContractError(f"vertex {v} outside [0, {g.n})")
    if x < 1:
        raise ContractError("neighborhood radius must be at least 1")
    reached = distances_from(g, v, within=within, cutoff=x)
    del reached[v]
    return VertexSet(reached)


def all_pairs_distances(g: Graph, within: Optional[Collection[int]] = None) -> dict[int, dict[int, int]]:
    """Distances between all pairs of (allowed) vertices; unreachable pairs are absent."""
    view = g.nx_view if within is None else g.nx_view.subgraph(check_vertices(g, within))
    return {v: dict(dist) for v, dist in nx.all_pairs_shortest_path_length(view)}


def connected_components(g: Graph, within: Optional[Collection[int]] = None) -> list[VertexSet]:
    """Components of G[within], ordered by their smallest vertex."""
    view = g.nx_view if within is None else g.nx_view.subgraph(within)
    return sorted((VertexSet(component) for component in nx.connected_components(view)), key=min)


def diameter(g: Graph, members: Iterable[int]) -> Optional[int]:
    """Diameter of G[members]; None when the induced subgraph is disconnected."""
    members = check_vertices(g, members)
    if len(members) <= 1:
        return 0
    view = g.nx_view.subgraph(members)
    if not nx.is_connected(view):
        return None
    return nx.diameter(view)
