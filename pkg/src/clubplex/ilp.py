"""ILP formulations for s-plex, 2-club and 3-club, LP-file export and feasibility checks.

No solver is invoked: models are written in CPLEX LP format for external
solvers, and evaluate_assignment checks a fixed vertex set against the
constraints with exact integer arithmetic.
"""

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

from .errors import ContractError, ParseError
from .graph import Graph, all_pairs_distances

# Longest LP line before a row wraps
LP_LINE_SIZE = 78

ILP_PROBLEMS = ("plex", "2club", "3club")


class VarDomain(Enum):
    BINARY = "binary"
    INTEGER = "integer"
    CONTINUOUS = "continuous"


class Relation(Enum):
    LE = "<="
    EQ = "="
    GE = ">="


Term = tuple[int, str]  # (coefficient, variable name)


@dataclass(frozen=True)
class Variable:
    name: str
    domain: VarDomain
    lower: int = 0
    upper: int = 1


@dataclass(frozen=True)
class Constraint:
    name: str
    terms: tuple[Term, ...]
    relation: Relation
    rhs: int

    def holds(self, values: dict[str, int]) -> bool:
        lhs = sum(coef * values[name] for coef, name in self.terms)
        if self.relation is Relation.LE:
            return lhs <= self.rhs
        if self.relation is Relation.GE:
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass
class IlpModel:
    """A maximization model over one graph's vertices."""
    name: str
    vertex_count: int
    variables: list[Variable]
    objective: tuple[Term, ...]
    constraints: list[Constraint]
    edges: tuple[tuple[int, int], ...] = ()  # endpoints of z<j>, for 3-club models

    def __post_init__(self):
        names = [var.name for var in self.variables]
        if len(set(names)) != len(names):
            raise ContractError("variable names must be unique")
        declared = set(names)
        for constraint in self.constraints:
            for _, name in constraint.terms:
                if name not in declared:
                    raise ContractError(f"constraint {constraint.name} uses undeclared variable {name}")
        for _, name in self.objective:
            if name not in declared:
                raise ContractError(f"objective uses undeclared variable {name}")

    @property
    def nonzeros(self) -> int:
        return sum(len(constraint.terms) for constraint in self.constraints)


def _x(v: int) -> str:
    return f"x{v}"


def _vertex_variables(g: Graph) -> list[Variable]:
    return [Variable(_x(v), VarDomain.BINARY) for v in range(g.n)]


def build_plex_model(g: Graph, s: int) -> IlpModel:
    """y = sum x_v and |V|(1 - x_v) + sum_{u in N(v)} x_u >= y - s per vertex.

    Connectivity is not encoded.
    """
    if s < 1:
        raise ContractError("s must be at least 1")
    n = g.n
    variables = _vertex_variables(g) + [Variable("y", VarDomain.INTEGER, 0, n)]
    constraints = [
        Constraint("size", tuple((1, _x(v)) for v in range(n)) + ((-1, "y"),), Relation.EQ, 0)
    ]
    for v in range(n):
        # |V| - |V| x_v + sum x_u - y >= -s, constant moved to the right
        terms = ((-n, _x(v)),) + tuple((1, _x(u)) for u in g.adjacency[v]) + ((-1, "y"),)
        constraints.append(Constraint(f"deg_{v}", terms, Relation.GE, -s - n))
    return IlpModel(f"{s}plex", n, variables, ((1, "y"),), constraints)


def _pairs_by_distance(g: Graph) -> Iterable[tuple[int, int, Optional[int]]]:
    """Non-adjacent pairs u < v with their host distance (None when unreachable)."""
    dist = all_pairs_distances(g)
    for u in range(g.n):
        for v in range(u + 1, g.n):
            d = dist[u].get(v)
            if d != 1:
                yield u, v, d


def _common_terms(g: Graph, u: int, v: int) -> tuple[Term, ...]:
    common = g.neighbor_sets[u] & g.neighbor_sets[v]
    return tuple((-1, _x(c)) for c in sorted(common))


def bridging_edges(g: Graph, u: int, v: int) -> list[tuple[int, int]]:
    """E_uv: edges {p, q} with p in N(u) \\ N(v) and q in N(v) \\ N(u)."""
    only_u = g.neighbor_sets[u] - g.neighbor_sets[v]
    only_v = g.neighbor_sets[v] - g.neighbor_sets[u]
    bridges = set()
    for p in only_u:
        for q in g.neighbor_sets[p] & only_v:
            bridges.add((min(p, q), max(p, q)))
    return sorted(bridges)


def build_2club_model(g: Graph) -> IlpModel:
    """Pairs beyond distance 2 exclude each other; distance-2 pairs need a common neighbor."""
    constraints = []
    for u, v, d in _pairs_by_distance(g):
        pair = ((1, _x(u)), (1, _x(v)))
        if d is None or d > 2:
            constraints.append(Constraint(f"far_{u}_{v}", pair, Relation.LE, 1))
        else:
            constraints.append(Constraint(f"two_{u}_{v}", pair + _common_terms(g, u, v), Relation.LE, 1))
    objective = tuple((1, _x(v)) for v in range(g.n))
    return IlpModel("2club", g.n, _vertex_variables(g), objective, constraints)


def build_3club_model(g: Graph) -> IlpModel:
    """Neighborhood formulation with one continuous z per edge bridging distance-3 pairs."""
    edges = tuple(g.edges())
    edge_index = {edge: j for j, edge in enumerate(edges)}
    variables = _vertex_variables(g) + [
        Variable(f"z{j}", VarDomain.CONTINUOUS, 0, 1) for j in range(len(edges))
    ]

    constraints = []
    for u, v, d in _pairs_by_distance(g):
        pair = ((1, _x(u)), (1, _x(v)))
        if d is None or d > 3:
            constraints.append(Constraint(f"far_{u}_{v}", pair, Relation.LE, 1))
            continue
        bridges = tuple((-1, f"z{edge_index[e]}") for e in bridging_edges(g, u, v))
        constraints.append(
            Constraint(f"near_{u}_{v}", pair + _common_terms(g, u, v) + bridges, Relation.LE, 1)
        )
    for j, (a, b) in enumerate(edges):
        for end in (a, b):
            constraints.append(Constraint(f"cap_{j}_{end}", ((1, f"z{j}"), (-1, _x(end))), Relation.LE, 0))

    objective = tuple((1, _x(v)) for v in range(g.n))
    return IlpModel("3club", g.n, variables, objective, constraints, edges=edges)


def model_for(problem: str, g: Graph, s: Optional[int] = None) -> IlpModel:
    """Build the formulation named by problem ('plex', '2club' or '3club')."""
    if problem == "plex":
        if s is None:
            raise ContractError("the plex formulation needs s")
        return build_plex_model(g, s)
    if problem == "2club":
        return build_2club_model(g)
    if problem == "3club":
        return build_3club_model(g)
    raise ContractError(f"unknown formulation {problem!r}, expected one of {ILP_PROBLEMS}")


def evaluate_assignment(model: IlpModel, selected: Iterable[int]) -> tuple[bool, int]:
    """Feasibility and objective of x_v = [v in selected].

    Auxiliary variables take their canonical values: y = |selected| and
    z_e = min(x_a, x_b).
    """
    selected = frozenset(selected)
    for v in selected:
        if not 0 <= v < model.vertex_count:
            raise ContractError(f"vertex {v} outside the model's [0, {model.vertex_count})")

    values = {}
    for var in model.variables:
        if var.name == "y":
            values["y"] = len(selected)
        elif var.name.startswith("x"):
            values[var.name] = int(int(var.name[1:]) in selected)
        elif var.name.startswith("z"):
            a, b = model.edges[int(var.name[1:])]
            values[var.name] = min(int(a in selected), int(b in selected))
        else:
            raise ContractError(f"no canonical value for variable {var.name}")

    feasible = all(constraint.holds(values) for constraint in model.constraints)
    objective = sum(coef * values[name] for coef, name in model.objective)
    return feasible, objective


def _format_terms(label: str, terms: tuple[Term, ...], tail: str = "") -> list[str]:
    """Render 'label: terms tail', wrapping rows longer than LP_LINE_SIZE."""
    lines = []
    line = f"{label}:"
    pieces = []
    for i, (coef, name) in enumerate(terms):
        if coef < 0:
            sign = " -"
        elif i:
            sign = " +"
        else:
            sign = ""
        magnitude = abs(coef)
        pieces.append(f"{sign} {name}" if magnitude == 1 else f"{sign} {magnitude} {name}")
    if not terms:
        pieces.append(" 0")
    if tail:
        pieces.append(tail)
    for piece in pieces:
        if len(line) + len(piece) > LP_LINE_SIZE:
            lines.append(line)
            line = piece
        else:
            line += piece
    lines.append(line)
    return lines


def write_lp(model: IlpModel) -> str:
    """Serialize a model to CPLEX LP text; identical models give identical bytes."""
    out = [f"\\* {model.name} *\\", f"\\ vertices {model.vertex_count}"]
    if model.edges:
        out.append("\\ edges " + " ".join(f"{a}-{b}" for a, b in model.edges))
    out.append("Maximize")
    out.extend(_format_terms("obj", model.objective))
    out.append("Subject To")
    for constraint in model.constraints:
        tail = f" {constraint.relation.value} {constraint.rhs}"
        out.extend(_format_terms(constraint.name, constraint.terms, tail))

    bounded = [var for var in model.variables if var.domain is not VarDomain.BINARY]
    if bounded:
        out.append("Bounds")
        out.extend(f"{var.lower} <= {var.name} <= {var.upper}" for var in bounded)
    generals = [var.name for var in model.variables if var.domain is VarDomain.INTEGER]
    if generals:
        out.append("Generals")
        out.extend(generals)
    binaries = [var.name for var in model.variables if var.domain is VarDomain.BINARY]
    if binaries:
        out.append("Binaries")
        out.extend(binaries)
    out.append("End")
    return "\n".join(out) + "\n"


_ROW_PATTERN = re.compile(r"^(?P<name>[^:\s]+):(?P<expr>.*?)\s(?P<rel><=|>=|=)\s(?P<rhs>-?\d+)\s*$")
_BOUND_PATTERN = re.compile(r"^(-?\d+)\s*<=\s*(\S+)\s*<=\s*(-?\d+)$")
_SECTIONS = ("Maximize", "Subject To", "Bounds", "Generals", "Binaries", "End")


def _parse_terms(expr: str, lineno: int) -> tuple[Term, ...]:
    terms = []
    sign, coef = 1, 1
    for token in expr.split():
        if token == "+":
            sign = 1
        elif token == "-":
            sign = -1
        elif re.fullmatch(r"\d+", token):
            coef = int(token)
        elif token == "0" or re.fullmatch(r"[A-Za-z_]\w*", token) is None:
            raise ParseError(f"unexpected token {token!r}", line=lineno)
        else:
            terms.append((sign * coef, token))
            sign, coef = 1, 1
    return tuple(terms)


def parse_lp(text: str) -> IlpModel:
    """Read back the LP dialect produced by write_lp."""
    name, vertex_count, edges = "", 0, ()
    section = None
    rows: list[tuple[int, str]] = []
    objective_text = ""
    bounds: list[tuple[str, int, int]] = []
    generals: list[str] = []
    binaries: list[str] = []

    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.startswith("\\*"):
            name = line.strip("\\* ")
            continue
        if line.startswith("\\ vertices"):
            vertex_count = int(line.split()[2])
            continue
        if line.startswith("\\ edges"):
            edges = tuple(tuple(int(v) for v in pair.split("-")) for pair in line.split()[2:])
            continue
        if line.strip() in _SECTIONS:
            section = line.strip()
            continue
        if section == "Maximize":
            objective_text += line
        elif section == "Subject To":
            if line[:1].isspace() and rows:
                rows[-1] = (rows[-1][0], rows[-1][1] + line)
            else:
                rows.append((lineno, line))
        elif section == "Bounds":
            match = _BOUND_PATTERN.match(line.strip())
            if not match:
                raise ParseError("expected 'lo <= name <= hi'", line=lineno)
            bounds.append((match.group(2), int(match.group(1)), int(match.group(3))))
        elif section == "Generals":
            generals.append(line.strip())
        elif section == "Binaries":
            binaries.append(line.strip())
        elif line.strip():
            raise ParseError("content outside any section", line=lineno)

    if not objective_text.startswith("obj:"):
        raise ParseError("missing objective row")
    objective = _parse_terms(objective_text[len("obj:"):], 0)

    constraints = []
    for lineno, row in rows:
        match = _ROW_PATTERN.match(row)
        if not match:
            raise ParseError("malformed constraint row", line=lineno)
        constraints.append(Constraint(
            match.group("name"),
            _parse_terms(match.group("expr"), lineno),
            Relation(match.group("rel")),
            int(match.group("rhs")),
        ))

    variables = [Variable(var, VarDomain.BINARY) for var in binaries]
    for var, lower, upper in bounds:
        domain = VarDomain.INTEGER if var in generals else VarDomain.CONTINUOUS
        variables.append(Variable(var, domain, lower, upper))
    return IlpModel(name, vertex_count, variables, objective, constraints, edges=edges)
