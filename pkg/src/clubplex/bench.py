"""Benchmark harness: run problem x variant grids over a manifest of graphs."""

import csv
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional, Union

from .errors import ClubplexError, ContractError, ParseError
from .graph import GRAPH_FORMATS, Graph, detect_format, load_graph
from .ordering import degeneracy_profile
from .problems import DEFAULT_PROBLEMS, ProblemDefinition, problem_label
from .solution import SolutionStatus
from .solvers import Variant, VariantConfig, turing_kernel_solve

logger = logging.getLogger(__name__)

RESULTS_HEADER = (
    "instance", "n", "m", "problem", "s", "variant", "x", "d_x",
    "solution", "gap", "runtime_seconds", "timed_out", "filtered",
)

# Runs faster than this are too noisy to analyze
DEFAULT_FLOOR_SECONDS = 0.05

# Per-cell wall-clock limit
DEFAULT_TIMEOUT_SECONDS = 60.0

DEFAULT_VARIANTS = (Variant.NOTK, Variant.FULL, Variant.DEFAULT, Variant.HINT)


class FilterScope(Enum):
    """Which rows a timeout or sub-floor run flags."""
    INSTANCE = "instance"  # every row of the instance
    PROBLEM = "problem"  # only rows of the same instance and problem


@dataclass(frozen=True)
class ManifestEntry:
    path: Path
    fmt: str

    @property
    def name(self) -> str:
        return self.path.stem


@dataclass
class BenchConfig:
    """Grid and limits for run_benchmark."""
    problems: list[ProblemDefinition] = field(default_factory=lambda: list(DEFAULT_PROBLEMS))
    variants: list[Variant] = field(default_factory=lambda: list(DEFAULT_VARIANTS))
    limit: float = DEFAULT_TIMEOUT_SECONDS
    floor: float = DEFAULT_FLOOR_SECONDS
    scope: FilterScope = FilterScope.INSTANCE
    jobs: int = 1  # instances run concurrently

    def __post_init__(self):
        if self.limit <= 0:
            raise ContractError("timeout must be positive")
        if self.floor < 0:
            raise ContractError("floor must be nonnegative")
        if self.jobs < 1:
            raise ContractError("jobs must be at least 1")


@dataclass
class BenchRecord:
    """One results.csv row."""
    instance: str
    n: Optional[int] = None
    m: Optional[int] = None
    problem: Optional[str] = None  # clique, club or plex
    s: Optional[int] = None
    variant: Optional[str] = None
    x: Optional[int] = None
    d_x: Optional[int] = None
    solution: Optional[int] = None  # empty when the cell timed out
    runtime_seconds: float = 0.0
    timed_out: bool = False
    filtered: bool = False
    error: Optional[str] = None  # not written; error rows only show up as filtered

    @property
    def gap(self) -> Optional[int]:
        if self.d_x is None or self.solution is None:
            return None
        return self.d_x - self.solution + 1

    @property
    def label(self) -> str:
        """Grid name of the problem, e.g. '3plex-2'."""
        if self.problem is None:
            return ""
        return problem_label(self.problem, self.s, self.x)

    def to_row(self) -> dict[str, str]:
        values = {
            "instance": self.instance,
            "n": self.n,
            "m": self.m,
            "problem": self.problem,
            "s": self.s,
            "variant": self.variant,
            "x": self.x,
            "d_x": self.d_x,
            "solution": self.solution,
            "gap": self.gap,
            "runtime_seconds": f"{self.runtime_seconds:.6f}",
            "timed_out": str(self.timed_out).lower(),
            "filtered": str(self.filtered).lower(),
        }
        return {key: "" if value is None else str(value) for key, value in values.items()}

    @classmethod
    def from_row(cls, row: dict[str, str], lineno: Optional[int] = None) -> "BenchRecord":
        def optional_int(key: str) -> Optional[int]:
            value = row.get(key, "")
            if value == "":
                return None
            try:
                return int(value)
            except ValueError:
                raise ParseError(f"column {key} is not an integer: {value!r}", line=lineno)

        try:
            runtime = float(row["runtime_seconds"])
        except (KeyError, ValueError):
            raise ParseError("bad runtime_seconds", line=lineno)
        record = cls(
            instance=row["instance"],
            n=optional_int("n"),
            m=optional_int("m"),
            problem=row["problem"] or None,
            s=optional_int("s"),
            variant=row["variant"] or None,
            x=optional_int("x"),
            d_x=optional_int("d_x"),
            solution=optional_int("solution"),
            runtime_seconds=runtime,
            timed_out=row["timed_out"] == "true",
            filtered=row["filtered"] == "true",
        )
        stored_gap = optional_int("gap")
        if stored_gap != record.gap:
            raise ParseError(f"gap {stored_gap} does not match d_x - solution + 1", line=lineno)
        return record


def parse_manifest(text: str, base_dir: Union[str, Path] = ".") -> list[ManifestEntry]:
    """Lines of '<path> [format]'; relative paths resolve against base_dir."""
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) > 2:
            raise ParseError("expected '<path> <format>'", line=lineno)
        path = Path(parts[0])
        if not path.is_absolute():
            path = Path(base_dir) / path
        fmt = parts[1] if len(parts) == 2 else detect_format(path)
        if fmt not in GRAPH_FORMATS:
            raise ParseError(f"unknown graph format {fmt!r}", line=lineno)
        entries.append(ManifestEntry(path, fmt))
    return entries


def load_manifest(path: Union[str, Path]) -> list[ManifestEntry]:
    path = Path(path)
    return parse_manifest(path.read_text(), base_dir=path.parent)


def _run_cell(
    g: Graph,
    name: str,
    problem: ProblemDefinition,
    variant: Variant,
    d_x: int,
    limit: float,
    hint_value: Optional[int] = None,
) -> BenchRecord:
    cfg = VariantConfig(variant=variant, x=problem.x, hint_value=hint_value, deadline=limit)
    started = time.perf_counter()
    solution = turing_kernel_solve(g, problem.candidate, cfg)
    runtime = time.perf_counter() - started

    timed_out = solution.status is SolutionStatus.TIMEOUT
    record = BenchRecord(
        instance=name,
        n=g.n,
        m=g.m,
        problem=problem.kind.value,
        s=problem.s,
        variant=variant.value,
        x=problem.x,
        d_x=d_x,
        solution=None if timed_out else solution.size,
        runtime_seconds=limit if timed_out else runtime,
        timed_out=timed_out,
    )
    logger.info(
        "%s %s %s: solution=%s runtime=%.3fs%s",
        name, problem.name, variant.value, record.solution, record.runtime_seconds,
        " (timed out)" if timed_out else "",
    )
    return record


def _hint_for(g: Graph, problem: ProblemDefinition, done: list[BenchRecord], limit: float) -> Optional[int]:
    """Optimum from a finished full/default cell, else from an unrecorded default solve."""
    for record in done:
        if record.variant in (Variant.FULL.value, Variant.DEFAULT.value) and record.solution is not None:
            return record.solution
    cfg = VariantConfig(variant=Variant.DEFAULT, x=problem.x, deadline=limit)
    solution = turing_kernel_solve(g, problem.candidate, cfg)
    if solution.status is SolutionStatus.TIMEOUT:
        return None
    return solution.size


def run_instance(entry: ManifestEntry, config: BenchConfig) -> list[BenchRecord]:
    """All grid cells for one instance, in problem then variant order."""
    try:
        g = load_graph(entry.path, entry.fmt)
    except (OSError, ClubplexError) as e:
        logger.warning("skipping %s: %s", entry.path, e)
        return [BenchRecord(instance=entry.name, filtered=True, error=str(e))]

    radii = sorted({1, 2, 3} | {problem.x for problem in config.problems})
    profile = degeneracy_profile(g, radii)

    records = []
    for problem in config.problems:
        cells: dict[Variant, BenchRecord] = {}
        for variant in config.variants:
            if variant is not Variant.HINT:
                cells[variant] = _run_cell(g, entry.name, problem, variant, profile[problem.x], config.limit)
        if Variant.HINT in config.variants:
            hint_value = _hint_for(g, problem, list(cells.values()), config.limit)
            if hint_value is None:
                cells[Variant.HINT] = BenchRecord(
                    instance=entry.name, n=g.n, m=g.m, problem=problem.kind.value, s=problem.s,
                    variant=Variant.HINT.value, x=problem.x, d_x=profile[problem.x],
                    runtime_seconds=config.limit, timed_out=True,
                )
            else:
                cells[Variant.HINT] = _run_cell(
                    g, entry.name, problem, Variant.HINT, profile[problem.x], config.limit, hint_value
                )
        records.extend(cells[variant] for variant in config.variants)
    return records


def apply_filter(records: Iterable[BenchRecord], floor: float, scope: FilterScope = FilterScope.INSTANCE) -> list[BenchRecord]:
    """Flag every row sharing a group with a timed-out or sub-floor run."""
    records = list(records)

    def group(record: BenchRecord) -> tuple:
        if scope is FilterScope.INSTANCE:
            return (record.instance,)
        return (record.instance, record.label)

    flagged = {
        group(record)
        for record in records
        if record.error is None and (record.timed_out or record.runtime_seconds < floor)
    }
    for record in records:
        record.filtered = record.error is not None or group(record) in flagged
    return records


def run_benchmark(manifest: Iterable[ManifestEntry], config: Optional[BenchConfig] = None) -> list[BenchRecord]:
    """Run the grid on every instance; rows come back filtered but never dropped."""
    config = config or BenchConfig()
    entries = list(manifest)
    records: list[BenchRecord] = []
    if config.jobs > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            for chunk in pool.map(run_instance, entries, [config] * len(entries)):
                records.extend(chunk)
    else:
        for entry in entries:
            records.extend(run_instance(entry, config))
    return apply_filter(records, config.floor, config.scope)


def write_results(records: Iterable[BenchRecord], path: Union[str, Path]) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=RESULTS_HEADER, lineterminator="\n")
        writer.writeheader()
        for record in records:
            writer.writerow(record.to_row())


def read_results(path: Union[str, Path]) -> list[BenchRecord]:
    with open(path, newline="") as f:
        reader = csv.DictReader(f)
        if tuple(reader.fieldnames or ()) != RESULTS_HEADER:
            raise ParseError(f"unexpected results header in {path}", line=1)
        return [BenchRecord.from_row(row, lineno) for lineno, row in enumerate(reader, start=2)]
