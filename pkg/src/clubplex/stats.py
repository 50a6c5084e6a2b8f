"""Runtime analysis: Pearson correlation, exponential fits and CSV tables over bench records."""

import csv
import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

import numpy as np
from scipy import stats as sps

from .bench import BenchRecord
from .errors import ContractError

logger = logging.getLogger(__name__)

CORRELATION_PARAMETERS = ("n", "d_x", "gap")
SCATTER_PARAMETERS = ("n", "m", "d_x", "solution", "gap", "runtime_seconds")

CORRELATION_HEADER = (
    "problem", "variant", "parameter", "pearson_r", "pearson_r_full",
    "fit_alpha", "fit_beta", "sample_count", "excluded_count",
)
SUMMARY_HEADER = (
    "problem", "variant", "mean_runtime_seconds", "median_runtime_seconds",
    "sample_count", "excluded_count",
)
COMPARISON_HEADER = ("instance", "problem", "runtime_a", "runtime_b")

# Written in place of an undefined statistic
NA = "na"


def pearson(xs: Sequence[float], ys: Sequence[float]) -> Optional[float]:
    """Sample Pearson coefficient, or None when either series is constant."""
    if len(xs) != len(ys):
        raise ContractError(f"series lengths differ: {len(xs)} != {len(ys)}")
    if len(xs) < 2:
        raise ContractError("pearson needs at least two points")
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        return None
    return float(sps.pearsonr(x, y)[0])


def fit_exponential(params: Sequence[float], runtimes: Sequence[float]) -> tuple[float, float]:
    """Least-squares fit of ln t = p ln(alpha) + ln(beta); returns (alpha, beta)."""
    if len(params) != len(runtimes):
        raise ContractError(f"series lengths differ: {len(params)} != {len(runtimes)}")
    t = np.asarray(runtimes, dtype=float)
    if np.any(t <= 0):
        raise ContractError("runtimes must be positive to take logarithms")
    p = np.asarray(params, dtype=float)
    if len(np.unique(p)) < 2:
        raise ContractError("fit needs at least two distinct parameter values")
    fit = sps.linregress(p, np.log(t))
    return math.exp(fit.slope), math.exp(fit.intercept)


def polynomial_factor(record: BenchRecord) -> float:
    """Polynomial part of the proven running time for the record's problem."""
    d = max(record.d_x, 1)
    if record.problem == "club" or (record.problem == "plex" and record.x != record.s):
        return float(d ** 3 * record.n)
    return float(d ** 2 * record.n)


def parameter_value(record: BenchRecord, parameter: str, gap_offset: int = 1) -> float:
    if parameter == "gap":
        return record.d_x - record.solution + gap_offset
    if parameter not in SCATTER_PARAMETERS:
        raise ContractError(f"unknown parameter {parameter!r}, expected one of {SCATTER_PARAMETERS}")
    return getattr(record, parameter)


def _analyzable(record: BenchRecord) -> bool:
    return (
        record.error is None
        and not record.filtered
        and record.solution is not None
        and record.d_x is not None
        and record.runtime_seconds > 0
    )


def _grouped(records: Iterable[BenchRecord]) -> dict[tuple[str, str], list[BenchRecord]]:
    """Records per (problem label, variant), in first-appearance order."""
    groups: dict[tuple[str, str], list[BenchRecord]] = defaultdict(list)
    for record in records:
        if record.error is None and record.variant is not None:
            groups[(record.label, record.variant)].append(record)
    return groups


@dataclass
class CorrelationRow:
    problem: str
    variant: str
    parameter: str
    pearson_r: Optional[float]
    fit_alpha: Optional[float]
    fit_beta: Optional[float]
    sample_count: int
    excluded_count: int

    def to_row(self) -> dict[str, str]:
        return {
            "problem": self.problem,
            "variant": self.variant,
            "parameter": self.parameter,
            "pearson_r": NA if self.pearson_r is None else f"{self.pearson_r:.2f}",
            "pearson_r_full": NA if self.pearson_r is None else repr(self.pearson_r),
            "fit_alpha": NA if self.fit_alpha is None else repr(self.fit_alpha),
            "fit_beta": NA if self.fit_beta is None else repr(self.fit_beta),
            "sample_count": str(self.sample_count),
            "excluded_count": str(self.excluded_count),
        }


@dataclass
class CorrelationReport:
    rows: list[CorrelationRow] = field(default_factory=list)

    @property
    def is_empty(self) -> bool:
        """True when filtering left nothing to analyze."""
        return all(row.sample_count == 0 for row in self.rows)

    def row(self, problem: str, variant: str, parameter: str) -> Optional[CorrelationRow]:
        for row in self.rows:
            if (row.problem, row.variant, row.parameter) == (problem, variant, parameter):
                return row
        return None


def correlation_table(
    records: Iterable[BenchRecord],
    gap_offset: int = 1,
    adjust_polynomial: bool = False,
) -> CorrelationReport:
    """Correlate n, d_x and gap with ln(runtime) per (problem, variant).

    Filtered rows are excluded and counted. With adjust_polynomial the
    runtime is first divided by polynomial_factor.
    """
    report = CorrelationReport()
    for (problem, variant), group in _grouped(records).items():
        usable = [record for record in group if _analyzable(record)]
        excluded = len(group) - len(usable)
        runtimes = [
            record.runtime_seconds / polynomial_factor(record) if adjust_polynomial else record.runtime_seconds
            for record in usable
        ]
        log_runtimes = [math.log(t) for t in runtimes]
        for parameter in CORRELATION_PARAMETERS:
            values = [parameter_value(record, parameter, gap_offset) for record in usable]
            r = pearson(values, log_runtimes) if len(usable) >= 2 else None
            try:
                alpha, beta = fit_exponential(values, runtimes)
            except ContractError:
                alpha = beta = None
            report.rows.append(CorrelationRow(problem, variant, parameter, r, alpha, beta, len(usable), excluded))
    if report.is_empty:
        logger.warning("no unfiltered records left to correlate")
    return report


@dataclass
class SummaryRow:
    problem: str
    variant: str
    mean_runtime: Optional[float]
    median_runtime: Optional[float]
    sample_count: int
    excluded_count: int

    def to_row(self) -> dict[str, str]:
        return {
            "problem": self.problem,
            "variant": self.variant,
            "mean_runtime_seconds": NA if self.mean_runtime is None else f"{self.mean_runtime:.6f}",
            "median_runtime_seconds": NA if self.median_runtime is None else f"{self.median_runtime:.6f}",
            "sample_count": str(self.sample_count),
            "excluded_count": str(self.excluded_count),
        }


def summary_table(records: Iterable[BenchRecord]) -> list[SummaryRow]:
    """Mean and median runtime of unfiltered rows per (problem, variant)."""
    rows = []
    for (problem, variant), group in _grouped(records).items():
        runtimes = np.array([record.runtime_seconds for record in group if not record.filtered])
        if len(runtimes):
            mean, median = float(np.mean(runtimes)), float(np.median(runtimes))
        else:
            mean = median = None
        rows.append(SummaryRow(problem, variant, mean, median, len(runtimes), len(group) - len(runtimes)))
    return rows


def scatter_data(
    records: Iterable[BenchRecord],
    x_param: str,
    y_param: str,
    gap_offset: int = 1,
    problem: Optional[str] = None,
    variant: Optional[str] = None,
) -> list[tuple[float, float]]:
    """(x, y) pairs, one per unfiltered record, optionally for one problem or variant."""
    for param in (x_param, y_param):
        if param not in SCATTER_PARAMETERS:
            raise ContractError(f"unknown parameter {param!r}, expected one of {SCATTER_PARAMETERS}")
    pairs = []
    for record in records:
        if record.error is not None or record.filtered or record.solution is None:
            continue
        if problem is not None and record.label != problem:
            continue
        if variant is not None and record.variant != variant:
            continue
        pairs.append((parameter_value(record, x_param, gap_offset), parameter_value(record, y_param, gap_offset)))
    return pairs


@dataclass
class ComparisonRow:
    instance: str
    problem: str
    runtime_a: float
    runtime_b: float


def comparison_data(records: Iterable[BenchRecord], variant_a: str, variant_b: str) -> list[ComparisonRow]:
    """Runtimes of two variants on the same unfiltered (instance, problem) cells."""
    cells: dict[tuple[str, str], dict[str, float]] = defaultdict(dict)
    for record in records:
        if record.error is None and not record.filtered and record.variant in (variant_a, variant_b):
            cells[(record.instance, record.label)][record.variant] = record.runtime_seconds
    return [
        ComparisonRow(instance, problem, runtimes[variant_a], runtimes[variant_b])
        for (instance, problem), runtimes in cells.items()
        if variant_a in runtimes and variant_b in runtimes
    ]


def _write_csv(path: Union[str, Path], header: Sequence[str], rows: Iterable[dict[str, str]]) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=header, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)


def write_correlations(report: CorrelationReport, path: Union[str, Path]) -> None:
    _write_csv(path, CORRELATION_HEADER, (row.to_row() for row in report.rows))


def write_summary(rows: Iterable[SummaryRow], path: Union[str, Path]) -> None:
    _write_csv(path, SUMMARY_HEADER, (row.to_row() for row in rows))


def write_scatter(pairs: Iterable[tuple[float, float]], x_param: str, y_param: str, path: Union[str, Path]) -> None:
    if x_param == y_param:
        y_column = f"{y_param}_y"
    else:
        y_column = y_param
    _write_csv(path, (x_param, y_column), ({x_param: str(x), y_column: str(y)} for x, y in pairs))


def write_comparison(rows: Iterable[ComparisonRow], path: Union[str, Path]) -> None:
    _write_csv(path, COMPARISON_HEADER, (
        {
            "instance": row.instance,
            "problem": row.problem,
            "runtime_a": f"{row.runtime_a:.6f}",
            "runtime_b": f"{row.runtime_b:.6f}",
        }
        for row in rows
    ))
