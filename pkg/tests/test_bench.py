"""Tests for bench.py module."""

import pytest
from pathlib import Path

import sys
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from clubplex.bench import (
    RESULTS_HEADER,
    BenchConfig,
    BenchRecord,
    FilterScope,
    ManifestEntry,
    apply_filter,
    load_manifest,
    parse_manifest,
    read_results,
    run_benchmark,
    write_results,
)
from clubplex.errors import ContractError, ParseError
from clubplex.generators import generate_random_graph
from clubplex.graph import DIMACS, EDGELIST, write_graph
from clubplex.problems import ProblemRegistry
from clubplex.solvers import Variant
from clubplex.stats import correlation_table

HEADER_LINE = "instance,n,m,problem,s,variant,x,d_x,solution,gap,runtime_seconds,timed_out,filtered"


def write_instances(directory, count, n=8, p=0.4):
    entries = []
    for i in range(count):
        path = directory / f"g{i}.txt"
        write_graph(generate_random_graph(n, p, seed=i), path)
        entries.append(ManifestEntry(path, EDGELIST))
    return entries


class TestManifest:
    """Tests for manifest parsing."""

    def test_parse_entries(self, temp_dir):
        """Test paths, formats, comments and format inference."""
        text = "# suite\na.txt edgelist\nb.clq  # trailing comment\n\n/abs/c.txt dimacs\n"

        entries = parse_manifest(text, base_dir=temp_dir)

        assert entries == [
            ManifestEntry(temp_dir / "a.txt", EDGELIST),
            ManifestEntry(temp_dir / "b.clq", DIMACS),
            ManifestEntry(Path("/abs/c.txt"), DIMACS),
        ]
        assert entries[0].name == "a"

    def test_unknown_format(self):
        """Test that an unknown format reports its line."""
        with pytest.raises(ParseError) as info:
            parse_manifest("a.txt edgelist\nb.txt graphml\n")

        assert info.value.line == 2

    def test_load_relative_to_manifest(self, temp_dir):
        """Test that load_manifest resolves paths next to the manifest."""
        (temp_dir / "m.txt").write_text("g.txt\n")

        assert load_manifest(temp_dir / "m.txt")[0].path == temp_dir / "g.txt"


class TestBenchRecord:
    """Tests for BenchRecord."""

    def test_gap(self):
        """Test gap = d_x - solution + 1."""
        assert BenchRecord("g", d_x=7, solution=4).gap == 4
        assert BenchRecord("g", d_x=7).gap is None

    def test_label(self):
        """Test the grid name of a record."""
        assert BenchRecord("g", problem="plex", s=3, x=2).label == "3plex-2"
        assert BenchRecord("g", problem="clique", s=1, x=1).label == "clique"

    def test_row_round_trip(self):
        """Test to_row and from_row."""
        original = BenchRecord(
            "g", n=5, m=4, problem="club", s=2, variant="full", x=2, d_x=3,
            solution=3, runtime_seconds=0.25, timed_out=False, filtered=True,
        )

        assert BenchRecord.from_row(original.to_row()) == original

    def test_inconsistent_gap(self):
        """Test that a stored gap disagreeing with d_x and solution is rejected."""
        row = BenchRecord("g", d_x=5, solution=2, runtime_seconds=1.0).to_row()
        row["gap"] = "9"

        with pytest.raises(ParseError):
            BenchRecord.from_row(row)


class TestBenchConfig:
    """Tests for BenchConfig validation."""

    def test_limit_must_be_positive(self):
        """Test that a zero timeout is rejected."""
        with pytest.raises(ContractError):
            BenchConfig(limit=0)

    def test_defaults(self):
        """Test the default grid."""
        config = BenchConfig()

        assert len(config.problems) == 6
        assert config.variants == [Variant.NOTK, Variant.FULL, Variant.DEFAULT, Variant.HINT]
        assert config.floor == 0.05


class TestApplyFilter:
    """Tests for apply_filter."""

    def test_instance_scope(self):
        """Test that one slow cell flags the whole instance."""
        records = [
            BenchRecord("a", problem="club", s=2, x=2, variant="full", runtime_seconds=1.0),
            BenchRecord("a", problem="plex", s=2, x=2, variant="full", runtime_seconds=60.0, timed_out=True),
            BenchRecord("b", problem="club", s=2, x=2, variant="full", runtime_seconds=1.0),
        ]

        flags = [r.filtered for r in apply_filter(records, floor=0.05)]

        assert flags == [True, True, False]

    def test_problem_scope(self):
        """Test that problem scope only flags the same problem."""
        records = [
            BenchRecord("a", problem="club", s=2, x=2, variant="full", runtime_seconds=1.0),
            BenchRecord("a", problem="plex", s=2, x=2, variant="full", runtime_seconds=0.01),
        ]

        flags = [r.filtered for r in apply_filter(records, floor=0.05, scope=FilterScope.PROBLEM)]

        assert flags == [False, True]


class TestRunBenchmark:
    """Tests for run_benchmark."""

    def test_empty_manifest(self):
        """Test that no instances give no rows."""
        assert run_benchmark([]) == []

    def test_variants_agree(self, temp_dir):
        """Test that full and default report the same solution."""
        entries = write_instances(temp_dir, 1)
        config = BenchConfig(
            problems=ProblemRegistry().resolve("2club"),
            variants=[Variant.FULL, Variant.DEFAULT],
            floor=0.0,
        )

        records = run_benchmark(entries, config)

        assert len(records) == 2
        assert records[0].solution == records[1].solution
        assert [r.variant for r in records] == ["full", "default"]

    def test_hint_uses_prior_optimum(self, temp_dir):
        """Test that the hint cell matches the other variants."""
        entries = write_instances(temp_dir, 2)
        config = BenchConfig(
            problems=ProblemRegistry().resolve("clique,3plex-2"),
            variants=[Variant.HINT, Variant.DEFAULT],
            floor=0.0,
        )

        records = run_benchmark(entries, config)

        assert len(records) == 2 * 2 * 2
        for hint, default in zip(records[::2], records[1::2]):
            assert hint.variant == "hint"
            assert hint.solution == default.solution

    def test_hint_alone(self, temp_dir):
        """Test that a hint-only grid computes its own hint."""
        entries = write_instances(temp_dir, 1)
        config = BenchConfig(problems=ProblemRegistry().resolve("2plex"), variants=[Variant.HINT], floor=0.0)

        records = run_benchmark(entries, config)

        assert records[0].solution is not None
        assert not records[0].timed_out

    def test_unreadable_instance(self, temp_dir):
        """Test that a missing file becomes a filtered error row."""
        entries = write_instances(temp_dir, 1)
        entries.append(ManifestEntry(temp_dir / "missing.txt", EDGELIST))
        config = BenchConfig(problems=ProblemRegistry().resolve("clique"), variants=[Variant.FULL], floor=0.0)

        records = run_benchmark(entries, config)

        assert len(records) == 2
        assert records[1].error is not None
        assert records[1].filtered
        assert not records[0].filtered

    def test_timed_out_cell(self, temp_dir):
        """Test that a timeout records the limit and no solution."""
        entries = write_instances(temp_dir, 1, n=14, p=0.5)
        config = BenchConfig(
            problems=ProblemRegistry().resolve("3plex"),
            variants=[Variant.NOTK],
            limit=1e-9,
        )

        record = run_benchmark(entries, config)[0]

        assert record.timed_out
        assert record.runtime_seconds == 1e-9
        assert record.solution is None
        assert record.filtered

    def test_gap_column(self, temp_dir):
        """Test gap = d_x - solution + 1 on every row."""
        entries = write_instances(temp_dir, 6, n=10, p=0.5)
        config = BenchConfig(
            problems=ProblemRegistry().resolve("2club,2plex"),
            variants=[Variant.FULL, Variant.DEFAULT],
            floor=0.0,
        )

        records = run_benchmark(entries, config)

        assert len(records) == 6 * 2 * 2
        for record in records:
            assert record.gap == record.d_x - record.solution + 1
            assert record.gap >= 1

    def test_parallel_instances(self, temp_dir):
        """Test that concurrent instances produce the same columns."""
        entries = write_instances(temp_dir, 3)
        config = BenchConfig(problems=ProblemRegistry().resolve("2club"), variants=[Variant.FULL], floor=0.0)

        sequential = run_benchmark(entries, config)
        parallel = run_benchmark(entries, BenchConfig(
            problems=config.problems, variants=config.variants, floor=0.0, jobs=2,
        ))

        assert [(r.instance, r.solution, r.d_x) for r in parallel] == \
            [(r.instance, r.solution, r.d_x) for r in sequential]

    def test_repeat_runs_agree(self, temp_dir):
        """Test that two runs differ only in runtimes and the filter flag."""
        entries = write_instances(temp_dir, 4, n=10, p=0.4)
        config = BenchConfig(
            problems=ProblemRegistry().resolve("clique,2club,2plex"),
            variants=[Variant.NOTK, Variant.FULL, Variant.DEFAULT, Variant.HINT],
            floor=0.0,
        )

        def stable(records):
            return [
                {k: v for k, v in r.to_row().items() if k not in ("runtime_seconds", "filtered")}
                for r in records
            ]

        assert stable(run_benchmark(entries, config)) == stable(run_benchmark(entries, config))


class TestResultsFile:
    """Tests for write_results and read_results."""

    def test_header_is_exact(self, temp_dir):
        """Test the results.csv header line."""
        path = temp_dir / "results.csv"

        write_results([], path)

        assert ",".join(RESULTS_HEADER) == HEADER_LINE
        assert path.read_text() == HEADER_LINE + "\n"

    def test_round_trip(self, temp_dir):
        """Test that read_results restores the rows."""
        entries = write_instances(temp_dir, 2)
        config = BenchConfig(
            problems=ProblemRegistry().resolve("clique"), variants=[Variant.FULL, Variant.DEFAULT], floor=0.0,
        )
        records = run_benchmark(entries, config)
        path = temp_dir / "results.csv"

        write_results(records, path)
        loaded = read_results(path)

        assert [(r.instance, r.solution, r.gap, r.variant) for r in loaded] == \
            [(r.instance, r.solution, r.gap, r.variant) for r in records]

    def test_wrong_header(self, temp_dir):
        """Test that a foreign CSV is rejected."""
        path = temp_dir / "other.csv"
        path.write_text("a,b\n1,2\n")

        with pytest.raises(ParseError):
            read_results(path)

    def test_pipeline_feeds_analysis(self, temp_dir):
        """Test that bench output drives correlation_table."""
        entries = write_instances(temp_dir, 4, n=9)
        config = BenchConfig(problems=ProblemRegistry().resolve("2club"), variants=[Variant.DEFAULT], floor=0.0)
        path = temp_dir / "results.csv"
        write_results(run_benchmark(entries, config), path)

        report = correlation_table(read_results(path))

        assert {row.parameter for row in report.rows} == {"n", "d_x", "gap"}
        assert all(row.sample_count + row.excluded_count == 4 for row in report.rows)
