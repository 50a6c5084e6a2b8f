#!/usr/bin/env python3
"""Main entry point for the clubplex command line."""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from .bench import (
    DEFAULT_FLOOR_SECONDS,
    DEFAULT_TIMEOUT_SECONDS,
    BenchConfig,
    FilterScope,
    load_manifest,
    read_results,
    run_benchmark,
    write_results,
)
from .errors import ClubplexError
from .generators import generate_suite
from .graph import GRAPH_FORMATS, load_graph
from .ilp import ILP_PROBLEMS, model_for, write_lp
from .ordering import x_degeneracy_ordering
from .problems import ProblemRegistry
from .solvers import Variant, VariantConfig, turing_kernel_solve
from .stats import (
    SCATTER_PARAMETERS,
    comparison_data,
    correlation_table,
    scatter_data,
    summary_table,
    write_comparison,
    write_correlations,
    write_scatter,
    write_summary,
)
from .verify import CandidateKind, ProblemKind, satisfies

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INSTANCE_ERRORS = 2


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors mapped to exit code 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_graph_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", required=True, type=Path, help="graph file")
    parser.add_argument("--format", choices=GRAPH_FORMATS, help="graph format (default: from extension)")


def _candidate(problem: str, s: int) -> CandidateKind:
    if problem == ProblemKind.CLIQUE.value:
        return CandidateKind.clique()
    return CandidateKind(ProblemKind(problem), s)


def cmd_degeneracy(args) -> int:
    g = load_graph(args.input, args.format)
    ordering = x_degeneracy_ordering(g, args.x)
    print(ordering.d_x)
    if args.ordering:
        for v in ordering.order:
            print(g.label(v))
    return EXIT_OK


def cmd_verify(args) -> int:
    g = load_graph(args.input, args.format)
    labels = [line.strip() for line in args.set.read_text().splitlines() if line.strip()]
    members = [g.vertex_of(label) for label in labels]
    kind = _candidate(args.problem, args.s)
    if satisfies(g, members, kind):
        print(f"valid {kind.label}")
        return EXIT_OK
    print(f"not a {kind.label}")
    return 1


def cmd_solve(args) -> int:
    g = load_graph(args.input, args.format)
    kind = _candidate(args.problem, args.s)
    x = args.x
    if x is None:
        x = 2 if args.plex_d2 else kind.s
    cfg = VariantConfig(
        variant=Variant(args.variant),
        x=x,
        hint_value=args.hint_value,
        deadline=args.timeout,
        jobs=args.jobs,
    )
    solution = turing_kernel_solve(g, kind, cfg)
    if not solution.is_optimal:
        logger.warning("search ended with status %s", solution.status.value)
    print(solution.size)
    print(" ".join(solution.labels(g)))
    print(solution.stats.format_line())
    return EXIT_OK


def cmd_export_ilp(args) -> int:
    g = load_graph(args.input, args.format)
    model = model_for(args.problem, g, args.s)
    args.output.write_text(write_lp(model))
    logger.info(
        "wrote %s: %d variables, %d constraints, %d nonzeros",
        args.output, len(model.variables), len(model.constraints), model.nonzeros,
    )
    return EXIT_OK


def cmd_bench(args) -> int:
    config = BenchConfig(
        problems=ProblemRegistry().resolve(args.problems),
        variants=[Variant(name.strip()) for name in args.variants.split(",") if name.strip()],
        limit=args.timeout,
        floor=args.floor,
        scope=FilterScope(args.filter_scope),
        jobs=args.jobs,
    )
    records = run_benchmark(load_manifest(args.manifest), config)
    write_results(records, args.out)
    errors = sum(1 for record in records if record.error is not None)
    logger.info("wrote %d rows to %s", len(records), args.out)
    if errors:
        logger.warning("%d instance(s) could not be read", errors)
        return EXIT_INSTANCE_ERRORS
    return EXIT_OK


def cmd_analyze(args) -> int:
    records = read_results(args.results)
    report = correlation_table(records, gap_offset=args.gap_offset, adjust_polynomial=args.adjust_polynomial)
    write_correlations(report, args.report)
    if args.summary:
        write_summary(summary_table(records), args.summary)
    return EXIT_OK


def cmd_scatter(args) -> int:
    records = read_results(args.results)
    pairs = scatter_data(
        records, args.x, args.y, gap_offset=args.gap_offset, problem=args.problem, variant=args.variant
    )
    write_scatter(pairs, args.x, args.y, args.out)
    return EXIT_OK


def cmd_compare(args) -> int:
    records = read_results(args.results)
    write_comparison(comparison_data(records, args.a, args.b), args.out)
    return EXIT_OK


def cmd_problems(args) -> int:
    for problem in ProblemRegistry().get_all_problems():
        print(f"{problem.name}\t{problem.description}")
    return EXIT_OK


def cmd_generate(args) -> int:
    manifest = generate_suite(args.out_dir, args.random, args.planted, args.seed)
    print(manifest)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="clubplex", description="Exact clique, s-club and s-plex solvers with Turing kernels.")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("-q", "--quiet", action="store_true", help="warnings only")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("degeneracy", help="print the x-degeneracy")
    p.add_argument("--x", type=int, required=True)
    _add_graph_input(p)
    p.add_argument("--ordering", action="store_true", help="also print the ordering, one label per line")
    p.set_defaults(func=cmd_degeneracy)

    p = sub.add_parser("verify", help="check a vertex set")
    p.add_argument("--problem", choices=[kind.value for kind in ProblemKind], required=True)
    p.add_argument("--s", type=int, default=1)
    _add_graph_input(p)
    p.add_argument("--set", type=Path, required=True, help="file with one vertex label per line")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", help="find a maximum clique, s-club or s-plex")
    p.add_argument("--problem", choices=[kind.value for kind in ProblemKind], required=True)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--variant", choices=[variant.value for variant in Variant], default=Variant.DEFAULT.value)
    p.add_argument("--x", type=int, help="kernel radius (default: s)")
    p.add_argument("--plex-d2", action="store_true", help="use the 2-degeneracy kernel for plexes")
    _add_graph_input(p)
    p.add_argument("--timeout", type=float, help="seconds")
    p.add_argument("--hint-value", type=int)
    p.add_argument("--jobs", type=int, default=1, help="worker processes (full variant only)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("export-ilp", help="write an ILP model in LP format")
    p.add_argument("--problem", choices=ILP_PROBLEMS, required=True)
    p.add_argument("--s", type=int, help="plex only")
    _add_graph_input(p)
    p.add_argument("--output", type=Path, required=True)
    p.set_defaults(func=cmd_export_ilp)

    p = sub.add_parser("bench", help="run a problem x variant grid over a manifest")
    p.add_argument("--manifest", type=Path, required=True)
    p.add_argument("--problems", default="clique,2club,3club,2plex,3plex,3plex-2", help="comma-separated names (see the problems command)")
    p.add_argument("--variants", default="notk,full,default,hint")
    p.add_argument("--timeout", type=float, default=DEFAULT_TIMEOUT_SECONDS)
    p.add_argument("--floor", type=float, default=DEFAULT_FLOOR_SECONDS)
    p.add_argument("--filter-scope", choices=[scope.value for scope in FilterScope], default=FilterScope.INSTANCE.value)
    p.add_argument("--jobs", type=int, default=1, help="instances run concurrently")
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("analyze", help="correlate graph parameters with log runtime")
    p.add_argument("--results", type=Path, required=True)
    p.add_argument("--report", type=Path, required=True)
    p.add_argument("--summary", type=Path, help="also write mean/median runtimes")
    p.add_argument("--gap-offset", type=int, choices=(0, 1), default=1)
    p.add_argument("--adjust-polynomial", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("scatter", help="write (x, y) pairs for plotting")
    p.add_argument("--results", type=Path, required=True)
    p.add_argument("--x", choices=SCATTER_PARAMETERS, required=True)
    p.add_argument("--y", choices=SCATTER_PARAMETERS, required=True)
    p.add_argument("--problem", help="restrict to one problem, e.g. 2club")
    p.add_argument("--variant", help="restrict to one variant")
    p.add_argument("--gap-offset", type=int, choices=(0, 1), default=1)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_scatter)

    p = sub.add_parser("compare", help="pair the runtimes of two variants")
    p.add_argument("--results", type=Path, required=True)
    p.add_argument("--a", required=True, help="first variant")
    p.add_argument("--b", required=True, help="second variant")
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("problems", help="list the problem names accepted by bench --problems")
    p.set_defaults(func=cmd_problems)

    p = sub.add_parser("generate", help="write a seeded instance suite and manifest")
    p.add_argument("--out-dir", type=Path, required=True)
    p.add_argument("--random", type=int, default=20)
    p.add_argument("--planted", type=int, default=10)
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(func=cmd_generate)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the clubplex command line."""
    args = build_parser().parse_args(argv)
    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", force=True)

    try:
        return args.func(args)
    except (ClubplexError, OSError) as e:
        print(f"clubplex: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
