"""Command-line interface: rank, points, matrix and compare commands.

Tables go to stdout, diagnostics and warnings to stderr, so output is
pipe-safe; identical invocations produce byte-identical output. Error
paths write nothing to stdout.

Exit codes: 0 success, 2 usage error (bad flags, unreadable file,
mismatched team sets), 3 parse error, 4 degenerate graph (no edges),
5 non-convergence when --strict-convergence is set (otherwise it is a
warning on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from hitsrank.graph import AdjacencyMatrix, build_adjacency, sort_teams
from hitsrank.hits import DegenerateInputError, HitsResult, SolverConfig, hits
from hitsrank.io import (
    ParseError,
    TableFormat,
    emit_comparison,
    emit_matrix,
    emit_table,
    parse_matches,
    parse_matrix,
    parse_table,
    table_object,
)
from hitsrank.rank import HubOrder, compare_rankings, rank_authority, rank_hub, points_table

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_DEGENERATE = 4
EXIT_NO_CONVERGENCE = 5

_HUB_ORDERS = {"best-first": HubOrder.BEST_TEAM_FIRST, "raw-desc": HubOrder.RAW_DESC}


@dataclass(frozen=True)
class CliError(Exception):
    message: str
    exit_code: int = EXIT_USAGE


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0.0 or value != value or value in (float("inf"),):
        raise argparse.ArgumentTypeError(f"must be a positive finite number, got {text!r}")
    return value


def _nonneg_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value >= 0.0 or value in (float("inf"),):
        raise argparse.ArgumentTypeError(f"must be a nonnegative finite number, got {text!r}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {text!r}")
    return value


def _nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {text!r}")
    return value


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--format",
        choices=("text", "csv", "json"),
        default="text",
        help="output format (default text)",
    )
    p.add_argument(
        "--decimals",
        type=_nonneg_int,
        default=3,
        metavar="N",
        help="score decimals in text/csv output (default 3; json keeps full precision)",
    )


def _add_weight_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--win-weight",
        type=_nonneg_float,
        default=3.0,
        metavar="W",
        help="points a win hands the winner (default 3)",
    )
    p.add_argument(
        "--draw-weight",
        type=_nonneg_float,
        default=1.0,
        metavar="W",
        help="points a draw hands each side (default 1)",
    )


def _add_match_input_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--sort-teams",
        action="store_true",
        help="index teams alphabetically instead of by first appearance",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hitsrank",
        description=(
            "Rank round-robin competition teams by hub/authority link analysis "
            "of a weighted match-outcome graph."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    rank = sub.add_parser(
        "rank",
        help="rank teams by authority and/or hub weight",
        description=(
            "Load matches or a pre-built weight matrix, run the mutually "
            "reinforcing iteration and print rank tables. Authority ranks "
            "descending; hub ranks ascending by default because a small hub "
            "weight marks a strong team."
        ),
    )
    rank.add_argument("--input", required=True, metavar="PATH", help="input file")
    rank.add_argument(
        "--input-kind",
        required=True,
        choices=("matches", "matrix"),
        help="whether the input file holds match results or a weight matrix",
    )
    rank.add_argument(
        "--which",
        choices=("authority", "hub", "both"),
        default="both",
        help="which table(s) to print (default both)",
    )
    rank.add_argument(
        "--hub-order",
        choices=tuple(_HUB_ORDERS),
        default="best-first",
        help="hub table order: best-first (ascending weight) or raw-desc",
    )
    rank.add_argument(
        "--tol",
        type=_positive_float,
        default=1e-12,
        metavar="T",
        help="convergence tolerance on successive-iterate change (default 1e-12)",
    )
    rank.add_argument(
        "--max-iters",
        type=_positive_int,
        default=10000,
        metavar="N",
        help="iteration cap (default 10000)",
    )
    rank.add_argument(
        "--strict-convergence",
        action="store_true",
        help="exit 5 if the iteration cap is hit (default: warn on stderr)",
    )
    rank.add_argument("--verbose", action="store_true", help="solver diagnostics on stderr")
    _add_weight_flags(rank)
    _add_match_input_flags(rank)
    _add_output_flags(rank)
    rank.set_defaults(handler=_cmd_rank)

    points = sub.add_parser(
        "points",
        help="conventional points table from match results",
        description="Print the points standings (3 per win, 1 per draw by default).",
    )
    points.add_argument("--input", required=True, metavar="PATH", help="matches CSV file")
    _add_weight_flags(points)
    _add_output_flags(points)
    points.set_defaults(handler=_cmd_points)

    matrix = sub.add_parser(
        "matrix",
        help="print the adjacency matrix built from match results",
        description=(
            "Build the loser-to-winner weight matrix from a matches CSV and "
            "print it as matrix CSV at full precision."
        ),
    )
    matrix.add_argument("--input", required=True, metavar="PATH", help="matches CSV file")
    _add_weight_flags(matrix)
    _add_match_input_flags(matrix)
    matrix.set_defaults(handler=_cmd_matrix)

    compare = sub.add_parser(
        "compare",
        help="compare two rank tables",
        description=(
            "Read two rank table files (CSV or JSON) over the same team set "
            "and print per-team displacement plus Kendall tau-b. Displacement "
            "is rank in the second table minus rank in the first: positive "
            "means the team sits lower in the second."
        ),
    )
    compare.add_argument("table_a", metavar="TABLE_A", help="first rank table file")
    compare.add_argument("table_b", metavar="TABLE_B", help="second rank table file")
    _add_output_flags(compare)
    compare.set_defaults(handler=_cmd_compare)

    return parser


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8-sig")
    except FileNotFoundError:
        raise CliError(f"file not found: {path}", EXIT_USAGE) from None
    except IsADirectoryError:
        raise CliError(f"not a file: {path}", EXIT_USAGE) from None
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_USAGE) from None


def _format(args: argparse.Namespace) -> TableFormat:
    return TableFormat[args.format.upper()]


def _load_adjacency(args: argparse.Namespace) -> AdjacencyMatrix:
    text = _read(args.input)
    try:
        if args.input_kind == "matches":
            m = build_adjacency(
                parse_matches(text),
                win_weight=args.win_weight,
                draw_weight=args.draw_weight,
            )
            return sort_teams(m) if args.sort_teams else m
        return parse_matrix(text)
    except ParseError as exc:
        raise CliError(f"{args.input}: {exc}", EXIT_PARSE) from None


def _run_hits(m: AdjacencyMatrix, args: argparse.Namespace) -> HitsResult:
    cfg = SolverConfig(tolerance=args.tol, max_iterations=args.max_iters)
    try:
        result = hits(m, cfg)
    except DegenerateInputError as exc:
        raise CliError(str(exc), EXIT_DEGENERATE) from None
    if args.verbose:
        print(f"iterations: {result.iterations}", file=sys.stderr)
        print(f"eigenvalue: {result.authority_eigenvalue!r}", file=sys.stderr)
        print(f"converged: {result.converged}", file=sys.stderr)
    if not result.converged:
        message = f"did not converge within {cfg.max_iterations} iterations"
        if result.stalled:
            message += " (stalled: near-degenerate principal eigenspace)"
        if args.strict_convergence:
            raise CliError(message, EXIT_NO_CONVERGENCE)
        print(f"warning: {message}", file=sys.stderr)
    return result


def _cmd_rank(args: argparse.Namespace) -> str:
    m = _load_adjacency(args)
    result = _run_hits(m, args)
    fmt = _format(args)
    tables = []
    if args.which in ("authority", "both"):
        tables.append(("authority", rank_authority(result.authority, m.index)))
    if args.which in ("hub", "both"):
        tables.append(("hub", rank_hub(result.hub, m.index, _HUB_ORDERS[args.hub_order])))
    if len(tables) == 1:
        return emit_table(tables[0][1], fmt, args.decimals)
    if fmt is TableFormat.JSON:
        return json.dumps({name: table_object(t) for name, t in tables}, indent=2) + "\n"
    blocks = [f"# {name}\n{emit_table(t, fmt, args.decimals)}" for name, t in tables]
    return "\n".join(blocks)


def _cmd_points(args: argparse.Namespace) -> str:
    text = _read(args.input)
    try:
        matches = parse_matches(text)
    except ParseError as exc:
        raise CliError(f"{args.input}: {exc}", EXIT_PARSE) from None
    table = points_table(matches, win_points=args.win_weight, draw_points=args.draw_weight)
    return emit_table(table, _format(args), args.decimals)


def _cmd_matrix(args: argparse.Namespace) -> str:
    text = _read(args.input)
    try:
        m = build_adjacency(
            parse_matches(text),
            win_weight=args.win_weight,
            draw_weight=args.draw_weight,
        )
    except ParseError as exc:
        raise CliError(f"{args.input}: {exc}", EXIT_PARSE) from None
    if args.sort_teams:
        m = sort_teams(m)
    return emit_matrix(m)


def _cmd_compare(args: argparse.Namespace) -> str:
    tables = []
    for path in (args.table_a, args.table_b):
        try:
            tables.append(parse_table(_read(path)))
        except ParseError as exc:
            raise CliError(f"{path}: {exc}", EXIT_PARSE) from None
    try:
        report = compare_rankings(tables[0], tables[1])
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from None
    return emit_comparison(report, _format(args), args.decimals)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        output = args.handler(args)
    except CliError as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return exc.exit_code
    sys.stdout.write(output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
