"""Parsing of match and matrix files, serialization of tables and reports.

File formats (strict schemas, no extra columns):

* matches CSV: header ``home,away,outcome`` then one row per fixture
  with outcome H (home win), A (away win) or D (draw).
* matrix CSV: first line holds the team names; each following line is a
  team name plus one weight per team, rows in header order.
* rank table CSV: header ``rank,team,score``.

CRLF and LF line endings are both accepted, a trailing newline is
optional, and surrounding whitespace in fields is trimmed. Every parse
failure raises ParseError carrying a 1-based line (and column where it
applies); parsers never raise anything else on malformed text.
"""

from __future__ import annotations

import csv
import enum
import json
import math
from io import StringIO
from typing import Any

from hitsrank.graph import AdjacencyMatrix, MatchRecord, Outcome, from_named_matrix
from hitsrank.rank import ComparisonReport, Ordering, RankRow, RankTable, TableKind

_OUTCOME_BY_CODE = {"H": Outcome.A_WINS, "A": Outcome.B_WINS, "D": Outcome.DRAW}
_MATCH_HEADER = ["home", "away", "outcome"]
_TABLE_HEADER = ["rank", "team", "score"]
_TIE_NOTE = "# ties share the smaller rank (competition ranking)"


class TableFormat(enum.Enum):
    TEXT = "TEXT"
    CSV = "CSV"
    JSON = "JSON"


class ParseError(ValueError):
    """Malformed input, positioned by 1-based line (and column if known)."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


def _lines(text: str) -> list[str]:
    return text.lstrip("﻿").splitlines()


def _fields(line: str) -> list[str]:
    rows = list(csv.reader([line]))
    if not rows:
        return []
    return [f.strip() for f in rows[0]]


def parse_matches(text: str) -> list[MatchRecord]:
    """Parse a matches CSV into records, in file order.

    The home side maps to ``team_a``, so H means team_a wins and A means
    team_b wins.
    """
    lines = _lines(text)
    if not lines:
        raise ParseError("missing header home,away,outcome", line=1)
    if _fields(lines[0]) != _MATCH_HEADER:
        raise ParseError(f"expected header home,away,outcome, got {lines[0]!r}", line=1)
    records: list[MatchRecord] = []
    for line_no, line in enumerate(lines[1:], start=2):
        fields = _fields(line)
        if len(fields) != 3:
            raise ParseError(f"expected 3 fields, got {len(fields)}", line=line_no)
        home, away, code = fields
        if not home or not away:
            raise ParseError("team name is empty", line=line_no)
        if code not in _OUTCOME_BY_CODE:
            raise ParseError(f"unknown outcome {code!r}, expected H, A or D", line=line_no)
        if home == away:
            raise ParseError(f"a team cannot play itself: {home!r}", line=line_no)
        records.append(MatchRecord(home, away, _OUTCOME_BY_CODE[code]))
    return records


def parse_matrix(text: str) -> AdjacencyMatrix:
    """Parse a matrix CSV whose row order matches its header order."""
    lines = _lines(text)
    if not lines:
        return from_named_matrix((), [])
    names = _fields(lines[0])
    for col, name in enumerate(names, start=1):
        if not name:
            raise ParseError("empty team name in header", line=1, column=col)
    seen: set[str] = set()
    for name in names:
        if name in seen:
            raise ParseError(f"duplicate team name {name!r}", line=1)
        seen.add(name)
    n = len(names)
    data_lines = lines[1:]
    if len(data_lines) < n:
        raise ParseError(f"expected {n} matrix rows, found {len(data_lines)}", line=len(lines) + 1)
    if len(data_lines) > n:
        raise ParseError(f"expected {n} matrix rows, found {len(data_lines)}", line=n + 2)
    values = [[0.0] * n for _ in range(n)]
    for r, line in enumerate(data_lines):
        line_no = r + 2
        fields = _fields(line)
        if len(fields) != n + 1:
            raise ParseError(
                f"expected {n + 1} fields (team name plus {n} entries), got {len(fields)}",
                line=line_no,
            )
        if fields[0] != names[r]:
            raise ParseError(
                f"row {r + 1} is {fields[0]!r}, expected {names[r]!r} "
                "(rows must follow header order)",
                line=line_no,
                column=1,
            )
        for c, field in enumerate(fields[1:]):
            column = c + 2
            try:
                value = float(field)
            except ValueError:
                raise ParseError(f"not a number: {field!r}", line=line_no, column=column) from None
            if not math.isfinite(value):
                raise ParseError(f"entry must be finite, got {field!r}", line=line_no, column=column)
            if value < 0.0:
                raise ParseError(f"negative entry {field!r}", line=line_no, column=column)
            if c == r and value != 0.0:
                raise ParseError(f"diagonal entry must be 0, got {field!r}", line=line_no, column=column)
            values[r][c] = value
    return from_named_matrix(names, values)


def _check_decimals(decimals: int) -> int:
    if not isinstance(decimals, int) or isinstance(decimals, bool) or decimals < 0:
        raise ValueError(f"decimals must be a nonnegative integer, got {decimals!r}")
    return decimals


def _format_score(score: float, kind: TableKind | None, decimals: int) -> str:
    # points stay exact integers; weights use fixed decimals
    if kind is TableKind.POINTS and float(score).is_integer():
        return str(int(score))
    return f"{score:.{decimals}f}"


def _json_score(score: float, kind: TableKind | None) -> int | float:
    if kind is TableKind.POINTS and float(score).is_integer():
        return int(score)
    return float(score)


def table_object(t: RankTable) -> dict[str, Any]:
    """JSON-ready representation of a table, scores at full precision."""
    return {
        "kind": t.kind.value.lower() if t.kind is not None else None,
        "ordering": t.ordering.value.lower(),
        "rows": [
            {"rank": row.rank, "team": row.team, "score": _json_score(row.score, t.kind)}
            for row in t.rows
        ],
    }


def _csv_join(rows: list[list[str]]) -> str:
    buffer = StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(rows)
    return buffer.getvalue()


def _aligned(header: list[str], cells: list[list[str]], left: set[int]) -> list[str]:
    widths = [len(h) for h in header]
    for row in cells:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    out = []
    for row in [header] + cells:
        parts = [
            cell.ljust(widths[i]) if i in left else cell.rjust(widths[i])
            for i, cell in enumerate(row)
        ]
        out.append("  ".join(parts).rstrip())
    return out


def emit_table(t: RankTable, format: TableFormat, decimals: int = 3) -> str:
    """Serialize a rank table.

    TEXT gives aligned columns plus a trailing note on the tie rule, CSV
    the plain ``rank,team,score`` rows, and JSON an object with kind,
    ordering and rows. ``decimals`` controls TEXT and CSV score display;
    JSON always carries full precision (exact integers for points).
    """
    decimals = _check_decimals(decimals)
    if format is TableFormat.JSON:
        return json.dumps(table_object(t), indent=2) + "\n"
    formatted = [
        [str(row.rank), row.team, _format_score(row.score, t.kind, decimals)] for row in t.rows
    ]
    if format is TableFormat.CSV:
        return _csv_join([_TABLE_HEADER] + formatted)
    lines = _aligned(_TABLE_HEADER, formatted, left={1})
    lines.append(_TIE_NOTE)
    return "\n".join(lines) + "\n"


def _matrix_number(value: float) -> str:
    if float(value).is_integer() and abs(value) <= 1e15:
        return str(int(value))
    return repr(float(value))


def emit_matrix(m: AdjacencyMatrix) -> str:
    """Serialize an adjacency matrix at full precision.

    ``parse_matrix`` of the result reproduces the matrix exactly.
    """
    names = list(m.index.names)
    rows = [names]
    for i, name in enumerate(names):
        rows.append([name] + [_matrix_number(v) for v in m.w[i]])
    return _csv_join(rows)


def emit_comparison(report: ComparisonReport, format: TableFormat, decimals: int = 3) -> str:
    """Serialize a ranking comparison (displacements plus Kendall tau-b)."""
    decimals = _check_decimals(decimals)
    tau = report.kendall_tau
    if format is TableFormat.JSON:
        obj = {
            "rows": [
                {
                    "team": r.team,
                    "rank_a": r.rank_a,
                    "rank_b": r.rank_b,
                    "displacement": r.displacement,
                }
                for r in report.rows
            ],
            "kendall_tau_b": None if math.isnan(tau) else float(tau),
        }
        return json.dumps(obj, indent=2) + "\n"
    header = ["team", "rank_a", "rank_b", "displacement"]
    if format is TableFormat.CSV:
        rows = [[r.team, str(r.rank_a), str(r.rank_b), str(r.displacement)] for r in report.rows]
        return _csv_join([header] + rows) + f"# kendall_tau_b,{repr(tau)}\n"
    cells = [
        [
            r.team,
            str(r.rank_a),
            str(r.rank_b),
            str(r.displacement) if r.displacement == 0 else f"{r.displacement:+d}",
        ]
        for r in report.rows
    ]
    lines = _aligned(header, cells, left={0})
    lines.append(f"kendall tau-b: {tau:.{decimals}f}")
    return "\n".join(lines) + "\n"


def _infer_ordering(scores: list[float], context: list[int | None]) -> Ordering:
    increased: int | None = None
    decreased: int | None = None
    for i in range(1, len(scores)):
        if scores[i] > scores[i - 1] and increased is None:
            increased = i
        if scores[i] < scores[i - 1] and decreased is None:
            decreased = i
        if increased is not None and decreased is not None:
            line = context[max(increased, decreased)]
            raise ParseError("scores are not monotone; not a rank table", line=line)
    if increased is not None:
        return Ordering.ASC_SCORE
    return Ordering.DESC_SCORE


def _parse_table_csv(text: str) -> RankTable:
    lines = _lines(text)
    if not lines:
        raise ParseError("missing header rank,team,score", line=1)
    if _fields(lines[0]) != _TABLE_HEADER:
        raise ParseError(f"expected header rank,team,score, got {lines[0]!r}", line=1)
    rows: list[RankRow] = []
    scores: list[float] = []
    context: list[int | None] = []
    seen: set[str] = set()
    for line_no, line in enumerate(lines[1:], start=2):
        fields = _fields(line)
        if len(fields) != 3:
            raise ParseError(f"expected 3 fields, got {len(fields)}", line=line_no)
        rank_field, team, score_field = fields
        try:
            rank = int(rank_field)
        except ValueError:
            raise ParseError(f"rank must be an integer, got {rank_field!r}", line=line_no, column=1) from None
        if rank < 1:
            raise ParseError(f"ranks are 1-based, got {rank}", line=line_no, column=1)
        if not team:
            raise ParseError("team name is empty", line=line_no, column=2)
        if team in seen:
            raise ParseError(f"duplicate team {team!r}", line=line_no, column=2)
        seen.add(team)
        try:
            score = float(score_field)
        except ValueError:
            raise ParseError(f"score must be a number, got {score_field!r}", line=line_no, column=3) from None
        if not math.isfinite(score):
            raise ParseError(f"score must be finite, got {score_field!r}", line=line_no, column=3)
        rows.append(RankRow(rank, team, score))
        scores.append(score)
        context.append(line_no)
    ordering = _infer_ordering(scores, context)
    return RankTable(tuple(rows), ordering, None)


def _parse_table_json(text: str) -> RankTable:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from None
    if not isinstance(obj, dict):
        raise ParseError(f"expected a JSON object, got {type(obj).__name__}")
    if "rows" not in obj:
        if "authority" in obj or "hub" in obj:
            raise ParseError("file holds multiple tables; emit a single table to compare")
        raise ParseError("missing key 'rows'")
    raw_rows = obj["rows"]
    if not isinstance(raw_rows, list):
        raise ParseError("'rows' must be an array")
    kind: TableKind | None = None
    if obj.get("kind") is not None:
        try:
            kind = TableKind[str(obj["kind"]).upper()]
        except KeyError:
            raise ParseError(f"unknown kind {obj['kind']!r}") from None
    rows: list[RankRow] = []
    scores: list[float] = []
    seen: set[str] = set()
    for i, raw in enumerate(raw_rows, start=1):
        if not isinstance(raw, dict):
            raise ParseError(f"row {i}: expected an object")
        try:
            rank, team, score = raw["rank"], raw["team"], raw["score"]
        except KeyError as exc:
            raise ParseError(f"row {i}: missing key {exc.args[0]!r}") from None
        if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
            raise ParseError(f"row {i}: rank must be a 1-based integer, got {rank!r}")
        if not isinstance(team, str) or not team.strip():
            raise ParseError(f"row {i}: team must be a non-empty string")
        if isinstance(score, bool) or not isinstance(score, (int, float)) or not math.isfinite(score):
            raise ParseError(f"row {i}: score must be a finite number, got {score!r}")
        team = team.strip()
        if team in seen:
            raise ParseError(f"row {i}: duplicate team {team!r}")
        seen.add(team)
        rows.append(RankRow(rank, team, float(score)))
        scores.append(float(score))
    if obj.get("ordering") is not None:
        try:
            ordering = Ordering[str(obj["ordering"]).upper()]
        except KeyError:
            raise ParseError(f"unknown ordering {obj['ordering']!r}") from None
        ascending = ordering is Ordering.ASC_SCORE
        for i in range(1, len(scores)):
            if (scores[i] < scores[i - 1]) if ascending else (scores[i] > scores[i - 1]):
                raise ParseError(f"row {i + 1}: scores violate declared ordering")
    else:
        ordering = _infer_ordering(scores, [None] * len(scores))
    return RankTable(tuple(rows), ordering, kind)


def parse_table(text: str) -> RankTable:
    """Parse a rank table from CSV or JSON (detected from the content).

    Ranks and row order are kept exactly as given; external tables may
    follow tie-break rules of their own. CSV tables get their ordering
    inferred from score monotonicity, JSON tables may declare it.
    """
    stripped = text.lstrip("﻿").lstrip()
    if stripped.startswith("{"):
        return _parse_table_json(text)
    return _parse_table_csv(text)
