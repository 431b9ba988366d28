"""Ranking tables from weight vectors and match lists, plus comparisons.

Authority weights rank descending (more authority, better team). Hub
weights measure how much a team has fed its opponents, so the best team
has the smallest hub weight and the default hub presentation ranks
ascending. The conventional points table (3 for a win, 1 for a draw) is
provided for cross-checking: its scores equal the column sums of the
default adjacency matrix built from the same matches.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from scipy.stats import kendalltau

from hitsrank.graph import MatchRecord, Outcome, TeamIndex
from hitsrank.hits import VectorKind, WeightVector


class TableKind(enum.Enum):
    AUTHORITY = "AUTHORITY"
    HUB = "HUB"
    POINTS = "POINTS"


class Ordering(enum.Enum):
    DESC_SCORE = "DESC_SCORE"
    ASC_SCORE = "ASC_SCORE"


class HubOrder(enum.Enum):
    BEST_TEAM_FIRST = "BEST_TEAM_FIRST"
    RAW_DESC = "RAW_DESC"


class RankRow(NamedTuple):
    rank: int
    team: str
    score: float


@dataclass(frozen=True)
class RankTable:
    """Ordered ranking rows plus metadata.

    Tables built by this module are sorted per ``ordering`` with exact
    score ties broken lexicographically by team name, and carry
    competition ranks: tied scores share the smaller rank and the next
    rank skips (1, 2, 2, 4). Tables parsed from external files keep
    their ranks and row order as given, because foreign tie-break rules
    (goal difference and the like) cannot be reconstructed from scores
    alone; ``kind`` is None for such tables.
    """

    rows: tuple[RankRow, ...]
    ordering: Ordering
    kind: TableKind | None

    def __post_init__(self) -> None:
        rows = tuple(RankRow(int(r[0]), str(r[1]), float(r[2])) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if not isinstance(self.ordering, Ordering):
            raise TypeError(f"ordering must be an Ordering, got {type(self.ordering).__name__}")
        if self.kind is not None and not isinstance(self.kind, TableKind):
            raise TypeError(f"kind must be a TableKind or None, got {type(self.kind).__name__}")
        seen: set[str] = set()
        for row in rows:
            if row.rank < 1:
                raise ValueError(f"ranks are 1-based, got {row.rank}")
            if not row.team:
                raise ValueError("team names must be non-empty")
            if not math.isfinite(row.score):
                raise ValueError(f"score must be finite, got {row.score}")
            if row.team in seen:
                raise ValueError(f"duplicate team in table: {row.team!r}")
            seen.add(row.team)

    def __len__(self) -> int:
        return len(self.rows)

    def rank_of(self, team: str) -> int:
        for row in self.rows:
            if row.team == team:
                return row.rank
        raise KeyError(f"unknown team: {team!r}")


def _competition_rows(
    names: Sequence[str], scores: Sequence[float], ordering: Ordering
) -> tuple[RankRow, ...]:
    # sort per ordering, exact-score ties lexicographic by team name
    descending = ordering is Ordering.DESC_SCORE
    order = sorted(
        range(len(names)),
        key=lambda i: ((-scores[i] if descending else scores[i]), names[i]),
    )
    rows: list[RankRow] = []
    rank = 0
    prev_score: float | None = None
    for position, i in enumerate(order, start=1):
        score = float(scores[i])
        if prev_score is None or score != prev_score:
            rank = position
            prev_score = score
        rows.append(RankRow(rank, names[i], score))
    return tuple(rows)


def _check_weight(w: WeightVector, idx: TeamIndex, expected: VectorKind) -> None:
    if w.kind is not expected:
        raise ValueError(f"expected a {expected.value} weight vector, got {w.kind.value}")
    if len(w) != len(idx):
        raise ValueError(f"weight vector has {len(w)} entries for {len(idx)} teams")


def rank_authority(w: WeightVector, idx: TeamIndex) -> RankTable:
    """Rank teams by authority weight, best (largest) first."""
    _check_weight(w, idx, VectorKind.AUTHORITY)
    rows = _competition_rows(idx.names, w.values.tolist(), Ordering.DESC_SCORE)
    return RankTable(rows, Ordering.DESC_SCORE, TableKind.AUTHORITY)


def rank_hub(
    w: WeightVector, idx: TeamIndex, order: HubOrder = HubOrder.BEST_TEAM_FIRST
) -> RankTable:
    """Rank teams by hub weight.

    A small hub weight is a good sign (the team has fed few points to
    opponents), so BEST_TEAM_FIRST sorts ascending. RAW_DESC gives the
    plain descending view of the weights themselves.
    """
    _check_weight(w, idx, VectorKind.HUB)
    ordering = Ordering.ASC_SCORE if order is HubOrder.BEST_TEAM_FIRST else Ordering.DESC_SCORE
    rows = _competition_rows(idx.names, w.values.tolist(), ordering)
    return RankTable(rows, ordering, TableKind.HUB)


def points_table(
    matches: Iterable[MatchRecord],
    win_points: float = 3.0,
    draw_points: float = 1.0,
) -> RankTable:
    """Conventional standings: win_points per win plus draw_points per draw.

    Losses score nothing. Sorted descending with competition ranks.
    """
    win_points = float(win_points)
    draw_points = float(draw_points)
    if not math.isfinite(win_points) or not math.isfinite(draw_points):
        raise ValueError("points parameters must be finite")
    names: list[str] = []
    wins: dict[str, int] = {}
    draws: dict[str, int] = {}
    for rec in matches:
        if not isinstance(rec, MatchRecord):
            raise TypeError(f"expected MatchRecord, got {type(rec).__name__}")
        for name in (rec.team_a, rec.team_b):
            if name not in wins:
                names.append(name)
                wins[name] = 0
                draws[name] = 0
        if rec.outcome is Outcome.A_WINS:
            wins[rec.team_a] += 1
        elif rec.outcome is Outcome.B_WINS:
            wins[rec.team_b] += 1
        else:
            draws[rec.team_a] += 1
            draws[rec.team_b] += 1
    scores = [win_points * wins[n] + draw_points * draws[n] for n in names]
    rows = _competition_rows(names, scores, Ordering.DESC_SCORE)
    return RankTable(rows, Ordering.DESC_SCORE, TableKind.POINTS)


class ComparisonRow(NamedTuple):
    team: str
    rank_a: int
    rank_b: int
    displacement: int


@dataclass(frozen=True)
class ComparisonReport:
    """Per-team displacement plus Kendall tau-b over two rankings.

    ``displacement`` is rank_b minus rank_a: positive means the team
    sits further down (nearer the bottom) in the second table than in
    the first. Rows are sorted by rank in the first table, ties by team
    name. ``kendall_tau`` is the tie-adjusted tau-b of the two rank
    vectors; it is NaN when fewer than two teams are compared or one
    table is entirely tied.
    """

    rows: tuple[ComparisonRow, ...]
    kendall_tau: float


def compare_rankings(a: RankTable, b: RankTable) -> ComparisonReport:
    """Compare two rankings over the same team set.

    Raises:
        ValueError: if the tables do not cover the same teams.
    """
    ranks_a = {row.team: row.rank for row in a.rows}
    ranks_b = {row.team: row.rank for row in b.rows}
    if set(ranks_a) != set(ranks_b):
        only_a = sorted(set(ranks_a) - set(ranks_b))[:5]
        only_b = sorted(set(ranks_b) - set(ranks_a))[:5]
        raise ValueError(
            f"team sets differ: only in first table {only_a}, only in second table {only_b}"
        )
    rows = tuple(
        sorted(
            (
                ComparisonRow(team, ranks_a[team], ranks_b[team], ranks_b[team] - ranks_a[team])
                for team in ranks_a
            ),
            key=lambda r: (r.rank_a, r.team),
        )
    )
    teams = sorted(ranks_a)
    if len(teams) < 2:
        tau = math.nan
    else:
        tau = float(kendalltau([ranks_a[t] for t in teams], [ranks_b[t] for t in teams]).statistic)
    return ComparisonReport(rows=rows, kendall_tau=tau)
