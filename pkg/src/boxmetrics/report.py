"""Ranking tables, rank deltas, regularity tables and rendering.

Tables render deterministically to CSV (RFC-4180, full precision), JSON (one
object with "meta" and "rows", full precision) and aligned text (display
values rounded half-away-from-zero). Every table header embeds the weight
fingerprint, alpha, min_games and the close-game threshold so a report is
reproducible from its own metadata.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Mapping, Sequence

from .indices import EmptySeriesError, parse_metric_name, player_series
from .ingest import Dataset, filter_min_games
from .model import WeightConfig
from .splits import (
    DEFAULT_CLOSE_THRESHOLD,
    InsufficientSplitError,
    plus_minus_summary,
    split_compare,
)
from .stats import (
    SeriesSummary,
    comparable_means,
    correlation_significance,
    kendall_tau,
    mean,
    pearson,
    spearman,
    summarize,
)

Cell = float | int | str | None


class EmptyAfterFilterError(ValueError):
    """No players remain after the min-games filter."""


class PlayerSetMismatchError(ValueError):
    """Rank delta requested for tables over different player sets."""


@dataclass(frozen=True)
class RankedRow:
    rank: int
    player_id: str
    player_name: str
    value: float | None
    aux: tuple[tuple[str, Cell], ...] = ()
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class RankedTable:
    """Players ordered by a metric, ranks 1..n, deterministic tie-break."""

    title: str
    metric_name: str
    rows: tuple[RankedRow, ...]
    meta: Mapping[str, Cell]
    display_decimals: int = 2

    def rank_of(self, player_id: str) -> int:
        for row in self.rows:
            if row.player_id == player_id:
                return row.rank
        raise KeyError(player_id)

    def player_ids(self) -> set[str]:
        return {row.player_id for row in self.rows}


@dataclass(frozen=True)
class Table:
    """Generic renderable table (deltas, splits, overviews, correlations)."""

    title: str
    columns: tuple[str, ...]
    rows: tuple[tuple[Cell, ...], ...]
    meta: Mapping[str, Cell]
    display_decimals: int = 2


def base_meta(
    weights: WeightConfig,
    alpha: float,
    min_games: int,
    close_threshold: int,
    **extra: Cell,
) -> dict[str, Cell]:
    meta: dict[str, Cell] = {
        "weights_fingerprint": weights.fingerprint(),
        "alpha": alpha,
        "min_games": min_games,
        "close_threshold": close_threshold,
    }
    meta.update(extra)
    return meta


def rank_values(
    metric_name: str,
    entries: Sequence[tuple[str, str, float]],
    *,
    title: str | None = None,
    meta: Mapping[str, Cell] | None = None,
    display_decimals: int = 2,
    aux: Mapping[str, Sequence[Cell]] | None = None,
) -> RankedTable:
    """Rank precomputed (player_id, player_name, value) triples.

    Descending by value; exact ties are ordered by ascending player_name
    (then id) and flagged with a "tie" note. ``aux`` maps extra column names
    to per-entry values aligned with ``entries``.
    """
    if not entries:
        raise EmptyAfterFilterError("nothing to rank")
    aux = aux or {}
    indexed = sorted(
        range(len(entries)),
        key=lambda i: (-entries[i][2], entries[i][1], entries[i][0]),
    )
    value_counts: dict[float, int] = {}
    for _, _, value in entries:
        value_counts[value] = value_counts.get(value, 0) + 1
    rows = []
    for rank, i in enumerate(indexed, start=1):
        player_id, player_name, value = entries[i]
        notes = ("tie",) if value_counts[value] > 1 else ()
        row_aux = tuple((name, column[i]) for name, column in aux.items())
        rows.append(
            RankedRow(
                rank=rank,
                player_id=player_id,
                player_name=player_name,
                value=value,
                aux=row_aux,
                notes=notes,
            )
        )
    return RankedTable(
        title=title or f"ranking by {metric_name}",
        metric_name=metric_name,
        rows=tuple(rows),
        meta=dict(meta or {}),
        display_decimals=display_decimals,
    )


def _player_names(dataset: Dataset) -> dict[str, str]:
    names: dict[str, str] = {}
    for player_id in dataset.player_ids():
        names[player_id] = dataset.lines_for(player_id)[0].player_name
    return names


def rank_players(
    dataset: Dataset,
    metric_name: str,
    weights: WeightConfig | None = None,
    *,
    per_minute: bool = False,
    min_games: int = 1,
    alpha: float = 0.05,
    close_threshold: int = DEFAULT_CLOSE_THRESHOLD,
) -> RankedTable:
    """Rank players by the mean of their per-game metric.

    With ``per_minute`` each game's value is divided by that game's minutes
    before averaging; zero-minute games are excluded. Players with no
    qualifying games are dropped.
    """
    weights = weights or WeightConfig.defaults()
    metric, suffix_per_minute = parse_metric_name(metric_name)
    use_per_minute = per_minute or suffix_per_minute
    filtered = filter_min_games(dataset, min_games)
    names = _player_names(filtered)
    entries: list[tuple[str, str, float]] = []
    game_counts: list[Cell] = []
    for player_id in filtered.player_ids():
        try:
            series = player_series(
                filtered, player_id, metric, weights, per_minute_values=use_per_minute
            )
        except EmptySeriesError:
            continue
        entries.append((player_id, names[player_id], mean(series.values)))
        game_counts.append(len(series))
    if not entries:
        raise EmptyAfterFilterError(
            f"no players with qualifying games for {metric_name!r} at min_games={min_games}"
        )
    effective_name = f"{metric}_per_minute" if use_per_minute else metric
    return rank_values(
        effective_name,
        entries,
        title=f"ranking by mean {effective_name}",
        meta=base_meta(
            weights,
            alpha,
            min_games,
            close_threshold,
            metric=effective_name,
            per_minute=use_per_minute,
        ),
        aux={"games": game_counts},
    )


def rank_delta(table_a: RankedTable, table_b: RankedTable) -> Table:
    """Per-player rank movement between two rankings.

    delta = rank_a - rank_b, so positive means the player improved from a
    to b. Rows are sorted by player_id for stable element-wise comparison.
    """
    if table_a.player_ids() != table_b.player_ids():
        only_a = sorted(table_a.player_ids() - table_b.player_ids())
        only_b = sorted(table_b.player_ids() - table_a.player_ids())
        raise PlayerSetMismatchError(
            f"tables rank different players (only in a: {only_a}, only in b: {only_b})"
        )
    names = {row.player_id: row.player_name for row in table_a.rows}
    rows = []
    for player_id in sorted(names):
        rank_a = table_a.rank_of(player_id)
        rank_b = table_b.rank_of(player_id)
        rows.append((player_id, names[player_id], rank_a, rank_b, rank_a - rank_b))
    meta = dict(table_b.meta)
    meta["metric_a"] = table_a.metric_name
    meta["metric_b"] = table_b.metric_name
    return Table(
        title=f"rank delta: {table_a.metric_name} -> {table_b.metric_name}",
        columns=("player_id", "player_name", "rank_a", "rank_b", "delta"),
        rows=tuple(rows),
        meta=meta,
    )


def regularity_table(
    dataset: Dataset,
    metric_name: str,
    weights: WeightConfig | None = None,
    *,
    per_minute: bool = False,
    min_games: int = 2,
    alpha: float = 0.05,
    close_threshold: int = DEFAULT_CLOSE_THRESHOLD,
    comparability_tolerance: float = 0.25,
) -> RankedTable:
    """Rank players by regularity (mean / sample sd) of a per-game metric.

    Columns carry the mean, its rank, the sample sd and the regularity rank.
    Constant-series players cannot be ranked by regularity and are placed
    last with a "constant" note. Players whose mean is not comparable to the
    table's median mean get an "incomparable-mean" warning note, since
    regularity should only decide between players with similar means.
    """
    weights = weights or WeightConfig.defaults()
    metric, suffix_per_minute = parse_metric_name(metric_name)
    use_per_minute = per_minute or suffix_per_minute
    min_games = max(min_games, 2)
    filtered = filter_min_games(dataset, min_games)
    names = _player_names(filtered)
    summaries: dict[str, SeriesSummary] = {}
    for player_id in filtered.player_ids():
        try:
            series = player_series(
                filtered, player_id, metric, weights, per_minute_values=use_per_minute
            )
        except EmptySeriesError:
            continue
        if len(series) < 2:
            continue
        summaries[player_id] = summarize(series)
    if not summaries:
        raise EmptyAfterFilterError(
            f"no players with >= 2 qualifying games for {metric_name!r}"
        )

    ordered_means = sorted(s.mean for s in summaries.values())
    median_mean = ordered_means[(len(ordered_means) - 1) // 2]
    median_summary = SeriesSummary(1, median_mean, None, 0.0, None, True)

    regular = [pid for pid, s in summaries.items() if not s.constant_series]
    constant = [pid for pid, s in summaries.items() if s.constant_series]
    regular.sort(key=lambda pid: (-summaries[pid].regularity, names[pid], pid))
    constant.sort(key=lambda pid: (names[pid], pid))
    by_mean = sorted(summaries, key=lambda pid: (-summaries[pid].mean, names[pid], pid))
    mean_rank = {pid: i + 1 for i, pid in enumerate(by_mean)}

    effective_name = f"{metric}_per_minute" if use_per_minute else metric
    rows = []
    for rank, player_id in enumerate(regular + constant, start=1):
        summary = summaries[player_id]
        notes: list[str] = []
        if summary.constant_series:
            notes.append("constant")
        if not comparable_means(summary, median_summary, comparability_tolerance):
            notes.append("incomparable-mean")
        rows.append(
            RankedRow(
                rank=rank,
                player_id=player_id,
                player_name=names[player_id],
                value=summary.regularity,
                aux=(
                    ("mean", summary.mean),
                    ("mean_rank", mean_rank[player_id]),
                    ("sd", summary.sd_sample),
                    ("games", summary.n),
                ),
                notes=tuple(notes),
            )
        )
    return RankedTable(
        title=f"regularity of {effective_name}",
        metric_name=f"{effective_name}:regularity",
        rows=tuple(rows),
        meta=base_meta(
            weights,
            alpha,
            min_games,
            close_threshold,
            metric=effective_name,
            per_minute=use_per_minute,
            comparability_tolerance=comparability_tolerance,
        ),
        display_decimals=3,
    )


def plus_minus_overview(
    dataset: Dataset,
    *,
    close_threshold: int = DEFAULT_CLOSE_THRESHOLD,
    alpha: float = 0.05,
    min_games: int = 1,
    weights: WeightConfig | None = None,
) -> Table:
    """Mean plus_minus per player: total, close games, wins, losses."""
    weights = weights or WeightConfig.defaults()
    filtered = filter_min_games(dataset, min_games)
    names = _player_names(filtered)
    if not names:
        raise EmptyAfterFilterError("no players after filter")
    rows = []
    for player_id in sorted(names, key=lambda pid: (names[pid], pid)):
        summary = plus_minus_summary(player_id, filtered, close_threshold=close_threshold)
        cells: list[Cell] = [player_id, names[player_id], summary.overall.mean]
        for stat in summary.by_label:
            cells.append(stat.mean)
        rows.append(tuple(cells))
    return Table(
        title="mean plus/minus by game context",
        columns=("player_id", "player_name", "total", "close", "win", "loss"),
        rows=tuple(rows),
        meta=base_meta(weights, alpha, min_games, close_threshold),
    )


def win_loss_table(
    dataset: Dataset,
    metric_name: str,
    weights: WeightConfig | None = None,
    *,
    alpha: float = 0.05,
    min_games: int = 1,
    close_threshold: int = DEFAULT_CLOSE_THRESHOLD,
) -> Table:
    """Per-player win/loss comparison of a metric, significant rows starred.

    Players whose split has fewer than two games on either side are listed
    with an "insufficient" note and no test result.
    """
    weights = weights or WeightConfig.defaults()
    filtered = filter_min_games(dataset, min_games)
    names = _player_names(filtered)
    if not names:
        raise EmptyAfterFilterError("no players after filter")
    rows = []
    for player_id in sorted(names, key=lambda pid: (names[pid], pid)):
        try:
            comparison = split_compare(
                player_id,
                metric_name,
                "win_loss",
                filtered,
                weights,
                alpha,
                close_threshold=close_threshold,
            )[0]
        except InsufficientSplitError:
            rows.append((player_id, names[player_id], None, None, None, None, None, "insufficient"))
            continue
        rows.append(
            (
                player_id,
                names[player_id],
                comparison.n_a,
                comparison.mean_a,
                comparison.n_b,
                comparison.mean_b,
                comparison.p_value,
                "*" if comparison.significant else "",
            )
        )
    return Table(
        title=f"{metric_name} in losses vs wins",
        columns=(
            "player_id",
            "player_name",
            "n_loss",
            "mean_loss",
            "n_win",
            "mean_win",
            "p_value",
            "sig",
        ),
        rows=tuple(rows),
        meta=base_meta(weights, alpha, min_games, close_threshold, metric=metric_name),
        display_decimals=3,
    )


def correlation_table(
    dataset: Dataset,
    metric_pairs: Sequence[tuple[str, str]],
    weights: WeightConfig | None = None,
    *,
    alpha: float = 0.05,
    min_games: int = 10,
    close_threshold: int = DEFAULT_CLOSE_THRESHOLD,
) -> Table:
    """Pearson/Kendall/Spearman between per-player means of metric pairs."""
    weights = weights or WeightConfig.defaults()
    filtered = filter_min_games(dataset, min_games)
    player_ids = filtered.player_ids()
    if len(player_ids) < 4:
        raise EmptyAfterFilterError(
            f"need at least 4 players after min_games={min_games}, got {len(player_ids)}"
        )
    rows = []
    for metric_x, metric_y in metric_pairs:
        xs, ys = [], []
        for player_id in player_ids:
            try:
                x = _mean_for(filtered, player_id, metric_x, weights)
                y = _mean_for(filtered, player_id, metric_y, weights)
            except EmptySeriesError:
                continue
            xs.append(x)
            ys.append(y)
        if len(xs) < 4:
            raise EmptyAfterFilterError(
                f"fewer than 4 players with qualifying games for {metric_x}/{metric_y}"
            )
        cells: list[Cell] = [f"{metric_x} vs {metric_y}", len(xs)]
        for kind, fn in (("pearson", pearson), ("kendall", kendall_tau), ("spearman", spearman)):
            r = fn(xs, ys)
            test = correlation_significance(r, len(xs), kind, alpha)
            cells.append(r)
            cells.append("*" if test.significant else "")
        rows.append(tuple(cells))
    return Table(
        title="correlations between per-player means",
        columns=(
            "pair",
            "n",
            "pearson",
            "sig_p",
            "kendall",
            "sig_k",
            "spearman",
            "sig_s",
        ),
        rows=tuple(rows),
        meta=base_meta(weights, alpha, min_games, close_threshold),
        display_decimals=3,
    )


def _mean_for(dataset: Dataset, player_id: str, metric_name: str, weights: WeightConfig) -> float:
    metric, use_per_minute = parse_metric_name(metric_name)
    series = player_series(dataset, player_id, metric, weights, per_minute_values=use_per_minute)
    return mean(series.values)


# --- rendering -------------------------------------------------------------

def format_display(value: Cell, decimals: int) -> str:
    """Text-format cell: floats rounded half-away-from-zero to ``decimals``."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        quantum = Decimal(1).scaleb(-decimals)
        return str(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP))
    return str(value)


def format_full(value: Cell) -> str:
    """Full-precision cell for CSV."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _as_grid(table: RankedTable | Table) -> tuple[tuple[str, ...], list[tuple[Cell, ...]]]:
    if isinstance(table, Table):
        return table.columns, list(table.rows)
    columns = ["rank", "player_id", "player_name", "value"]
    if table.rows:
        columns.extend(name for name, _ in table.rows[0].aux)
    columns.append("notes")
    grid = []
    for row in table.rows:
        cells: list[Cell] = [row.rank, row.player_id, row.player_name, row.value]
        cells.extend(value for _, value in row.aux)
        cells.append(",".join(row.notes))
        grid.append(tuple(cells))
    return tuple(columns), grid


def render(table: RankedTable | Table, fmt: str = "text") -> bytes:
    """Render a table to UTF-8 bytes in csv, json or aligned-text format.

    Output is deterministic: identical tables render byte-identically. CSV
    is RFC-4180 with full-precision values and no metadata block; JSON and
    text carry the table metadata.
    """
    columns, grid = _as_grid(table)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(columns)
        for row in grid:
            writer.writerow([format_full(cell) for cell in row])
        return buf.getvalue().encode("utf-8")
    if fmt == "json":
        doc = {
            "meta": {"title": table.title, **dict(table.meta)},
            "rows": [dict(zip(columns, row)) for row in grid],
        }
        return (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt == "text":
        decimals = table.display_decimals
        header_lines = [f"# {table.title}"]
        if table.meta:
            parts = [f"{key}={format_full(value)}" for key, value in table.meta.items()]
            header_lines.append("# " + "  ".join(parts))
        formatted = [tuple(format_display(cell, decimals) for cell in row) for row in grid]
        widths = [len(name) for name in columns]
        for row in formatted:
            for i, cell in enumerate(row):
                widths[i] = max(widths[i], len(cell))
        right = [
            any(isinstance(row[i], (int, float)) and not isinstance(row[i], bool) for row in grid)
            for i in range(len(columns))
        ]
        def line(cells: Sequence[str]) -> str:
            return "  ".join(
                cell.rjust(widths[i]) if right[i] else cell.ljust(widths[i])
                for i, cell in enumerate(cells)
            ).rstrip()
        body = [line(columns)] + [line(row) for row in formatted]
        return ("\n".join(header_lines + body) + "\n").encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}; expected csv, json or text")
