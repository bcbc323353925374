"""Per-game performance indices and per-minute normalization.

The headline number is ``rend`` (rendimiento), the sum of a defensive and an
offensive index, each a weighted count combination taken straight from the
boxscore. The league's official valoracion is computed alongside as the
comparison baseline. Per-minute normalization divides any per-game value by
the minutes actually played; did-not-play lines are never divided, they are
excluded when a per-minute series is built.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .model import (
    DEFENSIVE_KEYS,
    OFFENSIVE_KEYS,
    BoxscoreLine,
    MetricSeries,
    UnknownPlayerError,
    WeightConfig,
    derived_points,
)
from .ingest import Dataset

logger = logging.getLogger(__name__)

# Metric keys understood by series builders, rankings and splits.
METRICS = ("points", "id", "io", "rend", "valoracion", "plus_minus")


class ZeroMinutesError(ValueError):
    """Per-minute value requested for a line with zero minutes."""


class EmptySeriesError(ValueError):
    """No qualifying games remain for a requested series."""


@dataclass(frozen=True)
class IndexValue:
    """All index values for one player line; ``rend_raw`` is exactly
    ``id_raw + io_raw``."""

    player_id: str
    game_id: str
    id_raw: float
    io_raw: float
    rend_raw: float
    valoracion_raw: float
    minutes: float


def defensive_index(line: BoxscoreLine, weights: WeightConfig) -> float:
    """Weighted sum over the defensive keys (rd, tf, fpc, br)."""
    return sum(weights[key] * getattr(line, key) for key in DEFENSIVE_KEYS)


def offensive_index(line: BoxscoreLine, weights: WeightConfig) -> float:
    """Weighted sum over the offensive keys (shooting, ro, a, fpr, bp)."""
    return sum(weights[key] * getattr(line, key) for key in OFFENSIVE_KEYS)


def rendimiento(line: BoxscoreLine, weights: WeightConfig) -> IndexValue:
    """Full index evaluation for one line."""
    id_raw = defensive_index(line, weights)
    io_raw = offensive_index(line, weights)
    return IndexValue(
        player_id=line.player_id,
        game_id=line.game_id,
        id_raw=id_raw,
        io_raw=io_raw,
        rend_raw=id_raw + io_raw,
        valoracion_raw=valoracion_acb(line),
        minutes=line.minutes,
    )


def valoracion_acb(line: BoxscoreLine) -> float:
    """League valoracion: credits minus debits, all unit-weighted.

    (points + rd + ro + a + br + tf + fpr) - (t2f + t3f + t1f + bp + tr + fpc).
    Blocks received (tr) subtract here even though they carry no weight in
    the defensive/offensive indices.
    """
    credits = derived_points(line) + line.rd + line.ro + line.a + line.br + line.tf + line.fpr
    debits = line.t2f + line.t3f + line.t1f + line.bp + line.tr + line.fpc
    return float(credits - debits)


def per_minute(value: float, minutes: float) -> float:
    """``value / minutes``; zero-minute lines must be excluded, not divided."""
    if minutes <= 0:
        raise ZeroMinutesError(f"cannot normalize by {minutes} minutes")
    return value / minutes


def metric_value(line: BoxscoreLine, metric: str, weights: WeightConfig) -> float | None:
    """Raw per-game value of ``metric`` for one line.

    Returns None for plus_minus when the source did not report it.
    """
    if metric == "points":
        return float(derived_points(line))
    if metric == "id":
        return defensive_index(line, weights)
    if metric == "io":
        return offensive_index(line, weights)
    if metric == "rend":
        idx = rendimiento(line, weights)
        return idx.rend_raw
    if metric == "valoracion":
        return valoracion_acb(line)
    if metric == "plus_minus":
        return None if line.plus_minus is None else float(line.plus_minus)
    raise ValueError(f"unknown metric {metric!r}; expected one of {', '.join(METRICS)}")


def parse_metric_name(name: str) -> tuple[str, bool]:
    """Split a combined metric name into (base metric, per_minute flag).

    Accepts the base keys plus the ``*_per_minute`` forms; plus_minus has no
    per-minute variant.
    """
    if name in METRICS:
        return name, False
    if name.endswith("_per_minute"):
        base = name[: -len("_per_minute")]
        if base in METRICS and base != "plus_minus":
            return base, True
    raise ValueError(f"unknown metric {name!r}")


def player_series(
    dataset: Dataset,
    player_id: str,
    metric: str,
    weights: WeightConfig | None = None,
    *,
    per_minute_values: bool = False,
) -> MetricSeries:
    """Per-game series of ``metric`` for one player, in chronological order.

    Zero-minute lines are excluded from per-minute series (the exclusion
    count is logged); lines with no reported plus_minus are excluded from
    plus_minus series. Raises UnknownPlayerError for absent players and
    EmptySeriesError when no qualifying games remain.
    """
    if per_minute_values and metric == "plus_minus":
        raise ValueError("plus_minus has no per-minute form")
    weights = weights or WeightConfig.defaults()
    lines = dataset.lines_for(player_id)
    if not lines:
        raise UnknownPlayerError(f"no lines for player {player_id!r}")
    values: list[float] = []
    game_ids: list[str] = []
    excluded = 0
    for line in lines:
        raw = metric_value(line, metric, weights)
        if raw is None:
            excluded += 1
            continue
        if per_minute_values:
            if line.dnp:
                excluded += 1
                continue
            raw = per_minute(raw, line.minutes)
        values.append(raw)
        game_ids.append(line.game_id)
    if excluded:
        logger.debug(
            "player %s metric %s: excluded %d of %d lines (DNP or missing value)",
            player_id,
            metric,
            excluded,
            len(lines),
        )
    if not values:
        raise EmptySeriesError(
            f"player {player_id!r} has no qualifying games for metric {metric!r}"
        )
    name = f"{metric}_per_minute" if per_minute_values else metric
    return MetricSeries(
        player_id=player_id,
        metric_name=name,
        values=tuple(values),
        game_ids=tuple(game_ids),
    )


def player_mean(
    dataset: Dataset,
    player_id: str,
    metric: str,
    weights: WeightConfig | None = None,
    *,
    per_minute_values: bool = False,
) -> float:
    """Mean of the per-game series (per-game values averaged, not totals)."""
    series = player_series(
        dataset, player_id, metric, weights, per_minute_values=per_minute_values
    )
    return sum(series.values) / len(series.values)
