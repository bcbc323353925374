"""Command-line interface.

Subcommands mirror the analysis workflow: validate a season, rank players,
compare two rankings, build regularity tables, run context splits and
correlations, or write the whole report set in one go. Exit codes: 0 on
success, 2 for validation/domain failures, 3 for I/O failures.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .ingest import IngestError, load_dataset
from .model import UnknownPlayerError, WeightConfig
from .report import (
    EmptyAfterFilterError,
    PlayerSetMismatchError,
    Table,
    correlation_table,
    plus_minus_overview,
    rank_delta,
    rank_players,
    regularity_table,
    render,
    win_loss_table,
)
from .splits import DEFAULT_CLOSE_THRESHOLD, SPLIT_KINDS, InsufficientSplitError, split_compare
from .stats import ConstantInputError, TooFewSamplesError

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_IO = 3


def _add_input_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--games", help="games CSV path")
    parser.add_argument("--lines", help="lines CSV path")
    parser.add_argument("--json", dest="json_path", help="single JSON dataset path")
    parser.add_argument("--weights", help="JSON file with weight overrides")
    parser.add_argument("--alpha", type=float, default=0.05, help="significance level")
    parser.add_argument("--min-games", type=int, default=10, help="min games per player")
    parser.add_argument(
        "--close-threshold",
        type=int,
        default=DEFAULT_CLOSE_THRESHOLD,
        help="max final margin of a close game",
    )
    parser.add_argument("--per-minute", action="store_true", help="normalize by minutes")
    parser.add_argument("--format", choices=("csv", "json", "text"), default="text")
    parser.add_argument("--out", help="output file (or directory for report-all)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boxmetrics",
        description="Boxscore-driven player performance, regularity and split analysis",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate a dataset")
    _add_input_options(p)

    p = sub.add_parser("rank", help="rank players by a metric mean")
    p.add_argument("metric", help="points|id|io|rend|valoracion (suffix :reg for regularity)")
    _add_input_options(p)

    p = sub.add_parser("regularity", help="regularity table for a metric")
    p.add_argument("metric")
    _add_input_options(p)

    p = sub.add_parser("delta", help="rank movement between two metrics")
    p.add_argument("metric_a")
    p.add_argument("metric_b")
    _add_input_options(p)

    p = sub.add_parser("splits", help="context split comparison for a player")
    p.add_argument("player", help="player_id, or 'all' for the plus/minus overview")
    p.add_argument("metric", help="e.g. rend_per_minute, points_per_minute, plus_minus")
    p.add_argument("kind", nargs="?", default="win_loss", choices=SPLIT_KINDS)
    p.add_argument("--competition", help="competition name for the competition split")
    _add_input_options(p)

    p = sub.add_parser("correlate", help="correlate per-player means of two metrics")
    p.add_argument("metric_x")
    p.add_argument("metric_y")
    _add_input_options(p)

    p = sub.add_parser("report-all", help="write the full report set to a directory")
    _add_input_options(p)

    return parser


def _load(args: argparse.Namespace):
    dataset = load_dataset(args.games, args.lines, args.json_path)
    if args.weights:
        weights = WeightConfig.from_json(Path(args.weights).read_text(encoding="utf-8"))
    else:
        weights = WeightConfig.defaults()
    if not 0.0 < args.alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {args.alpha}")
    if args.min_games < 1:
        raise ValueError(f"min-games must be >= 1, got {args.min_games}")
    if args.close_threshold < 0:
        raise ValueError(f"close-threshold must be >= 0, got {args.close_threshold}")
    return dataset, weights


def _emit(payload: bytes, out: str | None) -> None:
    if out:
        Path(out).write_bytes(payload)
    else:
        sys.stdout.write(payload.decode("utf-8"))


def _rank_table(args, dataset, weights, metric: str):
    if metric.endswith(":reg"):
        return regularity_table(
            dataset,
            metric[: -len(":reg")],
            weights,
            per_minute=args.per_minute,
            min_games=args.min_games,
            alpha=args.alpha,
            close_threshold=args.close_threshold,
        )
    return rank_players(
        dataset,
        metric,
        weights,
        per_minute=args.per_minute,
        min_games=args.min_games,
        alpha=args.alpha,
        close_threshold=args.close_threshold,
    )


def _cmd_validate(args) -> int:
    dataset, _ = _load(args)
    print(
        f"ok: {len(dataset.games)} games, {len(dataset.lines)} lines, "
        f"{len(dataset.player_ids())} players"
    )
    return EXIT_OK


def _cmd_rank(args) -> int:
    dataset, weights = _load(args)
    table = _rank_table(args, dataset, weights, args.metric)
    _emit(render(table, args.format), args.out)
    return EXIT_OK


def _cmd_delta(args) -> int:
    dataset, weights = _load(args)
    table_a = _rank_table(args, dataset, weights, args.metric_a)
    table_b = _rank_table(args, dataset, weights, args.metric_b)
    _emit(render(rank_delta(table_a, table_b), args.format), args.out)
    return EXIT_OK


def _cmd_regularity(args) -> int:
    dataset, weights = _load(args)
    table = regularity_table(
        dataset,
        args.metric,
        weights,
        per_minute=args.per_minute,
        min_games=args.min_games,
        alpha=args.alpha,
        close_threshold=args.close_threshold,
    )
    _emit(render(table, args.format), args.out)
    return EXIT_OK


def _cmd_splits(args) -> int:
    dataset, weights = _load(args)
    if args.player == "all":
        table = plus_minus_overview(
            dataset,
            close_threshold=args.close_threshold,
            alpha=args.alpha,
            min_games=args.min_games,
            weights=weights,
        )
        _emit(render(table, args.format), args.out)
        return EXIT_OK
    try:
        comparisons = split_compare(
            args.player,
            args.metric,
            args.kind,
            dataset,
            weights,
            args.alpha,
            close_threshold=args.close_threshold,
            competition=args.competition,
        )
    except InsufficientSplitError as exc:
        print(f"warning: {exc}", file=sys.stderr)
        return EXIT_OK
    rows = tuple(
        (
            c.metric_name,
            c.group_a_label,
            c.n_a,
            c.mean_a,
            c.group_b_label,
            c.n_b,
            c.mean_b,
            c.t_stat,
            c.p_value,
            "*" if c.significant else "",
        )
        for c in comparisons
    )
    table = Table(
        title=f"{args.metric} split by {args.kind} for {args.player}",
        columns=(
            "metric",
            "side_a",
            "n_a",
            "mean_a",
            "side_b",
            "n_b",
            "mean_b",
            "t_stat",
            "p_value",
            "sig",
        ),
        rows=rows,
        meta={
            "player": args.player,
            "alpha": args.alpha,
            "close_threshold": args.close_threshold,
            "weights_fingerprint": weights.fingerprint(),
            "min_games": args.min_games,
        },
        display_decimals=3,
    )
    _emit(render(table, args.format), args.out)
    return EXIT_OK


def _cmd_correlate(args) -> int:
    dataset, weights = _load(args)
    pair = (args.metric_x, args.metric_y)
    table = correlation_table(
        dataset,
        [pair],
        weights,
        alpha=args.alpha,
        min_games=args.min_games,
        close_threshold=args.close_threshold,
    )
    _emit(render(table, args.format), args.out)
    return EXIT_OK


def _cmd_report_all(args) -> int:
    dataset, weights = _load(args)
    out_dir = Path(args.out or "reports")
    out_dir.mkdir(parents=True, exist_ok=True)
    ext = {"csv": "csv", "json": "json", "text": "txt"}[args.format]
    common = dict(
        min_games=args.min_games,
        alpha=args.alpha,
        close_threshold=args.close_threshold,
    )
    written: list[str] = []

    def write(name: str, table) -> None:
        path = out_dir / f"{name}.{ext}"
        path.write_bytes(render(table, args.format))
        written.append(path.name)

    for metric in ("valoracion", "rend", "id", "io", "points"):
        write(f"rank_{metric}", rank_players(dataset, metric, weights, **common))
        write(
            f"rank_{metric}_per_minute",
            rank_players(dataset, metric, weights, per_minute=True, **common),
        )
    for metric in ("rend", "id", "io"):
        write(
            f"regularity_{metric}_per_minute",
            regularity_table(dataset, metric, weights, per_minute=True, **common),
        )
    write(
        "delta_valoracion_to_rend",
        rank_delta(
            rank_players(dataset, "valoracion", weights, **common),
            rank_players(dataset, "rend", weights, **common),
        ),
    )
    write(
        "plus_minus_overview",
        plus_minus_overview(
            dataset,
            close_threshold=args.close_threshold,
            alpha=args.alpha,
            min_games=args.min_games,
            weights=weights,
        ),
    )
    for metric in ("points_per_minute", "rend_per_minute", "id_per_minute", "io_per_minute"):
        write(f"win_loss_{metric}", win_loss_table(dataset, metric, weights, **common))
    write(
        "correlations",
        correlation_table(
            dataset,
            [("valoracion", "points"), ("rend", "points")],
            weights,
            **common,
        ),
    )
    print(f"wrote {len(written)} reports to {out_dir}")
    return EXIT_OK


_COMMANDS = {
    "validate": _cmd_validate,
    "rank": _cmd_rank,
    "regularity": _cmd_regularity,
    "delta": _cmd_delta,
    "splits": _cmd_splits,
    "correlate": _cmd_correlate,
    "report-all": _cmd_report_all,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (
        IngestError,
        EmptyAfterFilterError,
        PlayerSetMismatchError,
        UnknownPlayerError,
        ConstantInputError,
        TooFewSamplesError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
