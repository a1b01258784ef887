"""Aggregation of run records into per-group statistics and plot-ready CSVs."""
from __future__ import annotations

import csv
import statistics
from dataclasses import dataclass
from pathlib import Path

from .records import RunRecord

__all__ = ["StatRow", "aggregate_stats", "emit_plot_data"]

STATS_HEADER = ["task_id", "model_id", "size_index", "score_name", "n", "mean", "median", "stddev", "min", "max"]
POINTS_HEADER = ["task_id", "model_id", "size_index", "repetition", "score_name", "value"]


@dataclass(frozen=True)
class StatRow:
    task_id: str
    model_id: str
    size_index: int
    score_name: str
    n: int
    mean: float
    median: float
    stddev: float
    min: float
    max: float


def _numeric(value: object) -> float | None:
    if isinstance(value, bool):
        return 1.0 if value else 0.0
    if isinstance(value, (int, float)):
        return float(value)
    return None


def aggregate_stats(records: list[RunRecord]) -> list[StatRow]:
    """Group scores by (task, model, size, score name) and summarize each group.

    Boolean scores enter as 0/1, so their mean is the rate of true.
    Non-numeric score values are ignored.
    """
    groups: dict[tuple[str, str, int, str], list[float]] = {}
    for record in records:
        for name, raw in record.scores.items():
            value = _numeric(raw)
            if value is None:
                continue
            groups.setdefault((record.task_id, record.model_id, record.size_index, name), []).append(value)
    rows: list[StatRow] = []
    for key in sorted(groups):
        values = groups[key]
        task_id, model_id, size_index, score_name = key
        rows.append(
            StatRow(
                task_id=task_id,
                model_id=model_id,
                size_index=size_index,
                score_name=score_name,
                n=len(values),
                mean=statistics.fmean(values),
                median=statistics.median(values),
                stddev=statistics.stdev(values) if len(values) > 1 else 0.0,
                min=min(values),
                max=max(values),
            )
        )
    return rows


def emit_plot_data(
    stats: list[StatRow], records: list[RunRecord], out_dir: str | Path
) -> tuple[Path, Path]:
    """Write stats.csv and points.csv under out_dir; returns both paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stats_path = out / "stats.csv"
    points_path = out / "points.csv"

    with open(stats_path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(STATS_HEADER)
        for row in stats:
            writer.writerow(
                [row.task_id, row.model_id, row.size_index, row.score_name,
                 row.n, repr(row.mean), repr(row.median), repr(row.stddev),
                 repr(row.min), repr(row.max)]
            )

    with open(points_path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(POINTS_HEADER)
        for record in records:
            for name in sorted(record.scores):
                value = _numeric(record.scores[name])
                if value is None:
                    continue
                writer.writerow(
                    [record.task_id, record.model_id, record.size_index,
                     record.repetition, name, repr(value)]
                )
    return stats_path, points_path
