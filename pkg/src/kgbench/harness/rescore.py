"""Re-evaluate stored responses with the current scorers.

Prompts and responses are never touched; instances are regenerated from the
stored seeds, the scores and task_version fields are replaced.  Records
that captured a connector error are copied through unchanged — there is no
response to rescore.
"""
from __future__ import annotations

from pathlib import Path

from ..tasks.base import BenchmarkTask
from ..tasks.registry import get_task
from .records import RecordError, RunRecord, read_records, write_records

__all__ = ["rescore_file", "rescore_records"]


def rescore_records(records: list[RunRecord]) -> list[RunRecord]:
    tasks: dict[str, BenchmarkTask] = {}
    out: list[RunRecord] = []
    for record in records:
        if record.error is not None or record.scores.get("error") is True:
            out.append(record)
            continue
        task = tasks.get(record.task_id)
        if task is None:
            task = tasks[record.task_id] = get_task(record.task_id)
        instance = task.make_instance(
            record.seed, record.size_index, record.size_params, record.repetition
        )
        scores = task.evaluate(record.response, instance)
        out.append(
            RunRecord(
                run_id=record.run_id,
                timestamp_utc=record.timestamp_utc,
                task_id=record.task_id,
                task_version=task.task_version,
                prompt_template_version=record.prompt_template_version,
                model_id=record.model_id,
                size_index=record.size_index,
                size_params=record.size_params,
                repetition=record.repetition,
                seed=record.seed,
                prompt=record.prompt,
                response=record.response,
                scores=scores,
                duration_ms=record.duration_ms,
                error=record.error,
            )
        )
    return out


def rescore_file(
    in_path: str | Path, out_path: str | Path
) -> tuple[int, list[RecordError]]:
    """Rescore a results file line by line; malformed lines are reported, not fatal."""
    records, errors = read_records(in_path)
    rescored = rescore_records(records)
    write_records(out_path, rescored)
    return len(rescored), errors
