"""Run records and their JSON Lines persistence.

One record per benchmark cell, one JSON object per line, appended as soon
as the cell finishes.  Key order inside a line is sorted, so identical
records serialize to identical bytes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Mapping, TextIO

__all__ = ["RecordError", "RunRecord", "append_record", "read_records", "record_key", "write_records"]

_REQUIRED = (
    "run_id",
    "timestamp_utc",
    "task_id",
    "task_version",
    "prompt_template_version",
    "model_id",
    "size_index",
    "size_params",
    "repetition",
    "seed",
    "prompt",
    "response",
    "scores",
    "duration_ms",
)


class RecordError(Exception):
    """A malformed results line; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str) -> None:
        self.line_no = line_no
        self.message = message
        super().__init__(f"line {line_no}: {message}")


@dataclass(frozen=True)
class RunRecord:
    run_id: str
    timestamp_utc: str
    task_id: str
    task_version: str
    prompt_template_version: str
    model_id: str
    size_index: int
    size_params: Mapping[str, Any]
    repetition: int
    seed: int
    prompt: str
    response: str
    scores: Mapping[str, Any]
    duration_ms: int
    error: str | None = field(default=None)

    def to_json(self) -> str:
        data = {
            "run_id": self.run_id,
            "timestamp_utc": self.timestamp_utc,
            "task_id": self.task_id,
            "task_version": self.task_version,
            "prompt_template_version": self.prompt_template_version,
            "model_id": self.model_id,
            "size_index": self.size_index,
            "size_params": dict(self.size_params),
            "repetition": self.repetition,
            "seed": self.seed,
            "prompt": self.prompt,
            "response": self.response,
            "scores": dict(self.scores),
            "duration_ms": self.duration_ms,
        }
        if self.error is not None:
            data["error"] = self.error
        return json.dumps(data, sort_keys=True, ensure_ascii=False)


def record_key(record: RunRecord) -> tuple[str, str, int, int]:
    """The identity of a cell: unique within a run."""
    return (record.task_id, record.model_id, record.size_index, record.repetition)


def _from_dict(data: Any, line_no: int) -> RunRecord:
    if not isinstance(data, dict):
        raise RecordError(line_no, "record is not a JSON object")
    missing = [key for key in _REQUIRED if key not in data]
    if missing:
        raise RecordError(line_no, f"missing keys: {', '.join(missing)}")
    scores = data["scores"]
    if not isinstance(scores, dict) or not scores:
        raise RecordError(line_no, "scores must be a non-empty object")
    try:
        return RunRecord(
            run_id=str(data["run_id"]),
            timestamp_utc=str(data["timestamp_utc"]),
            task_id=str(data["task_id"]),
            task_version=str(data["task_version"]),
            prompt_template_version=str(data["prompt_template_version"]),
            model_id=str(data["model_id"]),
            size_index=int(data["size_index"]),
            size_params=dict(data["size_params"]),
            repetition=int(data["repetition"]),
            seed=int(data["seed"]),
            prompt=str(data["prompt"]),
            response=str(data["response"]),
            scores=scores,
            duration_ms=int(data["duration_ms"]),
            error=None if data.get("error") is None else str(data["error"]),
        )
    except (TypeError, ValueError) as exc:
        raise RecordError(line_no, f"bad field value: {exc}") from None


def read_records(path: str | Path) -> tuple[list[RunRecord], list[RecordError]]:
    """Read a results file; malformed lines are collected, not fatal."""
    records: list[RunRecord] = []
    errors: list[RecordError] = []
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                data = json.loads(line)
            except json.JSONDecodeError as exc:
                errors.append(RecordError(line_no, f"invalid JSON: {exc}"))
                continue
            try:
                records.append(_from_dict(data, line_no))
            except RecordError as exc:
                errors.append(exc)
    return records, errors


def append_record(handle: TextIO, record: RunRecord) -> None:
    handle.write(record.to_json() + "\n")
    handle.flush()


def write_records(path: str | Path, records: Iterable[RunRecord]) -> int:
    n = 0
    with open(path, "w", encoding="utf-8") as handle:
        for record in records:
            append_record(handle, record)
            n += 1
    return n
