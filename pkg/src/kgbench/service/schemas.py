"""Request and response bodies of the HTTP service."""
from __future__ import annotations

from typing import Any

from pydantic import BaseModel, ConfigDict, Field


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class HealthOut(_Strict):
    status: str
    version: str


class TaskInfo(_Strict):
    task_id: str
    task_version: str
    prompt_template_version: str
    default_sizes: list[dict[str, Any]]


class InstanceRequest(_Strict):
    task_id: str
    size_index: int = 1
    size_params: dict[str, Any] | None = None
    repetition: int = 1
    seed: int | None = None
    seed_base: int = 0


class InstanceOut(_Strict):
    task_id: str
    size_index: int
    size_params: dict[str, Any]
    repetition: int
    seed: int
    prompt: str


class EvaluateRequest(_Strict):
    task_id: str
    response: str
    size_index: int = 1
    size_params: dict[str, Any] | None = None
    repetition: int = 1
    seed: int | None = None
    seed_base: int = 0


class EvaluateOut(_Strict):
    task_id: str
    scores: dict[str, Any]


class RunRequest(_Strict):
    config: dict[str, Any]
    base_dir: str = "."
    replay: bool | None = None
    resume_path: str | None = None


class RunOut(_Strict):
    run_id: str
    records_written: int
    skipped_existing: int
    error_records: int
    results_path: str


class RescoreRequest(_Strict):
    results_path: str
    out_path: str


class LineIssue(_Strict):
    line_no: int
    message: str


class RescoreOut(_Strict):
    records_written: int
    issues: list[LineIssue] = Field(default_factory=list)


class StatsRequest(_Strict):
    results_path: str
    out_dir: str


class StatsOut(_Strict):
    stats_csv: str
    points_csv: str
    stat_rows: int
    records: int
    issues: list[LineIssue] = Field(default_factory=list)


class ProbeRequest(_Strict):
    config: dict[str, Any]
    base_dir: str = "."


class ProbeEntry(_Strict):
    model_id: str
    ok: bool
    message: str


class ProbeOut(_Strict):
    results: list[ProbeEntry]
    all_ok: bool
