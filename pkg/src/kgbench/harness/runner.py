"""The run loop: instances in, records out, one cell at a time.

Instances are generated once per (task, size, repetition) and shared across
models, so every model faces byte-identical challenges.  Each finished cell
is appended to the results file immediately; a killed run can resume by
pointing at the partial file and only executes the missing cells.
"""
from __future__ import annotations

import datetime as dt
import time
import uuid
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from ..connectors.base import Connector, ConnectorError, Exchange, build_connector
from ..connectors.replay import ReplayCache, ReplayConnector
from ..tasks.base import BenchmarkTask, TaskInstance
from ..tasks.registry import get_task
from ..util import mix_seed
from .config import BenchmarkConfig
from .records import RecordError, RunRecord, append_record, read_records, record_key

__all__ = ["ProbeResult", "RunError", "RunSummary", "probe_models", "run"]

_PROBE_PROMPT = "Reply with the single word: ready."


class RunError(Exception):
    """The run cannot proceed (results file conflicts, unreadable resume file)."""


@dataclass(frozen=True)
class RunSummary:
    run_id: str
    records_written: int
    skipped_existing: int
    error_records: int
    results_path: Path


@dataclass(frozen=True)
class ProbeResult:
    model_id: str
    ok: bool
    message: str


def _build_connectors(config: BenchmarkConfig) -> dict[str, Connector]:
    connectors: dict[str, Connector] = {}
    for spec in config.models:
        connector = build_connector(spec)
        if config.replay_mode and spec.kind != "replay":
            cache = ReplayCache(config.output.replay_cache_path)
            connector = ReplayConnector(spec, cache, inner=connector)
        connectors[spec.model_id] = connector
    return connectors


def _existing_keys(path: Path) -> set[tuple[str, str, int, int]]:
    records, errors = read_records(path)
    if errors:
        raise RunError(
            f"cannot resume from {path}: {len(errors)} malformed line(s), first: {errors[0]}"
        )
    return {record_key(r) for r in records}


def run(
    config: BenchmarkConfig,
    resume_path: str | Path | None = None,
    log: Callable[[str], None] | None = None,
) -> RunSummary:
    """Execute every configured cell, appending records to the results file."""
    say = log or (lambda message: None)
    results_path = Path(resume_path) if resume_path else config.output.results_path
    done: set[tuple[str, str, int, int]] = set()
    if resume_path:
        if not results_path.is_file():
            raise RunError(f"resume file {results_path} does not exist")
        done = _existing_keys(results_path)
    elif results_path.exists() and results_path.stat().st_size > 0:
        raise RunError(
            f"results file {results_path} already exists; use resume to continue it"
        )

    tasks: dict[str, BenchmarkTask] = {plan.task_id: get_task(plan.task_id) for plan in config.tasks}
    connectors = _build_connectors(config)
    run_id = uuid.uuid4().hex[:12]
    written = 0
    errored = 0

    results_path.parent.mkdir(parents=True, exist_ok=True)
    with open(results_path, "a", encoding="utf-8") as handle:
        for plan in config.tasks:
            task = tasks[plan.task_id]
            for size_index, size_params in enumerate(plan.sizes, start=1):
                for repetition in range(1, plan.repetitions + 1):
                    seed = mix_seed(config.seed_base, plan.task_id, size_index, repetition)
                    instance: TaskInstance | None = None
                    for spec in config.models:
                        key = (plan.task_id, spec.model_id, size_index, repetition)
                        if key in done:
                            continue
                        if instance is None:
                            instance = task.make_instance(seed, size_index, size_params, repetition)
                        record = _run_cell(task, connectors[spec.model_id], instance, run_id)
                        append_record(handle, record)
                        done.add(key)
                        written += 1
                        if record.error is not None:
                            errored += 1
                        say(
                            f"{plan.task_id} size={size_index} rep={repetition} "
                            f"model={spec.model_id}: "
                            + (f"error ({record.error})" if record.error else "ok")
                        )
    skipped = config.cell_count() - written
    return RunSummary(
        run_id=run_id,
        records_written=written,
        skipped_existing=skipped,
        error_records=errored,
        results_path=results_path,
    )


def _run_cell(
    task: BenchmarkTask, connector: Connector, instance: TaskInstance, run_id: str
) -> RunRecord:
    conversation = [Exchange("user", instance.prompt)]
    started = time.monotonic()
    error: str | None = None
    try:
        response, _meta = connector.generate_text(conversation, instance)
        scores = task.evaluate(response, instance)
    except ConnectorError as exc:
        response = ""
        scores = {"error": True}
        error = f"{type(exc).__name__}: {exc}"
    duration_ms = int((time.monotonic() - started) * 1000)
    return RunRecord(
        run_id=run_id,
        timestamp_utc=dt.datetime.now(dt.timezone.utc).isoformat(),
        task_id=task.task_id,
        task_version=task.task_version,
        prompt_template_version=task.prompt_template_version,
        model_id=connector.spec.model_id,
        size_index=instance.size_index,
        size_params=dict(instance.size_params),
        repetition=instance.repetition,
        seed=instance.seed,
        prompt=instance.prompt,
        response=response,
        scores=scores,
        duration_ms=duration_ms,
        error=error,
    )


def probe_models(config: BenchmarkConfig) -> list[ProbeResult]:
    """Send one tiny prompt per connector and report reachability."""
    results: list[ProbeResult] = []
    for spec in config.models:
        try:
            connector = build_connector(spec)
            if spec.kind == "oracle":
                # Pure and local; constructible means usable.
                results.append(ProbeResult(spec.model_id, True, "oracle connector ready"))
                continue
            if spec.kind == "replay":
                root = Path(spec.cache_dir)
                if root.is_dir():
                    results.append(ProbeResult(spec.model_id, True, f"cache at {root}"))
                else:
                    results.append(ProbeResult(spec.model_id, False, f"no cache directory at {root}"))
                continue
            response, _ = connector.generate_text([Exchange("user", _PROBE_PROMPT)])
            preview = response[:60].replace("\n", " ")
            results.append(ProbeResult(spec.model_id, True, f"ok: {preview!r}"))
        except (ConnectorError, ValueError) as exc:
            results.append(ProbeResult(spec.model_id, False, f"{type(exc).__name__}: {exc}"))
    return results
