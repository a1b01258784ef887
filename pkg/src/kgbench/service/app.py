"""HTTP face of the harness.

Every operation the CLI offers exists as an endpoint here; the CLI is a
thin client of this app (in-process by default, remote with --server).
File paths in requests are interpreted on the machine the service runs on.

Error bodies carry an "error_kind" of config, io or run next to the detail
message so clients can map failures without parsing prose.
"""
from __future__ import annotations

import dataclasses

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..harness.config import ConfigError, parse_config
from ..harness.records import read_records
from ..harness.rescore import rescore_file
from ..harness.runner import RunError, probe_models, run
from ..harness.stats import aggregate_stats, emit_plot_data
from ..tasks.base import SizeError
from ..tasks.registry import available_tasks, get_task
from ..util import mix_seed
from . import schemas

__all__ = ["app", "create_app"]


def create_app() -> FastAPI:
    app = FastAPI(title="kgbench", version=__version__)

    @app.exception_handler(ConfigError)
    async def _config_error(_: Request, exc: ConfigError) -> JSONResponse:
        return JSONResponse(status_code=422, content={"detail": str(exc), "error_kind": "config"})

    @app.exception_handler(SizeError)
    async def _size_error(_: Request, exc: SizeError) -> JSONResponse:
        return JSONResponse(status_code=422, content={"detail": str(exc), "error_kind": "config"})

    @app.exception_handler(RunError)
    async def _run_error(_: Request, exc: RunError) -> JSONResponse:
        return JSONResponse(status_code=409, content={"detail": str(exc), "error_kind": "io"})

    @app.exception_handler(OSError)
    async def _os_error(_: Request, exc: OSError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc), "error_kind": "io"})

    @app.get("/health", response_model=schemas.HealthOut)
    def health() -> schemas.HealthOut:
        return schemas.HealthOut(status="ok", version=__version__)

    @app.get("/tasks", response_model=list[schemas.TaskInfo])
    def tasks() -> list[schemas.TaskInfo]:
        out = []
        for task_id in available_tasks():
            task = get_task(task_id)
            out.append(
                schemas.TaskInfo(
                    task_id=task.task_id,
                    task_version=task.task_version,
                    prompt_template_version=task.prompt_template_version,
                    default_sizes=task.default_sizes(),
                )
            )
        return out

    def _resolve_task(task_id: str):
        try:
            return get_task(task_id)
        except KeyError as exc:
            raise ConfigError(exc.args[0]) from exc

    def _resolve_size(task, req_size_index: int, size_params):
        defaults = task.default_sizes()
        if size_params is not None:
            return size_params
        if not 1 <= req_size_index <= len(defaults):
            raise ConfigError(
                f"size_index {req_size_index} outside 1..{len(defaults)} for {task.task_id}"
            )
        return defaults[req_size_index - 1]

    @app.post("/instances", response_model=schemas.InstanceOut)
    def make_instance(req: schemas.InstanceRequest) -> schemas.InstanceOut:
        task = _resolve_task(req.task_id)
        size_params = _resolve_size(task, req.size_index, req.size_params)
        seed = req.seed
        if seed is None:
            seed = mix_seed(req.seed_base, req.task_id, req.size_index, req.repetition)
        try:
            instance = task.make_instance(seed, req.size_index, size_params, req.repetition)
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"size_params do not fit {req.task_id}: {exc}") from exc
        return schemas.InstanceOut(
            task_id=instance.task_id,
            size_index=instance.size_index,
            size_params=dict(instance.size_params),
            repetition=instance.repetition,
            seed=instance.seed,
            prompt=instance.prompt,
        )

    @app.post("/evaluate", response_model=schemas.EvaluateOut)
    def evaluate(req: schemas.EvaluateRequest) -> schemas.EvaluateOut:
        task = _resolve_task(req.task_id)
        size_params = _resolve_size(task, req.size_index, req.size_params)
        seed = req.seed
        if seed is None:
            seed = mix_seed(req.seed_base, req.task_id, req.size_index, req.repetition)
        try:
            instance = task.make_instance(seed, req.size_index, size_params, req.repetition)
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"size_params do not fit {req.task_id}: {exc}") from exc
        return schemas.EvaluateOut(task_id=req.task_id, scores=task.evaluate(req.response, instance))

    @app.post("/runs", response_model=schemas.RunOut)
    def start_run(req: schemas.RunRequest) -> schemas.RunOut:
        config = parse_config(req.config, base_dir=req.base_dir)
        if req.replay is not None and req.replay != config.replay_mode:
            config = dataclasses.replace(config, replay_mode=req.replay)
        summary = run(config, resume_path=req.resume_path)
        return schemas.RunOut(
            run_id=summary.run_id,
            records_written=summary.records_written,
            skipped_existing=summary.skipped_existing,
            error_records=summary.error_records,
            results_path=str(summary.results_path),
        )

    @app.post("/rescore", response_model=schemas.RescoreOut)
    def rescore(req: schemas.RescoreRequest) -> schemas.RescoreOut:
        written, issues = rescore_file(req.results_path, req.out_path)
        return schemas.RescoreOut(
            records_written=written,
            issues=[schemas.LineIssue(line_no=e.line_no, message=e.message) for e in issues],
        )

    @app.post("/stats", response_model=schemas.StatsOut)
    def stats(req: schemas.StatsRequest) -> schemas.StatsOut:
        records, issues = read_records(req.results_path)
        rows = aggregate_stats(records)
        stats_csv, points_csv = emit_plot_data(rows, records, req.out_dir)
        return schemas.StatsOut(
            stats_csv=str(stats_csv),
            points_csv=str(points_csv),
            stat_rows=len(rows),
            records=len(records),
            issues=[schemas.LineIssue(line_no=e.line_no, message=e.message) for e in issues],
        )

    @app.post("/probe", response_model=schemas.ProbeOut)
    def probe(req: schemas.ProbeRequest) -> schemas.ProbeOut:
        config = parse_config(req.config, base_dir=req.base_dir)
        results = probe_models(config)
        entries = [
            schemas.ProbeEntry(model_id=r.model_id, ok=r.ok, message=r.message) for r in results
        ]
        return schemas.ProbeOut(results=entries, all_ok=all(r.ok for r in results))

    return app


app = create_app()
