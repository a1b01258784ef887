"""Benchmark configuration: strict JSON parsing with field-path errors.

Unknown keys are rejected, not ignored: a typo in a config must fail loudly
before any paid model call happens.  Relative output paths are resolved
against the directory of the config file.
"""
from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

from ..connectors.base import ConnectorSpec
from ..tasks.registry import get_task

__all__ = ["BenchmarkConfig", "ConfigError", "OutputPaths", "TaskPlan", "load_config", "parse_config"]

_MAX_SEED = 2**64 - 1


class ConfigError(Exception):
    """A configuration is structurally or semantically invalid."""


@dataclass(frozen=True)
class TaskPlan:
    task_id: str
    sizes: tuple[Mapping[str, Any], ...]
    repetitions: int


@dataclass(frozen=True)
class OutputPaths:
    results_path: Path
    stats_path: Path
    replay_cache_path: Path


@dataclass(frozen=True)
class BenchmarkConfig:
    models: tuple[ConnectorSpec, ...]
    tasks: tuple[TaskPlan, ...]
    seed_base: int
    output: OutputPaths
    replay_mode: bool

    def cell_count(self) -> int:
        """Total (model, task, size, repetition) combinations."""
        per_model = sum(len(plan.sizes) * plan.repetitions for plan in self.tasks)
        return len(self.models) * per_model


def _require(data: Mapping[str, Any], key: str, path: str) -> Any:
    if key not in data:
        raise ConfigError(f"{path}.{key}: missing required key")
    return data[key]


def _reject_unknown(data: Mapping[str, Any], allowed: set[str], path: str) -> None:
    for key in data:
        if key not in allowed:
            raise ConfigError(f"{path}.{key}: unknown key")


def _parse_model(entry: Any, path: str, base_dir: Path) -> ConnectorSpec:
    if not isinstance(entry, dict):
        raise ConfigError(f"{path}: must be an object")
    allowed = {f.name for f in dataclasses.fields(ConnectorSpec)}
    _reject_unknown(entry, allowed, path)
    cache_dir = entry.get("cache_dir")
    if isinstance(cache_dir, str) and cache_dir and not Path(cache_dir).is_absolute():
        entry = dict(entry, cache_dir=str(base_dir / cache_dir))
    try:
        return ConnectorSpec(**entry)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def _parse_task(entry: Any, path: str) -> TaskPlan:
    if not isinstance(entry, dict):
        raise ConfigError(f"{path}: must be an object")
    _reject_unknown(entry, {"task_id", "sizes", "repetitions"}, path)
    task_id = _require(entry, "task_id", path)
    if not isinstance(task_id, str):
        raise ConfigError(f"{path}.task_id: must be a string")
    try:
        task = get_task(task_id)
    except KeyError as exc:
        raise ConfigError(f"{path}.task_id: {exc.args[0]}") from exc
    repetitions = entry.get("repetitions", 1)
    if not isinstance(repetitions, int) or isinstance(repetitions, bool) or repetitions < 1:
        raise ConfigError(f"{path}.repetitions: must be a positive integer")
    default_sizes = task.default_sizes()
    sizes = entry.get("sizes", default_sizes)
    if not isinstance(sizes, list) or not sizes:
        raise ConfigError(f"{path}.sizes: must be a non-empty list")
    expected_keys = set(default_sizes[0])
    parsed_sizes: list[dict[str, Any]] = []
    for i, size in enumerate(sizes):
        size_path = f"{path}.sizes[{i}]"
        if not isinstance(size, dict):
            raise ConfigError(f"{size_path}: must be an object")
        if set(size) != expected_keys:
            want = ", ".join(sorted(expected_keys)) or "none"
            raise ConfigError(f"{size_path}: expected exactly the keys: {want}")
        for key, value in size.items():
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise ConfigError(f"{size_path}.{key}: must be a non-negative integer")
        parsed_sizes.append(dict(size))
    return TaskPlan(task_id=task_id, sizes=tuple(parsed_sizes), repetitions=repetitions)


def _parse_output(entry: Any, path: str, base_dir: Path) -> OutputPaths:
    if entry is None:
        entry = {}
    if not isinstance(entry, dict):
        raise ConfigError(f"{path}: must be an object")
    _reject_unknown(entry, {"results_path", "stats_path", "replay_cache_path"}, path)
    values: dict[str, str] = {}
    for key, default in (
        ("results_path", "results.jsonl"),
        ("stats_path", "stats"),
        ("replay_cache_path", "replay-cache"),
    ):
        raw = entry.get(key, default)
        if not isinstance(raw, str) or not raw:
            raise ConfigError(f"{path}.{key}: must be a non-empty string")
        values[key] = raw

    def resolve(raw: str) -> Path:
        p = Path(raw)
        return p if p.is_absolute() else base_dir / p

    return OutputPaths(
        results_path=resolve(values["results_path"]),
        stats_path=resolve(values["stats_path"]),
        replay_cache_path=resolve(values["replay_cache_path"]),
    )


def parse_config(data: Any, base_dir: str | Path = ".") -> BenchmarkConfig:
    if not isinstance(data, dict):
        raise ConfigError("config: top level must be an object")
    _reject_unknown(data, {"models", "tasks", "seed_base", "output", "replay_mode"}, "config")
    base = Path(base_dir)

    models_raw = _require(data, "models", "config")
    if not isinstance(models_raw, list) or not models_raw:
        raise ConfigError("config.models: must be a non-empty list")
    models = tuple(_parse_model(m, f"config.models[{i}]", base) for i, m in enumerate(models_raw))
    ids = [m.model_id for m in models]
    if len(set(ids)) != len(ids):
        raise ConfigError("config.models: model_id values must be unique")

    tasks_raw = _require(data, "tasks", "config")
    if not isinstance(tasks_raw, list) or not tasks_raw:
        raise ConfigError("config.tasks: must be a non-empty list")
    tasks = tuple(_parse_task(t, f"config.tasks[{i}]") for i, t in enumerate(tasks_raw))
    task_ids = [t.task_id for t in tasks]
    if len(set(task_ids)) != len(task_ids):
        raise ConfigError("config.tasks: task_id values must be unique")

    seed_base = data.get("seed_base", 0)
    if not isinstance(seed_base, int) or isinstance(seed_base, bool) or not 0 <= seed_base <= _MAX_SEED:
        raise ConfigError("config.seed_base: must be an unsigned 64-bit integer")

    replay_mode = data.get("replay_mode", False)
    if not isinstance(replay_mode, bool):
        raise ConfigError("config.replay_mode: must be a boolean")

    output = _parse_output(data.get("output"), "config.output", base)
    return BenchmarkConfig(
        models=models, tasks=tasks, seed_base=seed_base, output=output, replay_mode=replay_mode
    )


def load_config(path: str | Path) -> BenchmarkConfig:
    p = Path(path)
    try:
        raw = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {p}: {exc}") from exc
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{p} is not valid JSON: {exc}") from exc
    return parse_config(data, base_dir=p.resolve().parent)
