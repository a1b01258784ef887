"""Task registry: id → constructor."""
from __future__ import annotations

from typing import Callable

from .base import BenchmarkTask

__all__ = ["available_tasks", "get_task", "register_task"]

_REGISTRY: dict[str, Callable[[], BenchmarkTask]] = {}


def register_task(task_id: str, factory: Callable[[], BenchmarkTask]) -> None:
    if task_id in _REGISTRY:
        raise ValueError(f"task id {task_id!r} already registered")
    _REGISTRY[task_id] = factory


def get_task(task_id: str) -> BenchmarkTask:
    try:
        factory = _REGISTRY[task_id]
    except KeyError:
        known = ", ".join(sorted(_REGISTRY)) or "none"
        raise KeyError(f"unknown task id {task_id!r} (registered: {known})") from None
    return factory()


def available_tasks() -> list[str]:
    return sorted(_REGISTRY)
