"""Common shape of a benchmark task.

A task knows how to build seeded instances at a given size, how to turn an
instance into a prompt, how to score a model response, and what a perfect
answer looks like (for oracle connectors).  The harness only talks to this
interface.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Mapping

__all__ = ["BenchmarkTask", "SizeError", "TaskInstance"]

ScoreValue = Any  # real, int or bool — JSON-scalar score entries


class SizeError(ValueError):
    """A requested size cannot be realized (too many errors, bad index, ...)."""


@dataclass(frozen=True)
class TaskInstance:
    """One concrete, fully materialized challenge handed to a model.

    `payload` carries the task-specific object needed for scoring and for
    oracle answers (a corruption record, an asset, a size request).  The
    instance is immutable; everything a connector or scorer needs is here.
    """

    task_id: str
    size_index: int
    size_params: Mapping[str, Any]
    repetition: int
    seed: int
    prompt: str
    payload: Any = field(compare=False)


class BenchmarkTask(ABC):
    """Interface every registered task implements."""

    task_id: str
    task_version: str
    prompt_template_version: str

    @abstractmethod
    def default_sizes(self) -> list[dict[str, Any]]:
        """Size parameter dicts in size-index order (index 1 is the first)."""

    @abstractmethod
    def make_instance(
        self, seed: int, size_index: int, size_params: Mapping[str, Any], repetition: int
    ) -> TaskInstance:
        """Build the instance for one cell.  Pure in all arguments."""

    @abstractmethod
    def evaluate(self, response: str, instance: TaskInstance) -> dict[str, ScoreValue]:
        """Score a raw model response.  Total: every string is scoreable."""

    @abstractmethod
    def oracle_response(self, instance: TaskInstance) -> str:
        """A response that evaluates to a perfect score for this instance."""
