"""Benchmark tasks and their registry."""
from .base import BenchmarkTask, SizeError, TaskInstance
from .fact_extract import FactExtractTask
from .registry import available_tasks, get_task, register_task
from .synth_gen import SynthGenTask
from .turtle_fix import TurtleFixTask

register_task(TurtleFixTask.task_id, TurtleFixTask)
register_task(FactExtractTask.task_id, FactExtractTask)
register_task(SynthGenTask.task_id, SynthGenTask)

__all__ = [
    "BenchmarkTask",
    "FactExtractTask",
    "SizeError",
    "SynthGenTask",
    "TaskInstance",
    "TurtleFixTask",
    "available_tasks",
    "get_task",
    "register_task",
]
