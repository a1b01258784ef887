"""Deterministic test doubles: constant, oracle and scripted connectors.

All three are pure functions of (spec, conversation, instance) and touch no
network.  Oracles answer perfectly by construction; scripts implement fixed
behaviors like doubling the requested entity count.
"""
from __future__ import annotations

import math
from typing import Any, Callable

from ..tasks.base import TaskInstance
from ..tasks.registry import get_task
from ..tasks.synth_gen import SynthGenSize, foaf_document
from .base import Connector, ConnectorSpec, Exchange, check_conversation

__all__ = ["ConstantConnector", "OracleConnector", "SCRIPTS", "ScriptedConnector"]

_MOCK_META = {"latency_ms": 0, "retries": 0}


class ConstantConnector(Connector):
    """Always answers with the configured text."""

    def generate_text(
        self, conversation: list[Exchange], instance: TaskInstance | None = None
    ) -> tuple[str, dict[str, Any]]:
        check_conversation(conversation)
        assert self.spec.text is not None
        return self.spec.text, dict(_MOCK_META)


class OracleConnector(Connector):
    """Answers every instance perfectly via the owning task's oracle."""

    def __init__(self, spec: ConnectorSpec) -> None:
        super().__init__(spec)
        self._tasks: dict[str, Any] = {}

    def generate_text(
        self, conversation: list[Exchange], instance: TaskInstance | None = None
    ) -> tuple[str, dict[str, Any]]:
        check_conversation(conversation)
        if instance is None:
            raise ValueError("oracle connectors need the task instance")
        task = self._tasks.get(instance.task_id)
        if task is None:
            task = self._tasks[instance.task_id] = get_task(instance.task_id)
        return task.oracle_response(instance), dict(_MOCK_META)


def _script_echo_prompt(conversation: list[Exchange], instance: TaskInstance | None) -> str:
    for entry in reversed(conversation):
        if entry.role == "user":
            return entry.content
    return ""


def _requested(instance: TaskInstance | None) -> tuple[int, int] | None:
    if instance is not None and isinstance(instance.payload, SynthGenSize):
        return instance.payload.persons_requested, instance.payload.links_requested
    return None


def _script_foaf_exact(conversation: list[Exchange], instance: TaskInstance | None) -> str:
    req = _requested(instance)
    if req is None:
        return ""
    return foaf_document(*req)


def _script_foaf_double(conversation: list[Exchange], instance: TaskInstance | None) -> str:
    req = _requested(instance)
    if req is None:
        return ""
    persons, links = 2 * req[0], 2 * req[1]
    return foaf_document(persons, min(links, persons * (persons - 1)))


def _script_foaf_half(conversation: list[Exchange], instance: TaskInstance | None) -> str:
    req = _requested(instance)
    if req is None:
        return ""
    persons = math.ceil(req[0] / 2)
    links = min(math.ceil(req[1] / 2), persons * (persons - 1))
    return foaf_document(persons, links)


SCRIPTS: dict[str, Callable[[list[Exchange], TaskInstance | None], str]] = {
    "echo-prompt": _script_echo_prompt,
    "foaf-exact": _script_foaf_exact,
    "foaf-double": _script_foaf_double,
    "foaf-half": _script_foaf_half,
}


class ScriptedConnector(Connector):
    """Runs a named deterministic script against the conversation."""

    def __init__(self, spec: ConnectorSpec) -> None:
        super().__init__(spec)
        if spec.script not in SCRIPTS:
            known = ", ".join(sorted(SCRIPTS))
            raise ValueError(f"unknown script {spec.script!r} (known: {known})")
        self._script = SCRIPTS[spec.script]

    def generate_text(
        self, conversation: list[Exchange], instance: TaskInstance | None = None
    ) -> tuple[str, dict[str, Any]]:
        check_conversation(conversation)
        return self._script(conversation, instance), dict(_MOCK_META)
