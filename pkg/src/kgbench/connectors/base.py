"""Uniform access to text-generation models.

Every model, real or mock, sits behind the same generate_text contract:
a conversation of role-tagged exchanges goes in, the assistant's text and a
metadata dict come out.  Mock connectors additionally receive the task
instance out-of-band, which is how oracles stay exact without parsing their
own prompts.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from ..tasks.base import TaskInstance

__all__ = [
    "AuthError",
    "CacheError",
    "Connector",
    "ConnectorError",
    "ConnectorSpec",
    "Exchange",
    "ProtocolError",
    "RateLimitError",
    "TimeoutError",
    "build_connector",
    "generate_text",
]

KINDS = ("http-chat", "oracle", "scripted", "constant", "replay")
ROLES = ("system", "user", "assistant")

_NETWORK_FIELDS = ("endpoint", "api_key_env")


class ConnectorError(Exception):
    """Base class for connector failures."""


class AuthError(ConnectorError):
    """API key missing from the environment or rejected by the endpoint."""


class TimeoutError(ConnectorError):  # noqa: A001 — mirrors the endpoint failure mode
    """The endpoint did not answer within the configured timeout, retries included."""


class RateLimitError(ConnectorError):
    """The endpoint kept returning 429 through all backoff attempts."""


class ProtocolError(ConnectorError):
    """The endpoint reply was malformed or persistently unavailable."""


class CacheError(ConnectorError):
    """The replay cache is unwritable or lacks a required entry."""


@dataclass(frozen=True)
class Exchange:
    role: str
    content: str

    def __post_init__(self) -> None:
        if self.role not in ROLES:
            raise ValueError(f"exchange role must be one of {ROLES}, got {self.role!r}")


@dataclass(frozen=True)
class ConnectorSpec:
    model_id: str
    kind: str
    endpoint: str | None = None
    model_name: str | None = None
    api_key_env: str | None = None
    temperature: float = 0.0
    max_tokens: int = 4096
    request_timeout_s: int = 120
    max_retries: int = 3
    text: str | None = None  # constant kind: the canned reply
    script: str | None = None  # scripted kind: registered script name
    cache_dir: str | None = None  # replay kind: entry store location

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"connector kind must be one of {KINDS}, got {self.kind!r}")
        if not self.model_id:
            raise ValueError("model_id must be non-empty")
        if self.kind == "http-chat":
            if not self.endpoint or not self.api_key_env:
                raise ValueError("http-chat connectors need endpoint and api_key_env")
        else:
            for name in _NETWORK_FIELDS:
                if getattr(self, name):
                    raise ValueError(f"{self.kind} connectors must not set {name}")
        if self.kind == "constant" and self.text is None:
            raise ValueError("constant connectors need text")
        if self.kind == "scripted" and not self.script:
            raise ValueError("scripted connectors need a script name")
        if self.kind == "replay" and not self.cache_dir:
            raise ValueError("replay connectors need cache_dir")
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")
        if self.max_tokens < 1:
            raise ValueError("max_tokens must be positive")
        if self.request_timeout_s < 1:
            raise ValueError("request_timeout_s must be positive")
        if self.max_retries < 0:
            raise ValueError("max_retries must be >= 0")


def check_conversation(conversation: list[Exchange]) -> None:
    if not conversation:
        raise ValueError("conversation must be non-empty")
    for entry in conversation:
        if entry.role != "system":
            if entry.role != "user":
                raise ValueError("first non-system exchange must be a user turn")
            break


class Connector(ABC):
    """One model behind the generate_text contract."""

    def __init__(self, spec: ConnectorSpec) -> None:
        self.spec = spec

    @abstractmethod
    def generate_text(
        self, conversation: list[Exchange], instance: "TaskInstance | None" = None
    ) -> tuple[str, dict[str, Any]]:
        """Return the assistant's reply and call metadata for a conversation."""


def build_connector(spec: ConnectorSpec) -> Connector:
    """Construct the connector implementation for a spec."""
    from .http_chat import HttpChatConnector
    from .mocks import ConstantConnector, OracleConnector, ScriptedConnector
    from .replay import ReplayCache, ReplayConnector

    if spec.kind == "http-chat":
        return HttpChatConnector(spec)
    if spec.kind == "oracle":
        return OracleConnector(spec)
    if spec.kind == "constant":
        return ConstantConnector(spec)
    if spec.kind == "scripted":
        return ScriptedConnector(spec)
    if spec.kind == "replay":
        return ReplayConnector(spec, ReplayCache(spec.cache_dir), inner=None)
    raise ValueError(f"unknown connector kind {spec.kind!r}")


def generate_text(
    spec: ConnectorSpec,
    conversation: list[Exchange],
    instance: "TaskInstance | None" = None,
) -> tuple[str, dict[str, Any]]:
    """One-shot convenience: build the connector for a spec and call it."""
    return build_connector(spec).generate_text(conversation, instance)
