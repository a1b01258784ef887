"""Live connector for chat-completion style HTTP endpoints.

POSTs the conversation as a JSON messages array with bearer-token auth and
takes the first choice's message content as the answer.  Transient failures
(429, 5xx, timeouts) are retried with exponential backoff starting at one
second; auth failures are not retried.  One request is in flight per
connector at a time.
"""
from __future__ import annotations

import os
import threading
import time
from typing import Any, Callable

import httpx

from ..tasks.base import TaskInstance
from .base import (
    AuthError,
    Connector,
    ConnectorSpec,
    Exchange,
    ProtocolError,
    RateLimitError,
    TimeoutError,
    check_conversation,
)

__all__ = ["HttpChatConnector"]


class HttpChatConnector(Connector):
    def __init__(
        self,
        spec: ConnectorSpec,
        transport: httpx.BaseTransport | None = None,
        sleep: Callable[[float], None] = time.sleep,
    ) -> None:
        super().__init__(spec)
        self._sleep = sleep
        self._lock = threading.Lock()
        self._client = httpx.Client(
            timeout=spec.request_timeout_s, transport=transport
        )

    def _api_key(self) -> str:
        assert self.spec.api_key_env is not None
        key = os.environ.get(self.spec.api_key_env, "")
        if not key:
            raise AuthError(
                f"environment variable {self.spec.api_key_env} is not set for {self.spec.model_id}"
            )
        return key

    def generate_text(
        self, conversation: list[Exchange], instance: TaskInstance | None = None
    ) -> tuple[str, dict[str, Any]]:
        check_conversation(conversation)
        payload = {
            "model": self.spec.model_name or self.spec.model_id,
            "messages": [{"role": e.role, "content": e.content} for e in conversation],
            "temperature": self.spec.temperature,
            "max_tokens": self.spec.max_tokens,
        }
        headers = {"Authorization": f"Bearer {self._api_key()}"}
        attempts = self.spec.max_retries + 1
        start = time.monotonic()
        last_failure: Exception | None = None
        with self._lock:
            for attempt in range(attempts):
                if attempt:
                    self._sleep(float(2 ** (attempt - 1)))
                try:
                    reply = self._client.post(
                        self.spec.endpoint, json=payload, headers=headers
                    )
                except httpx.TimeoutException as exc:
                    last_failure = TimeoutError(
                        f"{self.spec.model_id}: no reply within {self.spec.request_timeout_s}s"
                    )
                    last_failure.__cause__ = exc
                    continue
                except httpx.HTTPError as exc:
                    last_failure = ProtocolError(f"{self.spec.model_id}: {exc}")
                    last_failure.__cause__ = exc
                    continue
                if reply.status_code in (401, 403):
                    raise AuthError(
                        f"{self.spec.model_id}: endpoint rejected the API key ({reply.status_code})"
                    )
                if reply.status_code == 429:
                    last_failure = RateLimitError(
                        f"{self.spec.model_id}: rate limited after {attempt + 1} attempts"
                    )
                    continue
                if reply.status_code >= 500:
                    last_failure = ProtocolError(
                        f"{self.spec.model_id}: endpoint returned {reply.status_code}"
                    )
                    continue
                if reply.status_code != 200:
                    raise ProtocolError(
                        f"{self.spec.model_id}: unexpected status {reply.status_code}"
                    )
                return self._extract(reply, attempt, start)
        assert last_failure is not None
        raise last_failure

    def _extract(
        self, reply: httpx.Response, attempt: int, start: float
    ) -> tuple[str, dict[str, Any]]:
        try:
            data = reply.json()
            content = data["choices"][0]["message"]["content"]
        except (ValueError, LookupError, TypeError) as exc:
            raise ProtocolError(
                f"{self.spec.model_id}: malformed endpoint reply: {exc}"
            ) from exc
        if not isinstance(content, str):
            raise ProtocolError(f"{self.spec.model_id}: non-text message content")
        meta: dict[str, Any] = {
            "latency_ms": int((time.monotonic() - start) * 1000),
            "retries": attempt,
        }
        usage = data.get("usage")
        if isinstance(usage, dict):
            meta["usage"] = usage
        return content, meta
