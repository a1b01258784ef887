"""Record/replay store for model responses.

Each cached exchange is one JSON file keyed by model id and a hash of the
canonicalized conversation.  A replay connector answers from the store; when
wrapped around a live connector it records on miss, which is how paid runs
become reproducible afterwards.
"""
from __future__ import annotations

import datetime as dt
import hashlib
import json
from pathlib import Path
from typing import Any

from ..tasks.base import TaskInstance
from .base import CacheError, Connector, ConnectorSpec, Exchange, check_conversation

__all__ = ["ReplayCache", "ReplayConnector", "record_replay_cache"]


def _conversation_key(model_id: str, conversation: list[Exchange]) -> str:
    canonical = json.dumps(
        [{"role": e.role, "content": e.content} for e in conversation],
        sort_keys=True,
        ensure_ascii=False,
        separators=(",", ":"),
    )
    payload = model_id + "\x1f" + canonical
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


class ReplayCache:
    def __init__(self, root: str | Path) -> None:
        self.root = Path(root)

    def key(self, model_id: str, conversation: list[Exchange]) -> str:
        return _conversation_key(model_id, conversation)

    def _path(self, key: str) -> Path:
        return self.root / f"{key}.json"

    def lookup(self, model_id: str, conversation: list[Exchange]) -> str | None:
        path = self._path(self.key(model_id, conversation))
        if not path.is_file():
            return None
        try:
            entry = json.loads(path.read_text(encoding="utf-8"))
            return entry["response"]
        except (ValueError, KeyError) as exc:
            raise CacheError(f"corrupt replay entry {path}: {exc}") from exc

    def store(self, model_id: str, conversation: list[Exchange], response: str) -> Path:
        key = self.key(model_id, conversation)
        entry = {
            "model_id": model_id,
            "prompt_hash": key,
            "conversation": [{"role": e.role, "content": e.content} for e in conversation],
            "response": response,
            "recorded_at": dt.datetime.now(dt.timezone.utc).isoformat(),
        }
        path = self._path(key)
        try:
            self.root.mkdir(parents=True, exist_ok=True)
            path.write_text(
                json.dumps(entry, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
            )
        except OSError as exc:
            raise CacheError(f"replay cache at {self.root} is unwritable: {exc}") from exc
        return path


def record_replay_cache(
    spec: ConnectorSpec,
    conversation: list[Exchange],
    response: str,
    cache: ReplayCache,
) -> Path:
    """Persist one exchange under the spec's model id; returns the entry path."""
    return cache.store(spec.model_id, conversation, response)


class ReplayConnector(Connector):
    """Serves cached responses; records through an inner connector on miss."""

    def __init__(
        self, spec: ConnectorSpec, cache: ReplayCache, inner: Connector | None = None
    ) -> None:
        super().__init__(spec)
        self.cache = cache
        self.inner = inner

    def generate_text(
        self, conversation: list[Exchange], instance: TaskInstance | None = None
    ) -> tuple[str, dict[str, Any]]:
        check_conversation(conversation)
        cached = self.cache.lookup(self.spec.model_id, conversation)
        if cached is not None:
            return cached, {"latency_ms": 0, "retries": 0, "replayed": True}
        if self.inner is None:
            raise CacheError(
                f"no cached response for {self.spec.model_id} and no live connector to record from"
            )
        response, meta = self.inner.generate_text(conversation, instance)
        self.cache.store(self.spec.model_id, conversation, response)
        meta = dict(meta)
        meta["replayed"] = False
        return response, meta
