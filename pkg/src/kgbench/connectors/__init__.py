"""Model connectors: live HTTP chat endpoints and deterministic mocks."""
from .base import (
    AuthError,
    CacheError,
    Connector,
    ConnectorError,
    ConnectorSpec,
    Exchange,
    ProtocolError,
    RateLimitError,
    TimeoutError,
    build_connector,
    generate_text,
)
from .http_chat import HttpChatConnector
from .mocks import SCRIPTS, ConstantConnector, OracleConnector, ScriptedConnector
from .replay import ReplayCache, ReplayConnector, record_replay_cache

__all__ = [
    "AuthError",
    "CacheError",
    "Connector",
    "ConnectorError",
    "ConnectorSpec",
    "ConstantConnector",
    "Exchange",
    "HttpChatConnector",
    "OracleConnector",
    "ProtocolError",
    "RateLimitError",
    "ReplayCache",
    "ReplayConnector",
    "SCRIPTS",
    "ScriptedConnector",
    "TimeoutError",
    "build_connector",
    "generate_text",
    "record_replay_cache",
]
