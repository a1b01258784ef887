import json

import httpx
import pytest

from kgbench.connectors import (
    AuthError,
    CacheError,
    ConnectorSpec,
    Exchange,
    ProtocolError,
    RateLimitError,
    build_connector,
)
from kgbench.connectors.base import TimeoutError as ConnectorTimeoutError
from kgbench.connectors.http_chat import HttpChatConnector
from kgbench.connectors.mocks import SCRIPTS
from kgbench.connectors.replay import ReplayCache, ReplayConnector
from kgbench.tasks import get_task

CONVO = [Exchange("user", "say something")]


def chat_spec(**overrides):
    base = dict(
        model_id="m1",
        kind="http-chat",
        endpoint="http://api.test/v1/chat",
        api_key_env="TEST_API_KEY",
    )
    base.update(overrides)
    return ConnectorSpec(**base)


def chat_response(text="hello", status=200):
    body = {"choices": [{"message": {"content": text}}], "usage": {"total_tokens": 5}}
    return httpx.Response(status, json=body)


class TestSpecValidation:
    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="connector kind"):
            ConnectorSpec(model_id="x", kind="carrier-pigeon")

    def test_http_chat_needs_endpoint_and_key_env(self):
        with pytest.raises(ValueError, match="endpoint and api_key_env"):
            ConnectorSpec(model_id="x", kind="http-chat")

    def test_mocks_must_not_set_network_fields(self):
        with pytest.raises(ValueError, match="must not set endpoint"):
            ConnectorSpec(model_id="x", kind="oracle", endpoint="http://api.test/")

    def test_constant_needs_text(self):
        with pytest.raises(ValueError, match="need text"):
            ConnectorSpec(model_id="x", kind="constant")

    def test_scripted_needs_script(self):
        with pytest.raises(ValueError, match="script"):
            ConnectorSpec(model_id="x", kind="scripted")

    def test_replay_needs_cache_dir(self):
        with pytest.raises(ValueError, match="cache_dir"):
            ConnectorSpec(model_id="x", kind="replay")

    def test_exchange_role_checked(self):
        with pytest.raises(ValueError, match="role"):
            Exchange("narrator", "once upon a time")


class TestMockConnectors:
    def test_constant_always_same_text(self):
        spec = ConnectorSpec(model_id="c", kind="constant", text="The file is correct.")
        connector = build_connector(spec)
        for _ in range(3):
            text, meta = connector.generate_text(CONVO)
            assert text == "The file is correct."
            assert meta["retries"] == 0

    def test_constant_rejects_empty_conversation(self):
        spec = ConnectorSpec(model_id="c", kind="constant", text="x")
        with pytest.raises(ValueError, match="non-empty"):
            build_connector(spec).generate_text([])

    def test_oracle_needs_instance(self):
        spec = ConnectorSpec(model_id="o", kind="oracle")
        with pytest.raises(ValueError, match="instance"):
            build_connector(spec).generate_text(CONVO)

    def test_oracle_answers_perfectly(self):
        task = get_task("turtle-fix")
        inst = task.make_instance(
            seed=3, size_index=1, size_params={"triple_count": 20, "error_count": 3}, repetition=1
        )
        spec = ConnectorSpec(model_id="o", kind="oracle")
        text, _ = build_connector(spec).generate_text(CONVO, inst)
        assert task.evaluate(text, inst)["f1"] == 1.0

    def test_scripted_unknown_name(self):
        spec = ConnectorSpec(model_id="s", kind="scripted", script="no-such-script")
        with pytest.raises(ValueError, match="unknown script"):
            build_connector(spec)

    def test_script_names_stable(self):
        assert sorted(SCRIPTS) == ["echo-prompt", "foaf-double", "foaf-exact", "foaf-half"]

    def test_echo_prompt_returns_last_user_turn(self):
        spec = ConnectorSpec(model_id="s", kind="scripted", script="echo-prompt")
        convo = [
            Exchange("system", "be terse"),
            Exchange("user", "first"),
            Exchange("assistant", "ok"),
            Exchange("user", "second"),
        ]
        text, _ = build_connector(spec).generate_text(convo)
        assert text == "second"

    @pytest.mark.parametrize(
        "script,persons", [("foaf-exact", 10), ("foaf-double", 20), ("foaf-half", 5)]
    )
    def test_foaf_scripts_scale_requested_count(self, script, persons):
        task = get_task("synth-gen")
        inst = task.make_instance(
            seed=1, size_index=2, size_params={"persons": 10, "links": 20}, repetition=1
        )
        spec = ConnectorSpec(model_id="s", kind="scripted", script=script)
        text, _ = build_connector(spec).generate_text(CONVO, inst)
        scores = task.evaluate(text, inst)
        assert scores["persons_generated"] == persons


class TestHttpChat:
    def make(self, handler, sleeps=None, **overrides):
        transport = httpx.MockTransport(handler)
        recorded = [] if sleeps is None else sleeps
        return HttpChatConnector(
            chat_spec(**overrides), transport=transport, sleep=recorded.append
        )

    def test_happy_path(self, monkeypatch):
        monkeypatch.setenv("TEST_API_KEY", "k-123")
        seen = {}

        def handler(request):
            seen["auth"] = request.headers["Authorization"]
            seen["payload"] = json.loads(request.content)
            return chat_response("answer text")

        text, meta = self.make(handler).generate_text(
            [Exchange("system", "be brief"), Exchange("user", "question")]
        )
        assert text == "answer text"
        assert seen["auth"] == "Bearer k-123"
        assert seen["payload"]["messages"][0] == {"role": "system", "content": "be brief"}
        assert seen["payload"]["temperature"] == 0.0
        assert meta["usage"] == {"total_tokens": 5}

    def test_missing_key_raises_auth_error(self, monkeypatch):
        monkeypatch.delenv("TEST_API_KEY", raising=False)
        with pytest.raises(AuthError, match="TEST_API_KEY"):
            self.make(lambda request: chat_response()).generate_text(CONVO)

    def test_rejected_key_not_retried(self, monkeypatch):
        monkeypatch.setenv("TEST_API_KEY", "bad")
        calls = []

        def handler(request):
            calls.append(1)
            return httpx.Response(401)

        with pytest.raises(AuthError, match="rejected"):
            self.make(handler).generate_text(CONVO)
        assert len(calls) == 1

    def test_retry_backoff_doubles(self, monkeypatch):
        monkeypatch.setenv("TEST_API_KEY", "k")
        calls = []
        sleeps = []

        def handler(request):
            calls.append(1)
            if len(calls) < 3:
                return httpx.Response(503)
            return chat_response("eventually")

        text, meta = self.make(handler, sleeps=sleeps).generate_text(CONVO)
        assert text == "eventually"
        assert sleeps == [1.0, 2.0]
        assert meta["retries"] == 2

    def test_persistent_rate_limit(self, monkeypatch):
        monkeypatch.setenv("TEST_API_KEY", "k")
        connector = self.make(lambda request: httpx.Response(429), max_retries=2)
        with pytest.raises(RateLimitError, match="3 attempts"):
            connector.generate_text(CONVO)

    def test_timeout_exhausts_retries(self, monkeypatch):
        monkeypatch.setenv("TEST_API_KEY", "k")

        def handler(request):
            raise httpx.ConnectTimeout("slow")

        connector = self.make(handler, max_retries=1)
        with pytest.raises(ConnectorTimeoutError, match="no reply"):
            connector.generate_text(CONVO)

    def test_malformed_reply_is_protocol_error(self, monkeypatch):
        monkeypatch.setenv("TEST_API_KEY", "k")

        def handler(request):
            return httpx.Response(200, json={"unexpected": True})

        with pytest.raises(ProtocolError, match="malformed"):
            self.make(handler).generate_text(CONVO)

    def test_unexpected_4xx_not_retried(self, monkeypatch):
        monkeypatch.setenv("TEST_API_KEY", "k")
        calls = []

        def handler(request):
            calls.append(1)
            return httpx.Response(404)

        with pytest.raises(ProtocolError, match="unexpected status 404"):
            self.make(handler).generate_text(CONVO)
        assert len(calls) == 1


class TestReplay:
    def test_miss_without_inner_fails(self, tmp_path):
        spec = ConnectorSpec(model_id="r", kind="replay", cache_dir=str(tmp_path))
        connector = build_connector(spec)
        with pytest.raises(CacheError, match="no cached response"):
            connector.generate_text(CONVO)

    def test_record_then_replay(self, tmp_path):
        cache = ReplayCache(tmp_path)
        spec = ConnectorSpec(model_id="r", kind="replay", cache_dir=str(tmp_path))
        inner = build_connector(ConnectorSpec(model_id="r", kind="constant", text="recorded"))
        recording = ReplayConnector(spec, cache, inner=inner)
        text, meta = recording.generate_text(CONVO)
        assert (text, meta["replayed"]) == ("recorded", False)

        replaying = ReplayConnector(spec, cache, inner=None)
        text, meta = replaying.generate_text(CONVO)
        assert (text, meta["replayed"]) == ("recorded", True)

    def test_key_depends_on_model_and_conversation(self, tmp_path):
        cache = ReplayCache(tmp_path)
        other = [Exchange("user", "different words")]
        assert cache.key("m1", CONVO) != cache.key("m2", CONVO)
        assert cache.key("m1", CONVO) != cache.key("m1", other)

    def test_entry_file_contents(self, tmp_path):
        cache = ReplayCache(tmp_path)
        path = cache.store("m1", CONVO, "stored answer")
        entry = json.loads(path.read_text())
        assert entry["model_id"] == "m1"
        assert entry["response"] == "stored answer"
        assert entry["conversation"] == [{"role": "user", "content": "say something"}]
        assert entry["prompt_hash"] == path.stem

    def test_corrupt_entry_reported(self, tmp_path):
        cache = ReplayCache(tmp_path)
        path = cache.store("m1", CONVO, "x")
        path.write_text("{broken json")
        with pytest.raises(CacheError, match="corrupt replay entry"):
            cache.lookup("m1", CONVO)

    def test_lookup_miss_is_none(self, tmp_path):
        assert ReplayCache(tmp_path).lookup("m1", CONVO) is None
