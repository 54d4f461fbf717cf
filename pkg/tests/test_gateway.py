import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quizstudio.errors import (
    InvalidRequest,
    ProviderUnavailable,
    SchemaViolationExhausted,
)
from quizstudio.gateway import Gateway, LlmRequest, blocks
from quizstudio.gateway.mock import MockProvider, prompt_hash
from quizstudio.gateway.registry import SchemaRegistry
from quizstudio.gateway.types import GatewayConfig


def embed_request(text, model_id="embed-default"):
    return LlmRequest(
        kind="embed",
        model_id=model_id,
        system_prompt="",
        user_prompt=blocks.block(blocks.TEXT, text),
        response_schema_id="embedding",
    )


class TestBlocks:
    @given(st.text(alphabet=st.characters(blacklist_characters="[]"), max_size=200))
    def test_roundtrip(self, content):
        text = "preamble\n" + blocks.block("TAG", content) + "\npostamble"
        assert blocks.extract_block(text, "TAG") == content

    def test_json_roundtrip(self):
        payload = {"a": 1, "b": [1, 2], "c": "x"}
        text = blocks.json_block(blocks.FEATURES, payload)
        assert blocks.extract_json_block(text, blocks.FEATURES) == payload

    def test_missing_tag_is_none(self):
        assert blocks.extract_block("no blocks here", "TAG") is None


class TestRegistry:
    def test_loads_known_schemas(self):
        registry = SchemaRegistry()
        for sid in (
            "feature_extraction",
            "chart_customization",
            "qa_generation",
            "student_profile",
            "student_response",
            "trace_canonicalization",
            "embedding",
        ):
            assert registry.get(sid) is not None

    def test_validate_rejects_bad_payload(self):
        registry = SchemaRegistry()
        import jsonschema

        with pytest.raises(jsonschema.ValidationError):
            registry.validate("embedding", {"vector": "not a list"})


class TestMockDeterminism:
    def test_same_request_same_reply(self, gateway):
        req = embed_request("hello world")
        assert gateway.complete(req).text == gateway.complete(req).text

    def test_model_id_changes_reply_hash(self):
        a = embed_request("hello", model_id="gpt-4o")
        b = embed_request("hello", model_id="o1")
        assert prompt_hash(a) != prompt_hash(b)

    def test_seed_changes_qa_reply(self, gateway):
        def qa(seed):
            req = LlmRequest(
                kind="chat",
                model_id="gpt-4o",
                system_prompt="",
                user_prompt=blocks.json_block(blocks.QA_TEMPLATE, {})
                + "\n"
                + blocks.block(blocks.CSV, "Cat,Val\na,1\nb,2\nc,3\nd,4\ne,5\n"),
                response_schema_id="qa_generation",
                seed=seed,
            )
            return gateway.complete(req).parsed

        answers = {qa(s)["correct_label"] for s in range(20)}
        assert len(answers) > 1  # correct position varies with seed


class TestScripting:
    def test_scripted_reply_wins(self, gateway):
        provider = gateway.provider
        assert isinstance(provider, MockProvider)
        provider.script("embedding", json.dumps({"vector": [1.0, 0.0]}))
        assert gateway.complete(embed_request("x")).parsed["vector"] == [1.0, 0.0]
        # queue exhausted: falls back to the procedural generator
        assert len(gateway.complete(embed_request("x")).parsed["vector"]) == 32

    def test_scripted_exception_then_retry(self, gateway):
        gateway.provider.script("embedding", ProviderUnavailable("flaky"), None)
        resp = gateway.complete(embed_request("x"))
        assert resp.attempt_count == 2

    def test_transport_errors_exhaust(self, gateway):
        errors = [ProviderUnavailable("down")] * (gateway.config.max_retries + 1)
        gateway.provider.script("embedding", *errors)
        with pytest.raises(ProviderUnavailable):
            gateway.complete(embed_request("x"))


class TestSchemaRetry:
    def test_corrective_reprompt_recovers(self, gateway):
        gateway.provider.script("embedding", "not json at all", None)
        resp = gateway.complete(embed_request("x"))
        assert resp.attempt_count == 2
        assert len(resp.parsed["vector"]) == 32

    def test_exhaustion_raises(self, gateway):
        bad = ["{}"] * (gateway.config.max_retries + 1)
        gateway.provider.script("embedding", *bad)
        with pytest.raises(SchemaViolationExhausted):
            gateway.complete(embed_request("x"))

    def test_unknown_schema_fails_fast(self, gateway):
        req = LlmRequest(
            kind="chat",
            model_id="m",
            system_prompt="",
            user_prompt="x",
            response_schema_id="no_such_schema",
        )
        with pytest.raises(InvalidRequest):
            gateway.complete(req)


class TestFanOut:
    def test_order_preserved(self, gateway):
        requests = [embed_request(f"text {i}") for i in range(10)]
        slots = gateway.fan_out(requests, limit=3)
        assert [s.index for s in slots] == list(range(10))
        # slot i carries the reply for request i regardless of completion order
        for i, slot in enumerate(slots):
            assert slot.ok
            direct = gateway.complete(requests[i])
            assert slot.response.text == direct.text

    def test_per_slot_errors(self, gateway):
        errors = [ProviderUnavailable("down")] * (gateway.config.max_retries + 1)
        gateway.provider.script("embedding", *errors)
        slots = gateway.fan_out([embed_request("a"), embed_request("b")], limit=1)
        assert not slots[0].ok and isinstance(slots[0].error, ProviderUnavailable)
        assert slots[1].ok

    def test_bad_limit(self, gateway):
        with pytest.raises(InvalidRequest):
            gateway.fan_out([], limit=0)


class TestEmbedding:
    def test_unit_norm(self, gateway):
        vec = gateway.embed("some persona text about charts")
        norm = sum(v * v for v in vec) ** 0.5
        assert abs(norm - 1.0) < 1e-3  # rounding to 6 decimals in the mock

    def test_similar_texts_correlate(self, gateway):
        from quizstudio.alignment import cosine

        a = gateway.embed("reads the chart carefully then compares values")
        b = gateway.embed("reads the chart carefully then compares numbers")
        c = gateway.embed("completely unrelated cooking recipe for pasta")
        assert cosine(a, b) > cosine(a, c)


class TestVisionValidation:
    def test_vision_requires_image(self):
        with pytest.raises(InvalidRequest):
            LlmRequest(
                kind="vision_chat",
                model_id="m",
                system_prompt="",
                user_prompt="x",
                response_schema_id="embedding",
            ).validate()


class TestHttpProvider:
    def test_missing_api_key(self, monkeypatch):
        monkeypatch.delenv("QUIZSTUDIO_API_KEY", raising=False)
        config = GatewayConfig(provider="http_api")
        with pytest.raises(ProviderUnavailable):
            Gateway(config).provider.generate(embed_request("x"))
