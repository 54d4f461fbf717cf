"""Provider-agnostic gateway: schema-validated completion, retry policy, and
order-preserving bounded fan-out."""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from typing import Sequence

import jsonschema

from ..errors import (
    GatewayTimeout,
    InvalidRequest,
    ProviderUnavailable,
    SchemaViolationExhausted,
)
from .mock import MockProvider
from .registry import SchemaRegistry
from .types import FanOutSlot, GatewayConfig, LlmRequest, LlmResponse

CORRECTIVE_NOTE = (
    "\n\nYour previous reply did not validate against the required output"
    " schema: {error}. Reply again with a single JSON object that conforms."
)


class Gateway:
    """Shareable across threads; configuration is immutable after construction."""

    def __init__(
        self,
        config: GatewayConfig | None = None,
        registry: SchemaRegistry | None = None,
        provider=None,
    ):
        self.config = config or GatewayConfig()
        self.config.validate()
        self.registry = registry or SchemaRegistry()
        if provider is not None:
            self.provider = provider
        elif self.config.provider == "mock":
            self.provider = MockProvider(self.registry, seed=self.config.default_seed)
        else:
            from .http import HttpProvider

            self.provider = HttpProvider(self.config)

    def complete(self, request: LlmRequest) -> LlmResponse:
        request.validate()
        self.registry.get(request.response_schema_id)  # fail fast on unknown schema

        attempts = self.config.max_retries + 1
        current = request
        last_error: Exception | None = None
        for attempt in range(1, attempts + 1):
            try:
                result = self.provider.generate(current)
            except (ProviderUnavailable, GatewayTimeout) as exc:
                last_error = exc
                continue
            try:
                parsed = json.loads(result.text)
                self.registry.validate(request.response_schema_id, parsed)
            except (json.JSONDecodeError, jsonschema.ValidationError) as exc:
                last_error = exc
                # re-prompt with the validation error appended
                current = replace(
                    request,
                    user_prompt=request.user_prompt
                    + CORRECTIVE_NOTE.format(error=str(exc).splitlines()[0]),
                )
                continue
            tokens = (
                result.completion_tokens
                if result.completion_tokens is not None
                else len(result.text.split())
            )
            return LlmResponse(
                text=result.text,
                parsed=parsed,
                completion_token_count=tokens,
                latency_ms=result.latency_ms or 0,
                attempt_count=attempt,
            )

        if isinstance(last_error, (ProviderUnavailable, GatewayTimeout)):
            raise last_error
        raise SchemaViolationExhausted(
            f"output failed schema {request.response_schema_id} after {attempts} attempts",
            last_error=str(last_error),
        )

    def fan_out(
        self, requests: Sequence[LlmRequest], limit: int | None = None
    ) -> list[FanOutSlot]:
        limit = self.config.max_parallel if limit is None else limit
        if limit < 1:
            raise InvalidRequest("fan_out limit must be >= 1")

        def run(indexed) -> FanOutSlot:
            i, req = indexed
            try:
                return FanOutSlot(index=i, response=self.complete(req))
            except Exception as exc:  # noqa: BLE001 - per-slot error collection
                return FanOutSlot(index=i, error=exc)

        with ThreadPoolExecutor(max_workers=limit) as pool:
            return list(pool.map(run, enumerate(requests)))

    def embed(self, text: str, model_id: str = "embed-default") -> list[float]:
        from . import blocks

        request = LlmRequest(
            kind="embed",
            model_id=model_id,
            system_prompt="Return the embedding of the tagged text.",
            user_prompt=blocks.block(blocks.TEXT, text),
            response_schema_id="embedding",
        )
        return self.complete(request).parsed["vector"]
