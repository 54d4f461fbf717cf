"""Request/response types for the provider-agnostic LLM gateway."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from ..errors import InvalidRequest


@dataclass(frozen=True)
class LlmRequest:
    """One chat, vision-chat, or embedding call.

    ``context`` carries auxiliary structured data for deterministic offline
    providers (e.g. the answer key a simulated student's choice is scored
    against). Remote providers never transmit it.
    """

    kind: str  # chat | vision_chat | embed
    model_id: str
    system_prompt: str
    user_prompt: str
    response_schema_id: str
    image: Optional[str] = None  # base64 payload
    temperature: float = 0.0
    seed: Optional[int] = None
    context: dict = field(default_factory=dict, compare=False, hash=False)

    def validate(self) -> None:
        if self.kind not in ("chat", "vision_chat", "embed"):
            raise InvalidRequest(f"unknown request kind: {self.kind}")
        if (self.kind == "vision_chat") != (self.image is not None):
            raise InvalidRequest("image must be present iff kind is vision_chat")
        if self.temperature < 0:
            raise InvalidRequest("temperature must be >= 0")
        if not self.response_schema_id:
            raise InvalidRequest("response_schema_id is required")


@dataclass(frozen=True)
class LlmResponse:
    """Raw model output plus the parsed payload when it validated."""

    text: str
    parsed: Optional[Any]
    completion_token_count: int
    latency_ms: int
    attempt_count: int


@dataclass(frozen=True)
class GatewayConfig:
    provider: str = "mock"  # mock | http_api
    api_key_source: str = "QUIZSTUDIO_API_KEY"
    max_parallel: int = 4
    max_retries: int = 2
    timeout_s: float = 60.0
    default_seed: int = 0
    base_url: str = "https://api.openai.com/v1"

    def validate(self) -> None:
        if self.provider not in ("mock", "http_api"):
            raise InvalidRequest(f"unknown provider: {self.provider}")
        if self.max_parallel < 1:
            raise InvalidRequest("max_parallel must be >= 1")
        if self.max_retries < 0:
            raise InvalidRequest("max_retries must be >= 0")
        if self.timeout_s <= 0:
            raise InvalidRequest("timeout_s must be > 0")


@dataclass(frozen=True)
class ProviderResult:
    """What a provider hands back before schema validation."""

    text: str
    completion_tokens: Optional[int] = None
    latency_ms: Optional[int] = None


@dataclass(frozen=True)
class FanOutSlot:
    """One positional result of a fan_out: either a response or an error."""

    index: int
    response: Optional[LlmResponse] = None
    error: Optional[Exception] = None

    @property
    def ok(self) -> bool:
        return self.response is not None
