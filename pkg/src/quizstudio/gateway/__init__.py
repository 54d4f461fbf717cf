from .core import Gateway
from .mock import MockProvider
from .registry import SchemaRegistry
from .types import FanOutSlot, GatewayConfig, LlmRequest, LlmResponse

__all__ = [
    "Gateway",
    "MockProvider",
    "SchemaRegistry",
    "FanOutSlot",
    "GatewayConfig",
    "LlmRequest",
    "LlmResponse",
]
