"""Remote provider speaking the OpenAI-compatible chat/embeddings API."""

from __future__ import annotations

import os
import time

import requests

from ..errors import GatewayTimeout, ProviderUnavailable
from .types import GatewayConfig, LlmRequest, ProviderResult


class HttpProvider:
    def __init__(self, config: GatewayConfig):
        self.config = config

    def _api_key(self) -> str:
        key = os.environ.get(self.config.api_key_source, "")
        if not key:
            raise ProviderUnavailable(
                f"env var {self.config.api_key_source} does not resolve to an API key"
            )
        return key

    def generate(self, request: LlmRequest) -> ProviderResult:
        headers = {"Authorization": f"Bearer {self._api_key()}"}
        start = time.monotonic()
        try:
            if request.kind == "embed":
                resp = requests.post(
                    f"{self.config.base_url}/embeddings",
                    json={"model": request.model_id, "input": request.user_prompt},
                    headers=headers,
                    timeout=self.config.timeout_s,
                )
                resp.raise_for_status()
                import json as _json

                vector = resp.json()["data"][0]["embedding"]
                text = _json.dumps({"vector": vector})
                return ProviderResult(
                    text=text,
                    completion_tokens=0,
                    latency_ms=int((time.monotonic() - start) * 1000),
                )

            content: list | str
            if request.kind == "vision_chat":
                content = [
                    {"type": "text", "text": request.user_prompt},
                    {
                        "type": "image_url",
                        "image_url": {"url": f"data:image/png;base64,{request.image}"},
                    },
                ]
            else:
                content = request.user_prompt
            body = {
                "model": request.model_id,
                "temperature": request.temperature,
                "response_format": {"type": "json_object"},
                "messages": [
                    {"role": "system", "content": request.system_prompt},
                    {"role": "user", "content": content},
                ],
            }
            if request.seed is not None:
                body["seed"] = request.seed
            resp = requests.post(
                f"{self.config.base_url}/chat/completions",
                json=body,
                headers=headers,
                timeout=self.config.timeout_s,
            )
            resp.raise_for_status()
            data = resp.json()
            usage = data.get("usage", {})
            return ProviderResult(
                text=data["choices"][0]["message"]["content"],
                completion_tokens=usage.get("completion_tokens"),
                latency_ms=int((time.monotonic() - start) * 1000),
            )
        except requests.Timeout as exc:
            raise GatewayTimeout(str(exc)) from exc
        except requests.RequestException as exc:
            raise ProviderUnavailable(str(exc)) from exc
