"""Application configuration: JSON file plus environment overrides."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, fields
from pathlib import Path

from .gateway import GatewayConfig

ENV_PREFIX = "QUIZSTUDIO_"


@dataclass
class AppConfig:
    provider: str = "mock"
    model_id: str = "gpt-4o"
    api_key_source: str = "QUIZSTUDIO_API_KEY"
    base_url: str = "https://api.openai.com/v1"
    max_parallel: int = 4
    max_retries: int = 2
    timeout_s: float = 60.0
    seed: int = 0
    data_dir: str = "quizstudio_data"
    bundle_path: str = ""  # empty = packaged seed bundle
    renderer_url: str = ""  # empty = rendering skipped

    @classmethod
    def load(cls, path: str | Path | None = None) -> "AppConfig":
        values: dict = {}
        if path:
            values.update(json.loads(Path(path).read_text()))
        for f in fields(cls):
            env = os.environ.get(ENV_PREFIX + f.name.upper())
            if env is not None:
                if f.type in ("int",):
                    values[f.name] = int(env)
                elif f.type in ("float",):
                    values[f.name] = float(env)
                else:
                    values[f.name] = env
        return cls(**values)

    def gateway_config(self) -> GatewayConfig:
        return GatewayConfig(
            provider=self.provider,
            api_key_source=self.api_key_source,
            max_parallel=self.max_parallel,
            max_retries=self.max_retries,
            timeout_s=self.timeout_s,
            default_seed=self.seed,
            base_url=self.base_url,
        )
