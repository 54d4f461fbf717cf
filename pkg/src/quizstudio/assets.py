"""Access to data files shipped inside the package."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path


def data_path(name: str = "") -> Path:
    root = Path(resources.files("quizstudio") / "data")  # type: ignore[arg-type]
    return root / name if name else root


@lru_cache(maxsize=None)
def step_vocabulary() -> dict:
    return json.loads(data_path("step_vocabulary.json").read_text())


@lru_cache(maxsize=None)
def cognitive_markers() -> list[dict]:
    return json.loads(data_path("cognitive_markers.json").read_text())["markers"]


@lru_cache(maxsize=None)
def strategy_families() -> dict[str, list[list[str]]]:
    return json.loads(data_path("strategy_families.json").read_text())


def seed_bundle_path() -> Path:
    return data_path("seed_bundle")
