"""The 14-feature question specification, grouped into question / chart /
distractor / knowledge categories."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace
from typing import Optional

from . import taxonomy
from .errors import InvalidRequest

DEFAULTS = {
    "cognitive_complexity": 3,
    "context_domain": "general",
    "context_richness": 3,
    "difficulty_target": 3,
    "chart_type": None,
    "data_complexity": 3,
    "color_scheme": "auto",
    "misleader": None,
    "embellishment_level": 3,
    "distractor_count": 3,
    "plausibility": 3,
    "distractor_strategy": "mixed",
    "knowledge_points": ["retrieve_value"],
    "hint_presence": False,
}

_ORDINALS = {
    "cognitive_complexity": (1, 6),
    "context_richness": (1, 5),
    "difficulty_target": (1, 5),
    "data_complexity": (1, 5),
    "embellishment_level": (1, 5),
    "distractor_count": (1, 5),
    "plausibility": (1, 5),
}


@dataclass(frozen=True)
class McqFeatureSet:
    # question
    cognitive_complexity: int = 3  # Bloom level 1-6
    context_domain: str = "general"
    context_richness: int = 3
    difficulty_target: int = 3
    # chart
    chart_type: Optional[str] = None  # None = unconstrained
    data_complexity: int = 3
    color_scheme: str = "auto"
    misleader: Optional[str] = None
    embellishment_level: int = 3
    # distractor
    distractor_count: int = 3
    plausibility: int = 3
    distractor_strategy: str = "mixed"
    # knowledge
    knowledge_points: tuple = ("retrieve_value",)
    hint_presence: bool = False

    def __post_init__(self):
        object.__setattr__(self, "knowledge_points", tuple(self.knowledge_points))
        self.validate()

    def validate(self) -> None:
        for name, (lo, hi) in _ORDINALS.items():
            v = getattr(self, name)
            if not isinstance(v, int) or not lo <= v <= hi:
                raise InvalidRequest(f"{name} must be an integer in [{lo},{hi}], got {v!r}")
        if self.chart_type is not None and self.chart_type not in taxonomy.CHART_TYPES:
            raise InvalidRequest(f"unknown chart_type: {self.chart_type}")
        if self.color_scheme not in taxonomy.COLOR_SCHEMES:
            raise InvalidRequest(f"unknown color_scheme: {self.color_scheme}")
        if self.misleader is not None and self.misleader not in taxonomy.MISLEADERS:
            raise InvalidRequest(f"unknown misleader: {self.misleader}")
        if self.distractor_strategy not in taxonomy.DISTRACTOR_STRATEGIES:
            raise InvalidRequest(f"unknown distractor_strategy: {self.distractor_strategy}")
        if not self.knowledge_points:
            raise InvalidRequest("knowledge_points must be non-empty")
        for kp in self.knowledge_points:
            if kp not in taxonomy.KNOWLEDGE_POINTS:
                raise InvalidRequest(f"unknown knowledge point: {kp}")
        if not self.context_domain:
            raise InvalidRequest("context_domain must be non-empty")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["knowledge_points"] = sorted(self.knowledge_points)
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "McqFeatureSet":
        known = {f for f in cls.__dataclass_fields__}  # type: ignore[attr-defined]
        unknown = set(data) - known
        if unknown:
            raise InvalidRequest(f"unknown feature fields: {sorted(unknown)}")
        return cls(**data)

    def merged(self, overrides: dict) -> "McqFeatureSet":
        """New feature set with ``overrides`` applied on top of this one."""
        known = {f for f in self.__dataclass_fields__}  # type: ignore[attr-defined]
        unknown = set(overrides) - known
        if unknown:
            raise InvalidRequest(f"unknown feature fields: {sorted(unknown)}")
        return replace(self, **overrides)


def default_features(**overrides) -> McqFeatureSet:
    return McqFeatureSet().merged(overrides)
