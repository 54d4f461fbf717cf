"""Simulated student cohort: profile synthesis, targeted edits, roster import,
and parallel response simulation."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field, replace
from typing import Optional

from . import taxonomy
from .clock import LogicalClock
from .errors import (
    ConstraintInfeasible,
    EmptyCohort,
    EmptySelection,
    InvalidRequest,
    RosterImportError,
)
from .gateway import Gateway, LlmRequest, blocks
from .pipeline import QuestionVersion

DEFAULT_COHORT_SIZE = 20

ORDINAL_KEYS = taxonomy.TRAIT_KEYS + taxonomy.PROFILE_KNOWLEDGE_KEYS

_CATEGORICAL_DOMAINS = {
    "major": taxonomy.MAJORS,
    "education_year": taxonomy.EDUCATION_YEARS,
}

_PRETTY_MAJOR = {
    "computer_science": "computer science",
    "design": "design",
    "business": "business",
    "other": "an undeclared field",
}


@dataclass(frozen=True)
class StudentProfile:
    id: str
    # demographics
    age: int
    major: str
    education_year: str
    prior_vis_coursework: bool
    # learning traits
    logical_reasoning: int
    visual_processing: int
    critical_thinking: int
    working_memory: int
    attention_to_detail: int
    motivation: int
    # knowledge points
    bar_line_reading: int
    proportion_charts: int
    axis_scale_interpretation: int
    misleader_awareness: int
    data_statistics_literacy: int
    persona_text: str = ""

    def __post_init__(self):
        for key in ORDINAL_KEYS:
            v = getattr(self, key)
            if not isinstance(v, int) or not 1 <= v <= 5:
                raise InvalidRequest(f"{key} must be an integer in [1,5], got {v!r}")
        if self.major not in taxonomy.MAJORS:
            raise InvalidRequest(f"unknown major: {self.major}")
        if self.education_year not in taxonomy.EDUCATION_YEARS:
            raise InvalidRequest(f"unknown education_year: {self.education_year}")
        if not self.persona_text:
            object.__setattr__(self, "persona_text", synthesize_persona_text(self))

    def attributes(self) -> dict:
        d = {
            "age": self.age,
            "major": self.major,
            "education_year": self.education_year,
            "prior_vis_coursework": self.prior_vis_coursework,
        }
        for key in ORDINAL_KEYS:
            d[key] = getattr(self, key)
        return d

    def to_dict(self) -> dict:
        d = self.attributes()
        d["id"] = self.id
        d["persona_text"] = self.persona_text
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "StudentProfile":
        return cls(**data)


def synthesize_persona_text(profile: StudentProfile) -> str:
    strengths = [k for k in ORDINAL_KEYS if getattr(profile, k) >= 4]
    weaknesses = [k for k in ORDINAL_KEYS if getattr(profile, k) <= 2]
    parts = [
        f"A {profile.education_year} student majoring in"
        f" {_PRETTY_MAJOR[profile.major]}, age {profile.age},"
        f" {'with' if profile.prior_vis_coursework else 'without'} prior"
        " visualization coursework."
    ]
    if strengths:
        parts.append("Strong in " + ", ".join(s.replace("_", " ") for s in strengths) + ".")
    if weaknesses:
        parts.append("Weaker in " + ", ".join(w.replace("_", " ") for w in weaknesses) + ".")
    style = (
        "Tends to reason visually from the chart first."
        if profile.visual_processing >= profile.logical_reasoning
        else "Tends to reason step by step from the question text first."
    )
    parts.append(style)
    return " ".join(parts)


@dataclass(frozen=True)
class CohortSpec:
    description: str = ""
    size: int = DEFAULT_COHORT_SIZE
    attribute_constraints: dict = field(default_factory=dict)
    seed: int = 0

    def validate(self) -> None:
        if self.size < 1:
            raise InvalidRequest("cohort size must be >= 1")
        for attr, shares in self.attribute_constraints.items():
            if attr not in _CATEGORICAL_DOMAINS:
                raise InvalidRequest(f"no distribution constraints for {attr!r}")
            for value in shares:
                if value not in _CATEGORICAL_DOMAINS[attr]:
                    raise InvalidRequest(f"unknown {attr} value {value!r}")
            total = sum(shares.values())
            if total > 1 + 1e-9:
                raise ConstraintInfeasible(
                    f"{attr} shares sum to {total:.3f}, which exceeds 1"
                )


def largest_remainder_allocation(shares: dict, size: int) -> dict:
    """Integer seats per category; exact when share*size is integral."""
    quotas = {k: v * size for k, v in shares.items()}
    base = {k: math.floor(q + 1e-9) for k, q in quotas.items()}
    target = round(sum(quotas.values()) - 1e-9)
    leftover = target - sum(base.values())
    order = sorted(
        shares, key=lambda k: (-(quotas[k] - base[k]), k)
    )  # largest remainder first, ties by name
    for k in order[:leftover]:
        base[k] += 1
    return base


@dataclass
class StudentResponse:
    profile_id: str
    question_version_id: str
    selected_label: str
    raw_trace: list
    ratings: dict
    reasoning_token_count: int
    correct: bool
    latency_ms: int = 0

    def to_dict(self) -> dict:
        return dict(self.__dict__)

    @classmethod
    def from_dict(cls, data: dict) -> "StudentResponse":
        return cls(**data)


@dataclass
class SimulationRun:
    id: str
    question_version_id: str
    responses: list  # StudentResponse
    errors: list  # {"index", "profile_id", "error"}
    created_at: str

    @property
    def accuracy(self) -> float:
        if not self.responses:
            return 0.0
        return sum(r.correct for r in self.responses) / len(self.responses)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "question_version_id": self.question_version_id,
            "responses": [r.to_dict() for r in self.responses],
            "errors": self.errors,
            "created_at": self.created_at,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SimulationRun":
        return cls(
            id=data["id"],
            question_version_id=data["question_version_id"],
            responses=[StudentResponse.from_dict(r) for r in data["responses"]],
            errors=data.get("errors", []),
            created_at=data["created_at"],
        )


class StudentSimulator:
    def __init__(self, gateway: Gateway, clock=None, model_id: str = "gpt-4o"):
        self.gateway = gateway
        self.clock = clock or LogicalClock()
        self.model_id = model_id

    # -- profile generation --------------------------------------------------

    def generate_profiles(self, spec: CohortSpec) -> list[StudentProfile]:
        spec.validate()
        assignments: list[dict] = [{} for _ in range(spec.size)]
        for attr, shares in spec.attribute_constraints.items():
            seats = largest_remainder_allocation(shares, spec.size)
            cursor = 0
            for value in sorted(seats):
                for _ in range(seats[value]):
                    assignments[cursor][attr] = value
                    cursor += 1

        requests = []
        for i, assigned in enumerate(assignments):
            prompt = (
                "Synthesize one plausible student profile for the cohort"
                " described below. Attribute assignments in the ASSIGNED block"
                " are fixed; fill in the rest.\n\n"
                + blocks.block(blocks.INSTRUCTOR_TEXT, spec.description or "(none)")
                + "\n\n"
                + blocks.json_block(blocks.ASSIGNED, assigned)
                + f"\n\nStudent index: {i}"
            )
            requests.append(
                LlmRequest(
                    kind="chat",
                    model_id=self.model_id,
                    system_prompt="You synthesize realistic student personas.",
                    user_prompt=prompt,
                    response_schema_id="student_profile",
                    seed=spec.seed,
                )
            )
        slots = self.gateway.fan_out(requests)
        profiles = []
        for i, slot in enumerate(slots):
            if not slot.ok:
                raise slot.error
            attrs = dict(slot.response.parsed)
            attrs.update(assignments[i])  # explicit constraints always win
            profiles.append(StudentProfile(id=f"s{i + 1:03d}", **attrs))
        return profiles

    # -- targeted edits ------------------------------------------------------

    def update_profiles(
        self, profiles: list[StudentProfile], selector: dict, edits: dict
    ) -> list[StudentProfile]:
        """Selector: {"ids": [...]} or attribute equality, e.g. {"major": "design"}.

        Edit values are absolute assignments, or {"shift": delta} for ordinal
        attributes (clamped to [1,5])."""

        def matches(p: StudentProfile) -> bool:
            if "ids" in selector:
                return p.id in selector["ids"]
            return all(getattr(p, k) == v for k, v in selector.items())

        if not any(matches(p) for p in profiles):
            raise EmptySelection(f"selector matched no profiles: {selector}")

        out = []
        for p in profiles:
            if not matches(p):
                out.append(p)
                continue
            changes: dict = {}
            for attr, value in edits.items():
                if attr not in StudentProfile.__dataclass_fields__ or attr in (
                    "id",
                    "persona_text",
                ):
                    raise InvalidRequest(f"cannot edit attribute {attr!r}")
                if isinstance(value, dict) and "shift" in value:
                    if attr not in ORDINAL_KEYS:
                        raise InvalidRequest(f"{attr} does not support shift edits")
                    shifted = getattr(p, attr) + round(value["shift"])
                    changes[attr] = max(1, min(5, shifted))
                else:
                    changes[attr] = value
            updated = replace(p, persona_text="", **changes)  # persona regenerated
            out.append(updated)
        return out

    # -- roster import -------------------------------------------------------

    def import_roster(self, csv_text: str) -> list[StudentProfile]:
        reader = csv.DictReader(io.StringIO(csv_text.strip()))
        expected = set(StudentProfile.__dataclass_fields__) - {"persona_text"}
        headers = set(reader.fieldnames or [])
        unmapped = headers - expected
        if unmapped:
            raise RosterImportError(f"unmapped roster columns: {sorted(unmapped)}")
        missing = expected - headers - {"id"}
        if missing:
            raise RosterImportError(f"missing roster columns: {sorted(missing)}")
        profiles = []
        for i, row in enumerate(reader):
            attrs: dict = {"id": row.get("id") or f"s{i + 1:03d}"}
            for key in expected - {"id"}:
                raw = row[key]
                if key in ORDINAL_KEYS or key == "age":
                    attrs[key] = int(raw)
                elif key == "prior_vis_coursework":
                    attrs[key] = raw.strip().lower() in ("1", "true", "yes")
                else:
                    attrs[key] = raw.strip()
            profiles.append(StudentProfile(**attrs))
        if not profiles:
            raise RosterImportError("roster contains no rows")
        return profiles

    # -- simulation ----------------------------------------------------------

    def simulate_cohort(
        self,
        profiles: list[StudentProfile],
        question: QuestionVersion,
        image: Optional[str] = None,
        run_id: str = "r1",
    ) -> SimulationRun:
        if not profiles:
            raise EmptyCohort("cohort is empty")
        labels = [label for label, _ in question.options]
        requests = [self._response_request(p, question, image) for p in profiles]
        slots = self.gateway.fan_out(requests)

        responses: list[StudentResponse] = []
        errors: list[dict] = []
        for i, slot in enumerate(slots):
            profile = profiles[i]
            resp = None
            if slot.ok:
                resp = slot.response
                # reject-and-retry when the model picked a label that does not exist
                if resp.parsed["selected_label"] not in labels:
                    resp = self._retry_bad_label(requests[i], labels)
            if resp is None:
                err = slot.error if not slot.ok else InvalidRequest("invalid option label")
                errors.append(
                    {"index": i, "profile_id": profile.id, "error": str(err)}
                )
                continue
            parsed = resp.parsed
            responses.append(
                StudentResponse(
                    profile_id=profile.id,
                    question_version_id=question.id,
                    selected_label=parsed["selected_label"],
                    raw_trace=list(parsed["steps"]),
                    ratings=dict(parsed["ratings"]),
                    reasoning_token_count=resp.completion_token_count,
                    correct=parsed["selected_label"] == question.correct_label,
                    latency_ms=resp.latency_ms,
                )
            )
        return SimulationRun(
            id=run_id,
            question_version_id=question.id,
            responses=responses,
            errors=errors,
            created_at=self.clock.now_iso(),
        )

    def _response_request(
        self, profile: StudentProfile, question: QuestionVersion, image: Optional[str]
    ) -> LlmRequest:
        question_payload = {
            "stem": question.stem,
            "options": [{"label": l, "text": t} for l, t in question.options],
        }
        prompt = (
            "You are the student described below. Answer the multiple-choice"
            " question, reporting your step-by-step reasoning and rating the"
            " question on six dimensions.\n\n"
            + blocks.block("PERSONA", profile.persona_text)
            + "\n\n"
            + blocks.json_block(blocks.PROFILE, profile.attributes())
            + "\n\n"
            + blocks.json_block(blocks.QUESTION, question_payload)
        )
        return LlmRequest(
            kind="vision_chat" if image else "chat",
            model_id=self.model_id,
            system_prompt="You role-play a specific student solving a chart question.",
            user_prompt=prompt,
            image=image,
            response_schema_id="student_response",
            context={
                "correct_label": question.correct_label,
                "misleader": question.features.misleader,
                "difficulty_target": question.features.difficulty_target,
                "data_complexity": question.features.data_complexity,
                "hint_presence": question.features.hint_presence,
            },
        )

    def _retry_bad_label(self, request: LlmRequest, labels: list):
        from dataclasses import replace as _replace

        corrective = _replace(
            request,
            user_prompt=request.user_prompt
            + f"\n\nYour previous answer used a label that does not exist."
            f" Choose one of: {', '.join(labels)}.",
        )
        try:
            resp = self.gateway.complete(corrective)
        except Exception:
            return None
        return resp if resp.parsed["selected_label"] in labels else None
