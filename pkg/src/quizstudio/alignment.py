"""Persona-fidelity scoring: cognitive, reasoning-steps, and semantic
alignment combined into a weighted overall consistency, plus a model
benchmark harness."""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass

from . import assets
from .errors import InvalidRequest
from .gateway import Gateway
from .reasoning import CanonicalTrace, TraceCanonicalizer
from .students import StudentProfile, StudentResponse, StudentSimulator

DEFAULT_WEIGHTS = (0.4, 0.4, 0.2)  # cognitive, reasoning steps, semantic


@dataclass(frozen=True)
class AlignmentWeights:
    w_cognitive: float = DEFAULT_WEIGHTS[0]
    w_steps: float = DEFAULT_WEIGHTS[1]
    w_semantic: float = DEFAULT_WEIGHTS[2]

    def __post_init__(self):
        if min(self.w_cognitive, self.w_steps, self.w_semantic) < 0:
            raise InvalidRequest("weights must be non-negative")
        if abs(self.w_cognitive + self.w_steps + self.w_semantic - 1.0) > 1e-9:
            raise InvalidRequest("weights must sum to 1")


@dataclass(frozen=True)
class AlignmentScore:
    cognitive: float
    steps: float
    semantic: float
    overall: float

    def to_dict(self) -> dict:
        return dict(self.__dict__)


# -- cognitive alignment ------------------------------------------------------


def _marker_applies(marker: dict, profile: StudentProfile) -> bool:
    value = getattr(profile, marker["attribute"])
    return value >= marker["threshold"] if marker["op"] == "ge" else value <= marker["threshold"]


def _marker_satisfied(check: dict, labels: tuple) -> bool:
    kind = check["type"]
    if kind == "contains_any":
        return any(l in labels for l in check["labels"])
    if kind == "not_contains":
        return not any(l in labels for l in check["labels"])
    if kind == "starts_with_any":
        return bool(labels) and labels[0] in check["labels"]
    if kind == "max_len":
        return len(labels) <= check["value"]
    if kind == "min_len":
        return len(labels) >= check["value"]
    raise InvalidRequest(f"unknown marker check type {kind!r}")


def cognitive_alignment(
    profile: StudentProfile, trace: CanonicalTrace, response: StudentResponse | None = None
) -> float:
    """Fraction of applicable extreme-trait markers the trace satisfies;
    vacuously 1.0 when no trait is extreme."""
    labels = trace.labels
    applicable = [m for m in assets.cognitive_markers() if _marker_applies(m, profile)]
    if not applicable:
        return 1.0
    matched = sum(1 for m in applicable if _marker_satisfied(m["check"], labels))
    return matched / len(applicable)


# -- reasoning steps alignment ------------------------------------------------


def levenshtein(a, b) -> int:
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, item_a in enumerate(a, start=1):
        current = [i]
        for j, item_b in enumerate(b, start=1):
            cost = 0 if item_a == item_b else 1
            current.append(min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + cost))
        previous = current
    return previous[-1]


def expected_family(profile: StudentProfile) -> str:
    return (
        "visual_first"
        if profile.visual_processing >= profile.logical_reasoning
        else "logic_first"
    )


def steps_alignment(profile: StudentProfile, trace: CanonicalTrace) -> float:
    """1 minus the normalized edit distance to the nearest canonical sequence
    of the profile's expected strategy family."""
    sequences = assets.strategy_families()[expected_family(profile)]
    labels = list(trace.labels)
    best = 1.0
    for seq in sequences:
        denom = max(len(labels), len(seq))
        if denom == 0:
            continue
        best = min(best, levenshtein(labels, seq) / denom)
    return 1.0 - best


# -- semantic alignment -------------------------------------------------------


def cosine(u: list[float], v: list[float]) -> float:
    dot = sum(a * b for a, b in zip(u, v))
    nu = math.sqrt(sum(a * a for a in u))
    nv = math.sqrt(sum(b * b for b in v))
    if nu == 0 or nv == 0:
        return 0.0
    return dot / (nu * nv)


def semantic_alignment(gateway: Gateway, persona_text: str, trace_text: str) -> float:
    if not persona_text or not trace_text:
        raise InvalidRequest("both texts must be non-empty")
    u = gateway.embed(persona_text)
    v = gateway.embed(trace_text)
    return max(0.0, cosine(u, v))


# -- combiner -----------------------------------------------------------------


def overall_score(
    c: float, s: float, m: float, weights: AlignmentWeights | None = None
) -> float:
    for name, value in (("cognitive", c), ("steps", s), ("semantic", m)):
        if not 0.0 <= value <= 1.0:
            raise InvalidRequest(f"{name} component {value} outside [0,1]")
    w = weights or AlignmentWeights()
    return w.w_cognitive * c + w.w_steps * s + w.w_semantic * m


class AlignmentScorer:
    def __init__(self, gateway: Gateway, weights: AlignmentWeights | None = None):
        self.gateway = gateway
        self.weights = weights or AlignmentWeights()

    def score(
        self,
        profile: StudentProfile,
        trace: CanonicalTrace,
        response: StudentResponse,
    ) -> AlignmentScore:
        c = cognitive_alignment(profile, trace, response)
        s = steps_alignment(profile, trace)
        m = semantic_alignment(
            self.gateway, profile.persona_text, " ".join(response.raw_trace)
        )
        return AlignmentScore(
            cognitive=c,
            steps=s,
            semantic=m,
            overall=overall_score(c, s, m, self.weights),
        )


# -- benchmark harness --------------------------------------------------------


def benchmark_models(
    gateway: Gateway,
    model_ids: list[str],
    cohort: list[StudentProfile],
    questions,
    rounds: int,
    weights: AlignmentWeights | None = None,
) -> dict:
    """Simulate rounds x cohort per question for each model and aggregate
    overall-consistency and latency statistics."""
    if not (model_ids and cohort and questions and rounds >= 1):
        raise InvalidRequest("model_ids, cohort, questions, rounds must be non-empty")
    scorer = AlignmentScorer(gateway, weights)
    report: dict = {}
    for model_id in model_ids:
        simulator = StudentSimulator(gateway, model_id=model_id)
        canonicalizer = TraceCanonicalizer(gateway, model_id=model_id)
        by_id = {p.id: p for p in cohort}
        scores: list[float] = []
        latencies: list[float] = []
        excluded = 0
        for round_index in range(rounds):
            for q_index, question in enumerate(questions):
                run = simulator.simulate_cohort(
                    cohort, question, run_id=f"bench-{model_id}-{round_index}-{q_index}"
                )
                excluded += len(run.errors)
                for response in run.responses:
                    try:
                        steps = canonicalizer.canonicalize_trace(
                            response.raw_trace,
                            total_tokens=response.reasoning_token_count,
                        )
                        trace = CanonicalTrace(
                            profile_id=response.profile_id,
                            cluster_index=0,
                            selected_label=response.selected_label,
                            steps=tuple(steps),
                        )
                        score = scorer.score(by_id[response.profile_id], trace, response)
                    except Exception:  # noqa: BLE001 - per-sample exclusion
                        excluded += 1
                        continue
                    scores.append(score.overall)
                    latencies.append(response.latency_ms / 1000.0)
        report[model_id] = {
            "mean_overall": statistics.fmean(scores) if scores else 0.0,
            "std_overall": statistics.pstdev(scores) if len(scores) > 1 else 0.0,
            "mean_latency_s": statistics.fmean(latencies) if latencies else 0.0,
            "n_students": len(cohort),
            "n_rounds": rounds,
            "n_scored": len(scores),
            "n_excluded": excluded,
        }
    return report
