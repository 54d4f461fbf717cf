"""Reasoning-trace analytics: canonicalization into a controlled step
vocabulary, prefix-merged Sankey aggregation, top-strategy extraction, and
answer/version statistics."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from . import assets, taxonomy
from .clustering import ClusterAssignment
from .errors import AssignmentMismatch, CanonicalizationFailed, SchemaViolationExhausted
from .gateway import Gateway, LlmRequest, blocks
from .students import SimulationRun

DEFAULT_MAX_STEPS = 6
DEFAULT_TOP_K = 5


@dataclass(frozen=True)
class StrategyStep:
    canonical_label: str
    token_count: int

    def __post_init__(self):
        if self.canonical_label not in assets.step_vocabulary()["labels"]:
            raise CanonicalizationFailed(
                f"label {self.canonical_label!r} is not in the step vocabulary"
            )


@dataclass(frozen=True)
class CanonicalTrace:
    profile_id: str
    cluster_index: int
    selected_label: str
    steps: tuple

    @property
    def labels(self) -> tuple:
        return tuple(s.canonical_label for s in self.steps)


def _apportion_tokens(raw_trace: list[str], total_tokens: int) -> list[int]:
    """Split a completion token count over steps by text-length share.

    Flooring plus largest-remainder so the counts sum exactly to the total."""
    lengths = [max(1, len(s)) for s in raw_trace]
    total_len = sum(lengths)
    quotas = [total_tokens * l / total_len for l in lengths]
    counts = [int(q) for q in quotas]
    leftover = total_tokens - sum(counts)
    order = sorted(range(len(quotas)), key=lambda i: (-(quotas[i] - counts[i]), i))
    for i in order[:leftover]:
        counts[i] += 1
    return counts


def merge_consecutive(steps: list[StrategyStep]) -> list[StrategyStep]:
    merged: list[StrategyStep] = []
    for step in steps:
        if merged and merged[-1].canonical_label == step.canonical_label:
            merged[-1] = StrategyStep(
                canonical_label=step.canonical_label,
                token_count=merged[-1].token_count + step.token_count,
            )
        else:
            merged.append(step)
    return merged


def truncate_steps(steps: list[StrategyStep], max_steps: int) -> list[StrategyStep]:
    """Keep the first max_steps; the trailing steps fold into the last label."""
    if len(steps) <= max_steps:
        return steps
    head = steps[: max_steps - 1]
    tail = steps[max_steps - 1 :]
    folded = StrategyStep(
        canonical_label=tail[0].canonical_label,
        token_count=sum(s.token_count for s in tail),
    )
    return merge_consecutive(head + [folded])


class TraceCanonicalizer:
    def __init__(self, gateway: Gateway, model_id: str = "gpt-4o"):
        self.gateway = gateway
        self.model_id = model_id

    def canonicalize_trace(
        self,
        raw_trace: list[str],
        max_steps: int = DEFAULT_MAX_STEPS,
        total_tokens: int | None = None,
    ) -> list[StrategyStep]:
        if not raw_trace:
            raise CanonicalizationFailed("raw trace is empty")
        vocab = assets.step_vocabulary()
        prompt = (
            "Map each free-text reasoning step onto one label from the"
            " controlled vocabulary, in order.\n\n"
            + blocks.json_block(blocks.STEPS, list(raw_trace))
            + "\n\nVocabulary: "
            + ", ".join(vocab["labels"])
        )
        request = LlmRequest(
            kind="chat",
            model_id=self.model_id,
            system_prompt="You canonicalize reasoning steps into a fixed vocabulary.",
            user_prompt=prompt,
            response_schema_id="trace_canonicalization",
        )
        try:
            labels = self.gateway.complete(request).parsed["labels"]
        except SchemaViolationExhausted as exc:
            raise CanonicalizationFailed(str(exc)) from exc
        labels = list(labels)[: len(raw_trace)]
        while len(labels) < len(raw_trace):
            labels.append(vocab["fallback_label"])

        if total_tokens is None:
            total_tokens = sum(len(s.split()) for s in raw_trace)
        tokens = _apportion_tokens(list(raw_trace), total_tokens)
        steps = [
            StrategyStep(canonical_label=l, token_count=t)
            for l, t in zip(labels, tokens)
        ]
        return truncate_steps(merge_consecutive(steps), max_steps)

    def canonicalize_run(
        self,
        run: SimulationRun,
        assignment: ClusterAssignment,
        max_steps: int = DEFAULT_MAX_STEPS,
    ) -> list[CanonicalTrace]:
        traces = []
        for response in run.responses:
            if response.profile_id not in assignment.labels:
                raise AssignmentMismatch(
                    f"profile {response.profile_id} missing from cluster assignment"
                )
            steps = self.canonicalize_trace(
                response.raw_trace,
                max_steps=max_steps,
                total_tokens=response.reasoning_token_count,
            )
            traces.append(
                CanonicalTrace(
                    profile_id=response.profile_id,
                    cluster_index=assignment.labels[response.profile_id],
                    selected_label=response.selected_label,
                    steps=tuple(steps),
                )
            )
        return traces


# -- Sankey aggregation ------------------------------------------------------


def _build_blocks(traces: list[CanonicalTrace], depth: int, prefix: tuple) -> list[dict]:
    """Blocks at ``depth`` for traces sharing ``prefix`` (their first depth-1
    labels). Members terminate in the block where their trace ends."""
    groups: dict[str, list[CanonicalTrace]] = {}
    for t in traces:
        label = t.labels[depth - 1]
        groups.setdefault(label, []).append(t)
    out = []
    for label in sorted(groups):
        members = groups[label]
        terminal = [t for t in members if len(t.labels) == depth]
        ongoing = [t for t in members if len(t.labels) > depth]
        cluster_counts = Counter(t.cluster_index for t in terminal)
        out.append(
            {
                "label": label,
                "prefix": list(prefix) + [label],
                "depth": depth,
                "member_ids": sorted(t.profile_id for t in members),
                "count": len(members),
                "mean_token_count": sum(t.steps[depth - 1].token_count for t in members)
                / len(members),
                "terminal_cluster_counts": {str(c): n for c, n in sorted(cluster_counts.items())},
                "children": _build_blocks(ongoing, depth + 1, prefix + (label,))
                if ongoing
                else [],
            }
        )
    return out


def aggregate_sankey(
    run: SimulationRun,
    traces: list[CanonicalTrace],
    assignment: ClusterAssignment,
) -> dict:
    responded = {r.profile_id for r in run.responses}
    traced = {t.profile_id for t in traces}
    if responded != traced:
        raise AssignmentMismatch("traces do not cover the run's successful responses")
    for t in traces:
        if assignment.labels.get(t.profile_id) != t.cluster_index:
            raise AssignmentMismatch(f"cluster mismatch for {t.profile_id}")

    total = len(traces)
    by_answer: dict[str, list[CanonicalTrace]] = {}
    for t in traces:
        by_answer.setdefault(t.selected_label, []).append(t)

    answer_nodes = []
    for label in sorted(by_answer):
        group = by_answer[label]
        answer_nodes.append(
            {
                "label": label,
                "count": len(group),
                "share": len(group) / total,
                "blocks": _build_blocks(group, 1, ()),
            }
        )
    return {
        "total": total,
        "question_version_id": run.question_version_id,
        "answer_nodes": answer_nodes,
    }


# -- strategies and distributions --------------------------------------------


def top_strategies(
    traces: list[CanonicalTrace], k: int = DEFAULT_TOP_K
) -> list[tuple[tuple, int]]:
    if not traces:
        raise AssignmentMismatch("no traces given")
    counts = Counter(t.labels for t in traces)
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return ranked[:k]


def answer_distribution(
    run: SimulationRun, assignment: ClusterAssignment, option_labels: list[str]
) -> dict:
    clusters = list(range(assignment.k))
    counts = {label: {c: 0 for c in clusters} for label in option_labels}
    for response in run.responses:
        cluster = assignment.labels.get(response.profile_id)
        if cluster is None:
            raise AssignmentMismatch(f"profile {response.profile_id} unassigned")
        counts[response.selected_label][cluster] += 1
    shares = {}
    for label, per_cluster in counts.items():
        total = sum(per_cluster.values())
        shares[label] = {
            c: (n / total if total else 0.0) for c, n in per_cluster.items()
        }
    return {
        "counts": {l: {str(c): n for c, n in pc.items()} for l, pc in counts.items()},
        "shares": {l: {str(c): s for c, s in pc.items()} for l, pc in shares.items()},
    }


def _rating_means(run: SimulationRun, assignment: ClusterAssignment | None) -> dict:
    groups: dict[str, list] = {}
    for response in run.responses:
        if assignment is None:
            key = "all"
        else:
            key = str(assignment.labels.get(response.profile_id, "unassigned"))
        groups.setdefault(key, []).append(response.ratings)
    means = {}
    for key, ratings in groups.items():
        means[key] = {
            dim: sum(r[dim] for r in ratings) / len(ratings)
            for dim in taxonomy.RATING_KEYS
        }
    return means


def compare_versions(
    runs: list[SimulationRun], assignments: list[ClusterAssignment] | None = None
) -> list[dict]:
    if not runs:
        raise AssignmentMismatch("at least one run is required")
    entries = []
    prev_means = None
    prev_accuracy = None
    for i, run in enumerate(runs):
        assignment = assignments[i] if assignments else None
        means = _rating_means(run, assignment)
        entry = {
            "version_id": run.question_version_id,
            "run_id": run.id,
            "accuracy": run.accuracy,
            "rating_means": means,
        }
        if prev_means is not None:
            entry["previous_rating_means"] = prev_means
            entry["previous_accuracy"] = prev_accuracy
        entries.append(entry)
        prev_means = means
        prev_accuracy = run.accuracy
    return entries
