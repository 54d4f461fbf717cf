import random
from collections import Counter

import pytest

from conftest import make_trace
from quizstudio.assets import step_vocabulary
from quizstudio.clustering import ClusterAssignment
from quizstudio.errors import AssignmentMismatch, CanonicalizationFailed
from quizstudio.reasoning import (
    CanonicalTrace,
    StrategyStep,
    TraceCanonicalizer,
    _apportion_tokens,
    aggregate_sankey,
    answer_distribution,
    compare_versions,
    merge_consecutive,
    top_strategies,
    truncate_steps,
)
from quizstudio.students import SimulationRun, StudentResponse

VOCAB = step_vocabulary()["labels"]


def make_run(traces, run_id="r1", version_id="v1", correct="A"):
    responses = [
        StudentResponse(
            profile_id=t.profile_id,
            question_version_id=version_id,
            selected_label=t.selected_label,
            raw_trace=[f"step {i}" for i in range(len(t.steps))],
            ratings={
                "context_clarity": 3,
                "chart_complexity": 3,
                "data_difficulty": 3,
                "visual_encoding_complexity": 3,
                "overall_cognitive_challenge": 3,
                "hint_dependency": 3,
            },
            reasoning_token_count=sum(s.token_count for s in t.steps),
            correct=t.selected_label == correct,
        )
        for t in traces
    ]
    return SimulationRun(
        id=run_id,
        question_version_id=version_id,
        responses=responses,
        errors=[],
        created_at="2024-01-01T00:00:01Z",
    )


def make_assignment(traces, k=None):
    labels = {t.profile_id: t.cluster_index for t in traces}
    k = k or (max(labels.values()) + 1 if labels else 1)
    return ClusterAssignment(
        k=k, labels=labels, centroids=[(0.0,)] * k, inertia=0.0, seed=0,
        inertia_history=[],
    )


def random_traces(rng, n_traces=None, max_steps=6, n_options=5):
    n = n_traces if n_traces is not None else rng.randint(1, 50)
    options = [chr(ord("A") + i) for i in range(rng.randint(2, n_options))]
    traces = []
    for i in range(n):
        length = rng.randint(1, max_steps)
        labels = [rng.choice(VOCAB[:8]) for _ in range(length)]
        traces.append(
            make_trace(
                labels,
                profile_id=f"s{i:03d}",
                cluster=rng.randint(0, 3),
                selected=rng.choice(options),
                tokens=[rng.randint(1, 30) for _ in range(length)],
            )
        )
    return traces


class TestStrategySteps:
    def test_unknown_label_rejected(self):
        with pytest.raises(CanonicalizationFailed):
            StrategyStep(canonical_label="made_up_step", token_count=1)

    def test_merge_consecutive_sums_tokens(self):
        steps = [
            StrategyStep("understand_question", 3),
            StrategyStep("understand_question", 4),
            StrategyStep("select_answer", 2),
        ]
        merged = merge_consecutive(steps)
        assert [s.canonical_label for s in merged] == [
            "understand_question",
            "select_answer",
        ]
        assert merged[0].token_count == 7

    def test_truncation_folds_tail(self):
        steps = [StrategyStep(VOCAB[i], i + 1) for i in range(8)]
        truncated = truncate_steps(steps, 6)
        assert len(truncated) == 6
        assert sum(s.token_count for s in truncated) == sum(
            s.token_count for s in steps
        )
        assert truncated[-1].canonical_label == VOCAB[5]

    def test_apportion_sums_exactly(self):
        rng = random.Random(1)
        for _ in range(500):
            n = rng.randint(1, 10)
            trace = ["x" * rng.randint(1, 40) for _ in range(n)]
            total = rng.randint(0, 500)
            counts = _apportion_tokens(trace, total)
            assert sum(counts) == total
            assert all(c >= 0 for c in counts)


class TestCanonicalizer:
    def test_known_phrases_map_to_labels(self, gateway):
        canon = TraceCanonicalizer(gateway)
        steps = canon.canonicalize_trace(
            [
                "First I read the question to understand what is asked.",
                "Then I looked at the bar heights in the chart.",
                "Finally I selected my answer.",
            ]
        )
        labels = [s.canonical_label for s in steps]
        assert labels[0] == "understand_question"
        assert "verify_bar_heights" in labels
        assert labels[-1] == "select_answer"

    def test_unknown_text_falls_back(self, gateway):
        canon = TraceCanonicalizer(gateway)
        steps = canon.canonicalize_trace(["zzz qqq unrelated text"])
        assert steps[0].canonical_label == step_vocabulary()["fallback_label"]

    def test_empty_trace_rejected(self, gateway):
        with pytest.raises(CanonicalizationFailed):
            TraceCanonicalizer(gateway).canonicalize_trace([])

    def test_max_steps_enforced(self, gateway):
        canon = TraceCanonicalizer(gateway)
        raw = [f"unrelated step number {i} with padding" for i in range(12)]
        steps = canon.canonicalize_trace(raw, max_steps=4)
        assert len(steps) <= 4

    def test_token_total_preserved(self, gateway):
        canon = TraceCanonicalizer(gateway)
        raw = ["I read the question.", "I compared the options carefully."]
        steps = canon.canonicalize_trace(raw, total_tokens=57)
        assert sum(s.token_count for s in steps) == 57


def oracle_blocks(traces, depth=1):
    """Brute-force prefix grouping, independent of the implementation."""
    groups = {}
    for t in traces:
        groups.setdefault(t.labels[depth - 1], []).append(t)
    out = {}
    for label, members in groups.items():
        ongoing = [t for t in members if len(t.labels) > depth]
        out[label] = {
            "member_ids": sorted(t.profile_id for t in members),
            "children": oracle_blocks(ongoing, depth + 1) if ongoing else {},
        }
    return out


def check_against_oracle(blocks, oracle, parent_count=None):
    assert {b["label"] for b in blocks} == set(oracle)
    for b in blocks:
        expected = oracle[b["label"]]
        assert b["member_ids"] == expected["member_ids"]
        assert b["count"] == len(expected["member_ids"])
        terminal = sum(b["terminal_cluster_counts"].values())
        child_total = sum(c["count"] for c in b["children"])
        assert terminal + child_total == b["count"]  # conservation
        check_against_oracle(b["children"], expected["children"])


class TestSankey:
    def test_matches_oracle_and_conserves(self):
        rng = random.Random(42)
        for _ in range(1000):
            traces = random_traces(rng)
            run = make_run(traces)
            assignment = make_assignment(traces)
            sankey = aggregate_sankey(run, traces, assignment)
            assert sankey["total"] == len(traces)
            assert sum(n["count"] for n in sankey["answer_nodes"]) == len(traces)
            assert sum(n["share"] for n in sankey["answer_nodes"]) == pytest.approx(1.0)
            for node in sankey["answer_nodes"]:
                members = [t for t in traces if t.selected_label == node["label"]]
                assert sum(b["count"] for b in node["blocks"]) == node["count"]
                check_against_oracle(node["blocks"], oracle_blocks(members))

    def test_mean_token_count(self):
        traces = [
            make_trace(["understand_question"], "s001", tokens=[10]),
            make_trace(["understand_question"], "s002", tokens=[20]),
        ]
        sankey = aggregate_sankey(make_run(traces), traces, make_assignment(traces))
        (node,) = sankey["answer_nodes"]
        assert node["blocks"][0]["mean_token_count"] == 15.0

    def test_trace_coverage_enforced(self):
        traces = random_traces(random.Random(0), n_traces=5)
        run = make_run(traces)
        with pytest.raises(AssignmentMismatch):
            aggregate_sankey(run, traces[:-1], make_assignment(traces))

    def test_cluster_consistency_enforced(self):
        traces = random_traces(random.Random(0), n_traces=5)
        run = make_run(traces)
        assignment = make_assignment(traces)
        assignment.labels[traces[0].profile_id] = 99
        with pytest.raises(AssignmentMismatch):
            aggregate_sankey(run, traces, assignment)


class TestTopStrategies:
    def test_matches_counter_oracle(self):
        rng = random.Random(9)
        for _ in range(1000):
            traces = random_traces(rng, max_steps=3)
            got = top_strategies(traces, k=5)
            counts = Counter(t.labels for t in traces)
            expected = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:5]
            assert got == expected

    def test_default_k_is_five(self):
        traces = [
            make_trace([VOCAB[i]], profile_id=f"s{i:03d}") for i in range(8)
        ]
        assert len(top_strategies(traces)) == 5

    def test_empty_rejected(self):
        with pytest.raises(AssignmentMismatch):
            top_strategies([])


class TestDistribution:
    def test_zero_entries_present(self):
        traces = [make_trace(["select_answer"], "s001", cluster=0, selected="B")]
        run = make_run(traces)
        dist = answer_distribution(run, make_assignment(traces, k=2), ["A", "B", "C"])
        assert dist["counts"]["A"] == {"0": 0, "1": 0}
        assert dist["counts"]["B"] == {"0": 1, "1": 0}
        assert dist["shares"]["B"]["0"] == 1.0
        assert dist["shares"]["C"]["0"] == 0.0

    def test_counts_sum_to_responses(self):
        rng = random.Random(3)
        traces = random_traces(rng, n_traces=30)
        run = make_run(traces)
        options = sorted({t.selected_label for t in traces})
        dist = answer_distribution(run, make_assignment(traces), options)
        total = sum(
            n for per in dist["counts"].values() for n in per.values()
        )
        assert total == 30


class TestCompareVersions:
    def test_accuracy_and_chaining(self):
        t1 = [make_trace(["select_answer"], f"s{i:03d}", selected="A" if i < 3 else "B")
              for i in range(4)]
        t2 = [make_trace(["select_answer"], f"s{i:03d}", selected="A")
              for i in range(4)]
        runs = [
            make_run(t1, run_id="r1", version_id="v1"),
            make_run(t2, run_id="r2", version_id="v2"),
        ]
        entries = compare_versions(runs)
        assert entries[0]["accuracy"] == 0.75
        assert entries[1]["accuracy"] == 1.0
        assert "previous_rating_means" not in entries[0]
        assert entries[1]["previous_accuracy"] == 0.75

    def test_empty_rejected(self):
        with pytest.raises(AssignmentMismatch):
            compare_versions([])
