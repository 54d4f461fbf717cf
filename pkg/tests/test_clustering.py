import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import make_profile, random_profile
from quizstudio.clustering import (
    DEFAULT_K,
    VECTOR_DIM,
    cluster,
    summarize_groups,
    vectorize,
)
from quizstudio.errors import AssignmentMismatch, KTooLarge


def adjusted_rand_index(labels_a, labels_b):
    """Contingency-table ARI, written independently of the implementation."""
    from collections import Counter
    from math import comb

    n = len(labels_a)
    pairs = Counter(zip(labels_a, labels_b))
    a_counts = Counter(labels_a)
    b_counts = Counter(labels_b)
    index = sum(comb(c, 2) for c in pairs.values())
    sum_a = sum(comb(c, 2) for c in a_counts.values())
    sum_b = sum(comb(c, 2) for c in b_counts.values())
    expected = sum_a * sum_b / comb(n, 2)
    max_index = (sum_a + sum_b) / 2
    if max_index == expected:
        return 1.0
    return (index - expected) / (max_index - expected)


def two_blob_cohort():
    low = [
        make_profile(
            f"lo{i:02d}",
            age=18 + i % 5,
            major="design",
            logical_reasoning=1,
            visual_processing=1,
            critical_thinking=1,
            working_memory=1,
            attention_to_detail=1,
            motivation=1,
            bar_line_reading=1,
            proportion_charts=1,
            axis_scale_interpretation=1,
            misleader_awareness=1,
            data_statistics_literacy=1,
        )
        for i in range(20)
    ]
    high = [
        make_profile(
            f"hi{i:02d}",
            age=22 + i % 5,
            major="computer_science",
            education_year="senior",
            logical_reasoning=5,
            visual_processing=5,
            critical_thinking=5,
            working_memory=5,
            attention_to_detail=5,
            motivation=5,
            bar_line_reading=5,
            proportion_charts=5,
            axis_scale_interpretation=5,
            misleader_awareness=5,
            data_statistics_literacy=5,
        )
        for i in range(20)
    ]
    return low + high


class TestVectorize:
    def test_dimension(self):
        assert VECTOR_DIM == 16
        assert len(vectorize(make_profile()).values) == 16

    def test_range_and_one_hot(self):
        v = vectorize(make_profile(major="design", education_year="graduate"))
        assert all(0.0 <= x <= 1.0 for x in v.values)
        one_hot = v.values[11:15]
        assert sum(one_hot) == 1.0 and one_hot[1] == 1.0  # design slot
        assert v.values[15] == 1.0  # graduate is the top year

    def test_extremes_map_to_bounds(self):
        lo = vectorize(two_blob_cohort()[0])
        assert all(x == 0.0 for x in lo.values[:11])


class TestCluster:
    def test_default_k_is_four(self):
        profiles = [random_profile(random.Random(i), f"s{i:03d}") for i in range(20)]
        assignment = cluster(profiles)
        assert assignment.k == DEFAULT_K == 4
        assert set(assignment.labels.values()) <= set(range(4))

    def test_two_blobs_recovered_any_seed(self):
        profiles = two_blob_cohort()
        truth = [0] * 20 + [1] * 20
        for seed in range(5):
            assignment = cluster(profiles, k=2, seed=seed)
            got = [assignment.labels[p.id] for p in profiles]
            assert adjusted_rand_index(truth, got) == 1.0

    def test_deterministic_per_seed(self):
        profiles = [random_profile(random.Random(i), f"s{i:03d}") for i in range(30)]
        a = cluster(profiles, k=4, seed=11)
        b = cluster(profiles, k=4, seed=11)
        assert a.labels == b.labels
        assert a.centroids == b.centroids
        assert a.inertia == b.inertia

    def test_inertia_history_non_increasing(self):
        rng = random.Random(0)
        for trial in range(100):
            n = rng.randint(5, 25)
            profiles = [random_profile(rng, f"s{i:03d}") for i in range(n)]
            k = rng.randint(1, min(4, n))
            history = cluster(profiles, k=k, seed=trial).inertia_history
            for earlier, later in zip(history, history[1:]):
                assert later <= earlier + 1e-9

    def test_centroid_is_member_mean(self):
        profiles = [random_profile(random.Random(i + 100), f"s{i:03d}") for i in range(25)]
        assignment = cluster(profiles, k=3, seed=5)
        X = {p.id: np.array(vectorize(p).values) for p in profiles}
        for j in range(3):
            members = [X[pid] for pid, l in assignment.labels.items() if l == j]
            if not members:
                continue
            mean = np.mean(members, axis=0)
            assert np.allclose(mean, assignment.centroids[j], atol=1e-9)

    def test_every_profile_assigned_exactly_once(self):
        profiles = [random_profile(random.Random(i), f"s{i:03d}") for i in range(20)]
        assignment = cluster(profiles, k=4, seed=0)
        assert sorted(assignment.labels) == sorted(p.id for p in profiles)

    def test_k_bounds(self):
        profiles = [make_profile(f"s{i:03d}", age=18 + i) for i in range(3)]
        with pytest.raises(KTooLarge):
            cluster(profiles, k=4)
        with pytest.raises(KTooLarge):
            cluster(profiles, k=0)

    def test_k_equals_n_zero_inertia(self):
        profiles = [random_profile(random.Random(i), f"s{i:03d}") for i in range(5)]
        assignment = cluster(profiles, k=5, seed=2)
        assert assignment.inertia <= 1e-9

    def test_identical_points_do_not_crash(self):
        profiles = [make_profile(f"s{i:03d}") for i in range(6)]
        assignment = cluster(profiles, k=2, seed=0)
        assert assignment.inertia == 0.0


class TestSummaries:
    def test_group_summary_fields(self):
        profiles = two_blob_cohort()
        assignment = cluster(profiles, k=2, seed=0)
        summaries = summarize_groups(assignment, profiles)
        assert sum(s.size for s in summaries) == 40
        by_major = {s.dominant_major for s in summaries}
        assert by_major == {"design", "computer_science"}
        for s in summaries:
            assert s.major_share == 1.0
            for v in s.trait_means.values():
                assert 1.0 <= v <= 5.0

    def test_dominant_major_tie_breaks_alphabetically(self):
        profiles = [
            make_profile("s001", major="design"),
            make_profile("s002", major="business"),
        ]
        assignment = cluster(profiles, k=1, seed=0)
        (summary,) = summarize_groups(assignment, profiles)
        assert summary.dominant_major == "business"

    def test_mismatched_profiles_rejected(self):
        profiles = [make_profile(f"s{i:03d}", age=19 + i) for i in range(4)]
        assignment = cluster(profiles, k=2, seed=0)
        with pytest.raises(AssignmentMismatch):
            summarize_groups(assignment, profiles[:-1])


@st.composite
def cohorts(draw):
    n = draw(st.integers(2, 15))
    seed = draw(st.integers(0, 10_000))
    rng = random.Random(seed)
    return [random_profile(rng, f"s{i:03d}") for i in range(n)]


class TestClusterProperties:
    @settings(max_examples=50, deadline=None)
    @given(profiles=cohorts(), k=st.integers(1, 4), seed=st.integers(0, 1_000))
    def test_partition_properties(self, profiles, k, seed):
        if k > len(profiles):
            k = len(profiles)
        assignment = cluster(profiles, k=k, seed=seed)
        # every profile labeled, labels in range, inertia non-negative
        assert set(assignment.labels) == {p.id for p in profiles}
        assert all(0 <= l < k for l in assignment.labels.values())
        assert assignment.inertia >= 0.0
        assert len(assignment.centroids) == k
