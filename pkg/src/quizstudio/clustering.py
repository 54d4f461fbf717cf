"""Cohort clustering: profile vectorization, seeded k-means (k-means++ init,
Lloyd iterations, assignment-stability convergence), and group summaries."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import taxonomy
from .errors import AssignmentMismatch, KTooLarge
from .students import StudentProfile

DEFAULT_K = 4
MAX_ITERATIONS = 300

ORDINAL_KEYS = taxonomy.TRAIT_KEYS + taxonomy.PROFILE_KNOWLEDGE_KEYS
VECTOR_DIM = len(ORDINAL_KEYS) + len(taxonomy.MAJORS) + 1  # 11 + 4 + 1 = 16


@dataclass(frozen=True)
class ProfileVector:
    profile_id: str
    values: tuple

    def __post_init__(self):
        if len(self.values) != VECTOR_DIM:
            raise AssignmentMismatch(f"vector must have {VECTOR_DIM} dims")


def vectorize(profile: StudentProfile) -> ProfileVector:
    """11 ordinals scaled to [0,1], one-hot major, scaled education year."""
    values = [(getattr(profile, key) - 1) / 4 for key in ORDINAL_KEYS]
    values.extend(1.0 if profile.major == m else 0.0 for m in taxonomy.MAJORS)
    year_index = taxonomy.EDUCATION_YEARS.index(profile.education_year)
    values.append(year_index / (len(taxonomy.EDUCATION_YEARS) - 1))
    return ProfileVector(profile_id=profile.id, values=tuple(values))


@dataclass
class ClusterAssignment:
    k: int
    labels: dict  # profile_id -> cluster index
    centroids: list  # k vectors
    inertia: float
    seed: int
    inertia_history: list  # per-iteration inertia, non-increasing

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "labels": dict(self.labels),
            "centroids": [list(map(float, c)) for c in self.centroids],
            "inertia": float(self.inertia),
            "seed": self.seed,
        }


def _kmeans_plusplus(X: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = X.shape[0]
    centroids = np.empty((k, X.shape[1]))
    centroids[0] = X[rng.integers(n)]
    for i in range(1, k):
        dist_sq = np.min(
            ((X[:, None, :] - centroids[None, :i, :]) ** 2).sum(axis=2), axis=1
        )
        total = dist_sq.sum()
        if total <= 0:
            centroids[i] = X[rng.integers(n)]
        else:
            centroids[i] = X[rng.choice(n, p=dist_sq / total)]
    return centroids


def cluster(
    profiles: list[StudentProfile], k: int = DEFAULT_K, seed: int = 0
) -> ClusterAssignment:
    if not 1 <= k <= len(profiles):
        raise KTooLarge(f"k={k} with only {len(profiles)} profiles")
    vectors = [vectorize(p) for p in profiles]
    X = np.array([v.values for v in vectors], dtype=float)
    rng = np.random.default_rng(seed)
    centroids = _kmeans_plusplus(X, k, rng)

    labels = np.full(len(X), -1)
    history: list[float] = []
    for _ in range(MAX_ITERATIONS):
        dists = ((X[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
        new_labels = dists.argmin(axis=1)
        history.append(float(dists[np.arange(len(X)), new_labels].sum()))
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
        for j in range(k):
            members = X[labels == j]
            if len(members):
                centroids[j] = members.mean(axis=0)
            else:
                # re-seed empty cluster from the farthest point
                farthest = dists.min(axis=1).argmax()
                centroids[j] = X[farthest]

    # final centroids are exact member means of the final assignment
    for j in range(k):
        members = X[labels == j]
        if len(members):
            centroids[j] = members.mean(axis=0)
    dists = ((X[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
    inertia = float(dists[np.arange(len(X)), labels].sum())

    return ClusterAssignment(
        k=k,
        labels={v.profile_id: int(l) for v, l in zip(vectors, labels)},
        centroids=[tuple(map(float, c)) for c in centroids],
        inertia=inertia,
        seed=seed,
        inertia_history=history,
    )


@dataclass(frozen=True)
class GroupSummary:
    cluster_index: int
    size: int
    dominant_major: str
    major_share: float
    trait_means: dict  # key -> mean on the original 1-5 scale
    knowledge_means: dict

    def to_dict(self) -> dict:
        return {
            "cluster_index": self.cluster_index,
            "size": self.size,
            "dominant_major": self.dominant_major,
            "major_share": self.major_share,
            "trait_means": dict(self.trait_means),
            "knowledge_means": dict(self.knowledge_means),
        }


def summarize_groups(
    assignment: ClusterAssignment, profiles: list[StudentProfile]
) -> list[GroupSummary]:
    by_id = {p.id: p for p in profiles}
    if set(assignment.labels) != set(by_id):
        raise AssignmentMismatch("assignment does not cover the given profiles")
    summaries = []
    for j in range(assignment.k):
        members = [by_id[pid] for pid, l in assignment.labels.items() if l == j]
        if not members:
            continue
        majors: dict[str, int] = {}
        for m in members:
            majors[m.major] = majors.get(m.major, 0) + 1
        dominant = min(majors, key=lambda name: (-majors[name], name))
        summaries.append(
            GroupSummary(
                cluster_index=j,
                size=len(members),
                dominant_major=dominant,
                major_share=majors[dominant] / len(members),
                trait_means={
                    key: sum(getattr(m, key) for m in members) / len(members)
                    for key in taxonomy.TRAIT_KEYS
                },
                knowledge_means={
                    key: sum(getattr(m, key) for m in members) / len(members)
                    for key in taxonomy.PROFILE_KNOWLEDGE_KEYS
                },
            )
        )
    return summaries
