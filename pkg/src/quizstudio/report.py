"""Run reports: analytics exported as JSON, delimited tables, and figures.

A report for one simulation run lands in a single directory:

    sankey.json              reasoning-flow tree grouped by selected answer
    strategies.json          most frequent canonical step sequences
    version_stats.json       per-version accuracy and rating means
    distribution.csv         answer counts and shares per cluster
    accuracy_by_version.svg  line figure over the run history
    ratings_by_cluster.svg   grouped bar figure for the latest run
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .studio import Studio


def distribution_csv(distribution: dict) -> str:
    """Flatten the nested distribution dict into one row per (option, cluster)."""
    clusters = sorted(
        {c for per in distribution["counts"].values() for c in per}, key=int
    )
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["option", "cluster", "count", "share"])
    for label in sorted(distribution["counts"]):
        for cluster_id in clusters:
            writer.writerow(
                [
                    label,
                    cluster_id,
                    distribution["counts"][label][cluster_id],
                    f"{distribution['shares'][label][cluster_id]:.4f}",
                ]
            )
    return buf.getvalue()


def _plot_accuracy(versions: list[dict], path: Path) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    labels = [f"{v['version_id']}\n({v['run_id']})" for v in versions]
    values = [v["accuracy"] for v in versions]
    ax.plot(range(len(values)), values, marker="o", color="#4c72b0")
    ax.set_xticks(range(len(values)))
    ax.set_xticklabels(labels)
    ax.set_ylim(0.0, 1.05)
    ax.set_ylabel("accuracy")
    ax.set_title("Cohort accuracy by question version")
    ax.grid(True, axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def _plot_ratings(versions: list[dict], path: Path) -> None:
    latest = versions[-1]["rating_means"]
    clusters = sorted(latest, key=int)
    keys = sorted({k for means in latest.values() for k in means})
    fig, ax = plt.subplots(figsize=(8, 4))
    width = 0.8 / max(1, len(clusters))
    for i, cluster_id in enumerate(clusters):
        xs = [j + i * width for j in range(len(keys))]
        ys = [latest[cluster_id].get(k, 0.0) for k in keys]
        ax.bar(xs, ys, width=width, label=f"cluster {cluster_id}")
    ax.set_xticks([j + 0.4 - width / 2 for j in range(len(keys))])
    ax.set_xticklabels(keys, rotation=30, ha="right", fontsize=8)
    ax.set_ylim(0, 5)
    ax.set_ylabel("mean rating (1-5)")
    ax.set_title("Difficulty ratings by cluster")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def write_report(
    studio: Studio, project_id: str, run_id: str, out_dir: str | Path
) -> list[str]:
    """Build the full report for one run. Returns the written file names."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    sankey = studio.sankey(project_id, run_id)
    strategies = studio.strategies(project_id, run_id)
    versions = studio.compare_versions(project_id, up_to_run_id=run_id)
    distribution = studio.distribution(project_id, run_id)

    written = []

    def emit(name: str, text: str) -> None:
        (out / name).write_text(text)
        written.append(name)

    emit("sankey.json", json.dumps(sankey, indent=2, sort_keys=True) + "\n")
    emit("strategies.json", json.dumps(strategies, indent=2, sort_keys=True) + "\n")
    emit("version_stats.json", json.dumps(versions, indent=2, sort_keys=True) + "\n")
    emit("distribution.csv", distribution_csv(distribution))

    _plot_accuracy(versions, out / "accuracy_by_version.svg")
    written.append("accuracy_by_version.svg")
    _plot_ratings(versions, out / "ratings_by_cluster.svg")
    written.append("ratings_by_cluster.svg")
    return written
