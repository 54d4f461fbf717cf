"""Chart-template corpus: ingestion, indexing, and similarity retrieval."""

from __future__ import annotations

import csv
import io
import json
import re
import threading
from dataclasses import dataclass, field
from pathlib import Path

from .errors import EmptyStore, MalformedManifest, NoMatch, QuizStudioError
from .features import McqFeatureSet
from .taxonomy import CHART_TYPES, KNOWLEDGE_POINTS, MISLEADERS

PLACEHOLDER_RE = re.compile(r"\{[a-z_]+\}")

# soft-score weights: knowledge overlap, misleader coverage, difficulty proximity
W_KNOWLEDGE = 0.5
W_MISLEADER = 0.3
W_DIFFICULTY = 0.2


class InvalidTemplate(QuizStudioError):
    code = "invalid_template"

    def __init__(self, template_id: str, reason: str):
        super().__init__(f"{template_id}: {reason}")
        self.template_id = template_id
        self.reason = reason


@dataclass(frozen=True)
class ChartTemplate:
    id: str
    chart_type: str
    misleader_tags: frozenset
    knowledge_points: frozenset
    chart_script: str
    sample_csv: str
    qa_template: dict
    difficulty_hint: int

    def validate(self) -> None:
        if self.chart_type not in CHART_TYPES:
            raise InvalidTemplate(self.id, f"unknown chart_type {self.chart_type!r}")
        for tag in self.misleader_tags:
            if tag not in MISLEADERS:
                raise InvalidTemplate(self.id, f"unknown misleader tag {tag!r}")
        for kp in self.knowledge_points:
            if kp not in KNOWLEDGE_POINTS:
                raise InvalidTemplate(self.id, f"unknown knowledge point {kp!r}")
        if not 1 <= self.difficulty_hint <= 5:
            raise InvalidTemplate(self.id, "difficulty_hint must be in 1..5")
        rows = list(csv.reader(io.StringIO(self.sample_csv.strip())))
        if len(rows) < 2:
            raise InvalidTemplate(self.id, "sample_csv needs a header row and data")
        widths = {len(r) for r in rows}
        if len(widths) != 1:
            raise InvalidTemplate(self.id, "sample_csv is ragged")
        if not PLACEHOLDER_RE.search(json.dumps(self.qa_template)):
            raise InvalidTemplate(self.id, "qa_template has no placeholder token")
        if not self.chart_script.strip():
            raise InvalidTemplate(self.id, "chart_script is empty")


@dataclass(frozen=True)
class TemplateQuery:
    features: McqFeatureSet
    k: int = 1

    def __post_init__(self):
        if self.k < 1:
            raise QuizStudioError("k must be >= 1")


@dataclass
class IngestReport:
    count: int = 0
    invalid: list = field(default_factory=list)  # list of (id, reason)


def score_template(template: ChartTemplate, features: McqFeatureSet) -> float:
    """Soft similarity in [0,1]; the hard chart-type filter happens elsewhere."""
    query_kp = set(features.knowledge_points)
    union = query_kp | template.knowledge_points
    jaccard = len(query_kp & template.knowledge_points) / len(union) if union else 1.0

    requested = {features.misleader} if features.misleader else set()
    covered = 1.0 if template.misleader_tags >= requested else 0.0

    proximity = 1.0 - abs(template.difficulty_hint - features.difficulty_target) / 4.0
    return W_KNOWLEDGE * jaccard + W_MISLEADER * covered + W_DIFFICULTY * proximity


class TemplateStore:
    """Read-mostly index; ingestion builds a new index and swaps it atomically."""

    def __init__(self):
        self._index: dict[str, ChartTemplate] = {}
        self._write_lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._index)

    def ids(self) -> list[str]:
        return sorted(self._index)

    def get(self, template_id: str) -> ChartTemplate:
        return self._index[template_id]

    def add(self, template: ChartTemplate) -> None:
        template.validate()
        with self._write_lock:
            index = dict(self._index)
            index[template.id] = template
            self._index = index

    def ingest_bundle(self, bundle_path: str | Path) -> IngestReport:
        bundle = Path(bundle_path)
        manifest_path = bundle / "manifest.json"
        if not bundle.is_dir():
            raise MalformedManifest(f"bundle path does not exist: {bundle}")
        if not manifest_path.exists():
            # an empty directory is a valid empty bundle
            if not any(bundle.iterdir()):
                return IngestReport()
            raise MalformedManifest(f"missing manifest.json in {bundle}")
        try:
            descriptors = json.loads(manifest_path.read_text())
        except json.JSONDecodeError as exc:
            raise MalformedManifest(str(exc)) from exc
        if not isinstance(descriptors, list):
            raise MalformedManifest("manifest.json must be a JSON array")

        report = IngestReport()
        staged: dict[str, ChartTemplate] = {}
        for desc in descriptors:
            tid = desc.get("id", "<missing id>")
            try:
                template = self._load_template(bundle, desc)
                template.validate()
                staged[template.id] = template
                report.count += 1
            except InvalidTemplate as exc:
                report.invalid.append((tid, exc.reason))
            except (KeyError, OSError, json.JSONDecodeError) as exc:
                report.invalid.append((tid, str(exc)))
        with self._write_lock:
            index = dict(self._index)
            index.update(staged)
            self._index = index
        return report

    @staticmethod
    def _load_template(bundle: Path, desc: dict) -> ChartTemplate:
        tdir = bundle / desc["path"]
        meta = json.loads((tdir / "meta.json").read_text())
        return ChartTemplate(
            id=desc["id"],
            chart_type=meta["chart_type"],
            misleader_tags=frozenset(meta.get("misleader_tags", [])),
            knowledge_points=frozenset(meta.get("knowledge_points", [])),
            chart_script=(tdir / "chart.js").read_text(),
            sample_csv=(tdir / "data.csv").read_text(),
            qa_template=json.loads((tdir / "qa.json").read_text()),
            difficulty_hint=int(meta.get("difficulty_hint", 3)),
        )

    def retrieve(self, query: TemplateQuery) -> list[tuple[ChartTemplate, float]]:
        index = self._index
        if not index:
            raise EmptyStore("template store is empty")
        candidates = list(index.values())
        if query.features.chart_type is not None:
            candidates = [t for t in candidates if t.chart_type == query.features.chart_type]
            if not candidates:
                raise NoMatch(f"no template with chart_type {query.features.chart_type}")
        scored = [(t, score_template(t, query.features)) for t in candidates]
        scored.sort(key=lambda pair: (-pair[1], pair[0].id))
        return scored[: query.k]
