"""Two-stage question generation (template retrieval + chart customization,
then QA generation), iterative revision, structural validation, and
reliability instrumentation."""

from __future__ import annotations

import csv
import io
import statistics
from dataclasses import dataclass, field
from typing import Optional

from .clock import LogicalClock
from .errors import (
    ExtractionSchemaViolation,
    GenerationFailed,
    InvalidRequest,
    NoData,
    NoOpRevision,
    SchemaViolationExhausted,
)
from .features import McqFeatureSet, default_features
from .gateway import Gateway, LlmRequest, blocks
from .store import DocumentStore
from .templates import TemplateQuery, TemplateStore


@dataclass(frozen=True)
class InstructorInput:
    text: str = ""
    image: Optional[str] = None  # base64
    feature_overrides: dict = field(default_factory=dict)

    def validate(self) -> None:
        if not self.text and self.image is None:
            raise InvalidRequest("instructor input needs text or an image")


@dataclass
class QuestionVersion:
    id: str
    parent_id: Optional[str]
    features: McqFeatureSet
    stem: str
    options: list  # list of (label, text)
    correct_label: str
    explanation: str
    chart_script: str
    chart_csv: str
    chart_image_ref: Optional[str]
    created_at: str
    checked: bool = False

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "parent_id": self.parent_id,
            "features": self.features.to_dict(),
            "stem": self.stem,
            "options": [{"label": l, "text": t} for l, t in self.options],
            "correct_label": self.correct_label,
            "explanation": self.explanation,
            "chart_script": self.chart_script,
            "chart_csv": self.chart_csv,
            "chart_image_ref": self.chart_image_ref,
            "created_at": self.created_at,
            "checked": self.checked,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "QuestionVersion":
        return cls(
            id=data["id"],
            parent_id=data.get("parent_id"),
            features=McqFeatureSet.from_dict(data["features"]),
            stem=data["stem"],
            options=[(o["label"], o["text"]) for o in data["options"]],
            correct_label=data["correct_label"],
            explanation=data["explanation"],
            chart_script=data["chart_script"],
            chart_csv=data["chart_csv"],
            chart_image_ref=data.get("chart_image_ref"),
            created_at=data["created_at"],
            checked=data.get("checked", False),
        )


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)  # list of (code, message)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def auto_pass(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "auto_pass": self.auto_pass,
            "violations": [{"code": c, "message": m} for c, m in self.violations],
        }


def _csv_header_and_rows(text: str) -> tuple[list[str], list[list[str]]]:
    rows = list(csv.reader(io.StringIO(text.strip())))
    return (rows[0], rows[1:]) if rows else ([], [])


def validate_question(q: QuestionVersion) -> ValidationReport:
    report = ValidationReport()
    add = lambda code, msg: report.violations.append((code, msg))  # noqa: E731

    correct_hits = sum(1 for label, _ in q.options if label == q.correct_label)
    if correct_hits == 0:
        add("no_correct", f"no option carries the correct label {q.correct_label!r}")
    elif correct_hits > 1:
        add("multiple_correct", f"{correct_hits} options carry the correct label")

    labels = [label for label, _ in q.options]
    seen = set()
    for label in labels:
        if label in seen:
            add("duplicate_label", f"label {label!r} appears more than once")
            break
        seen.add(label)
    else:
        expected = [chr(ord("A") + i) for i in range(len(labels))]
        if labels != expected:
            add("label_sequence", f"labels {labels} are not contiguous from A")

    expected_count = q.features.distractor_count + 1
    if len(q.options) != expected_count:
        add(
            "option_count_mismatch",
            f"expected {expected_count} options, got {len(q.options)}",
        )

    header, rows = _csv_header_and_rows(q.chart_csv)
    if not header or any(len(r) != len(header) for r in rows) or not rows:
        add("ragged_csv", "chart_csv is not a rectangular table with a header row")
    elif not any(col and col in q.chart_script for col in header):
        add("script_data_mismatch", "chart_script references no CSV column header")

    if not q.stem.strip():
        add("empty_stem", "stem is empty")
    if not q.explanation.strip():
        add("empty_explanation", "explanation is empty")
    return report


class QuestionPipeline:
    def __init__(
        self,
        gateway: Gateway,
        templates: TemplateStore,
        store: DocumentStore,
        clock=None,
        renderer=None,
        model_id: str = "gpt-4o",
    ):
        self.gateway = gateway
        self.templates = templates
        self.store = store
        self.clock = clock or LogicalClock()
        self.renderer = renderer  # optional callable(script, csv) -> svg text
        self.model_id = model_id

    # -- requirement analysis ------------------------------------------------

    def analyze_requirements(self, instructor_input: InstructorInput) -> McqFeatureSet:
        instructor_input.validate()
        prompt = (
            "Extract the MCQ feature requirements from the instructor input."
            " Unconstrained features take the documented defaults.\n\n"
            + blocks.block(blocks.INSTRUCTOR_TEXT, instructor_input.text)
        )
        request = LlmRequest(
            kind="vision_chat" if instructor_input.image else "chat",
            model_id=self.model_id,
            system_prompt="You analyze instructor requirements for chart-based MCQs.",
            user_prompt=prompt,
            image=instructor_input.image,
            response_schema_id="feature_extraction",
        )
        try:
            extracted = self.gateway.complete(request).parsed
        except SchemaViolationExhausted as exc:
            raise ExtractionSchemaViolation(str(exc)) from exc
        features = default_features().merged(extracted)
        if instructor_input.feature_overrides:
            features = features.merged(instructor_input.feature_overrides)
        return features

    # -- generation ----------------------------------------------------------

    def generate_question(
        self, features: McqFeatureSet, project_id: str
    ) -> QuestionVersion:
        project = self.store.load_project(project_id)
        started = self.clock.monotonic()

        template, _ = self.templates.retrieve(TemplateQuery(features=features, k=1))[0]
        chart = self._customize_chart(
            template.chart_script, template.sample_csv, features
        )
        version = self._qa_and_assemble(
            project_id=project_id,
            project=project,
            features=features,
            qa_template=template.qa_template,
            chart=chart,
            parent_id=None,
            revision_prompt=None,
            kind="generation",
            started=started,
        )
        return version

    def revise_question(
        self,
        project_id: str,
        prev: QuestionVersion,
        revision_prompt: str = "",
        feature_deltas: dict | None = None,
    ) -> QuestionVersion:
        feature_deltas = feature_deltas or {}
        if not revision_prompt and not feature_deltas:
            raise NoOpRevision("revision needs a prompt or feature deltas")
        project = self.store.load_project(project_id)
        started = self.clock.monotonic()

        merged = prev.features.merged(feature_deltas)
        chart_type_changed = (
            "chart_type" in feature_deltas
            and feature_deltas["chart_type"] != prev.features.chart_type
        )
        if chart_type_changed:
            template, _ = self.templates.retrieve(TemplateQuery(features=merged, k=1))[0]
            base_script, base_csv = template.chart_script, template.sample_csv
            qa_template = template.qa_template
        else:
            base_script, base_csv = prev.chart_script, prev.chart_csv
            correct_text = next(
                (t for l, t in prev.options if l == prev.correct_label), ""
            )
            qa_template = {
                "stem_template": prev.stem,
                "answer_template": correct_text,
                "distractor_pool": "categories",
                "explanation_template": prev.explanation,
            }

        chart = self._customize_chart(
            base_script, base_csv, merged, revision_prompt=revision_prompt
        )
        return self._qa_and_assemble(
            project_id=project_id,
            project=project,
            features=merged,
            qa_template=qa_template,
            chart=chart,
            parent_id=prev.id,
            revision_prompt=revision_prompt or None,
            kind="revision",
            started=started,
        )

    # -- internals -----------------------------------------------------------

    def _customize_chart(
        self,
        script: str,
        csv_text: str,
        features: McqFeatureSet,
        revision_prompt: str = "",
    ) -> dict:
        parts = [
            "Modify the chart script and CSV below to satisfy the feature"
            " requirements, introducing variation in colors and data"
            " distribution while keeping the CSV rectangular.",
            blocks.block(blocks.CHART_SCRIPT, script),
            blocks.block(blocks.CSV, csv_text),
            blocks.json_block(blocks.FEATURES, features.to_dict()),
        ]
        if revision_prompt:
            parts.append(blocks.block(blocks.REVISION_PROMPT, revision_prompt))
        request = LlmRequest(
            kind="chat",
            model_id=self.model_id,
            system_prompt="You edit browser chart scripts and their CSV data.",
            user_prompt="\n\n".join(parts),
            response_schema_id="chart_customization",
        )
        return self.gateway.complete(request).parsed

    def _generate_qa(
        self,
        qa_template: dict,
        chart: dict,
        features: McqFeatureSet,
        image: str | None,
        revision_prompt: str | None,
        corrective: str | None = None,
    ) -> dict:
        parts = [
            "Write the MCQ (stem, options, correct label, explanation) for the"
            " chart below, following the QA template and features.",
            blocks.json_block(blocks.QA_TEMPLATE, qa_template),
            blocks.block(blocks.CSV, chart["csv"]),
            blocks.json_block(blocks.FEATURES, features.to_dict()),
        ]
        if revision_prompt:
            parts.append(blocks.block(blocks.REVISION_PROMPT, revision_prompt))
        if corrective:
            parts.append(f"The previous attempt was rejected: {corrective}. Fix it.")
        request = LlmRequest(
            kind="vision_chat" if image else "chat",
            model_id=self.model_id,
            system_prompt="You write visualization-literacy multiple-choice questions.",
            user_prompt="\n\n".join(parts),
            image=image,
            response_schema_id="qa_generation",
        )
        return self.gateway.complete(request).parsed

    def _qa_and_assemble(
        self,
        project_id: str,
        project: dict,
        features: McqFeatureSet,
        qa_template: dict,
        chart: dict,
        parent_id: str | None,
        revision_prompt: str | None,
        kind: str,
        started: float,
    ) -> QuestionVersion:
        image = None
        svg = None
        if self.renderer is not None:
            svg = self.renderer(chart["chart_script"], chart["csv"])

        version_id = f"v{len(project['version_ids']) + 1}"
        last_report = None
        corrective = None
        for _ in range(2):  # one automatic corrective regeneration
            qa = self._generate_qa(
                qa_template, chart, features, image, revision_prompt, corrective
            )
            version = QuestionVersion(
                id=version_id,
                parent_id=parent_id,
                features=features,
                stem=qa["stem"],
                options=[(o["label"], o["text"]) for o in qa["options"]],
                correct_label=qa["correct_label"],
                explanation=qa["explanation"],
                chart_script=chart["chart_script"],
                chart_csv=chart["csv"],
                chart_image_ref=None,
                created_at=self.clock.now_iso(),
            )
            last_report = validate_question(version)
            if last_report.ok:
                self._record_attempt(project_id, kind, started, True)
                with self.store.lock(project_id):
                    self.store.save_version(project_id, version.to_dict())
                    if svg is not None:
                        self.store.save_chart_svg(project_id, version_id, svg)
                    project = self.store.load_project(project_id)
                    project["version_ids"].append(version_id)
                    project["feature_history"].append(features.to_dict())
                    self.store.save_project(project)
                return version
            corrective = "; ".join(c for c, _ in last_report.violations)
        self._record_attempt(project_id, kind, started, False)
        raise GenerationFailed(
            f"validation failed after retry: {corrective}",
            violations=last_report.violations if last_report else [],
            partial=version.to_dict(),
        )

    def _record_attempt(
        self, project_id: str, kind: str, started: float, auto_pass: bool
    ) -> None:
        self.store.append_attempt(
            project_id,
            {
                "kind": kind,
                "duration_s": round(self.clock.monotonic() - started, 6),
                "auto_pass": auto_pass,
            },
        )

    # -- reliability ---------------------------------------------------------

    def reliability_stats(self, project_id: str) -> dict:
        attempts = self.store.load_attempts(project_id)
        if not attempts:
            raise NoData(f"no recorded attempts for project {project_id}")
        stats: dict = {}
        for kind, prefix in (("generation", "gen"), ("revision", "rev")):
            group = [a for a in attempts if a["kind"] == kind]
            if not group:
                continue
            stats[f"{prefix}_mean_s"] = statistics.fmean(a["duration_s"] for a in group)
            stats[f"{prefix}_pass_rate"] = sum(a["auto_pass"] for a in group) / len(group)
        return stats
