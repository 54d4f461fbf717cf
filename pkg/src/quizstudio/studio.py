"""Facade tying the gateway, template store, pipeline, simulator, and
analytics into the instructor workflow. Shared by the HTTP API and the CLI."""

from __future__ import annotations

from typing import Optional

from . import reasoning
from .assets import seed_bundle_path
from .clock import LogicalClock, SystemClock
from .clustering import ClusterAssignment, cluster, summarize_groups
from .config import AppConfig
from .errors import InvalidRequest, UnknownVersion
from .features import McqFeatureSet, default_features
from .gateway import Gateway
from .pipeline import InstructorInput, QuestionPipeline, QuestionVersion
from .store import DocumentStore
from .students import CohortSpec, SimulationRun, StudentProfile, StudentSimulator
from .templates import TemplateStore


class Studio:
    def __init__(self, config: AppConfig | None = None):
        self.config = config or AppConfig()
        self.clock = LogicalClock() if self.config.provider == "mock" else SystemClock()
        self.gateway = Gateway(self.config.gateway_config())
        self.templates = TemplateStore()
        bundle = self.config.bundle_path or seed_bundle_path()
        self.templates.ingest_bundle(bundle)
        self.store = DocumentStore(self.config.data_dir)

        renderer = None
        if self.config.renderer_url:
            from .renderer_client import RendererClient

            renderer = RendererClient(self.config.renderer_url).render_svg
        self.pipeline = QuestionPipeline(
            self.gateway,
            self.templates,
            self.store,
            clock=self.clock,
            renderer=renderer,
            model_id=self.config.model_id,
        )
        self.simulator = StudentSimulator(
            self.gateway, clock=self.clock, model_id=self.config.model_id
        )
        self.canonicalizer = reasoning.TraceCanonicalizer(
            self.gateway, model_id=self.config.model_id
        )

    # -- projects ------------------------------------------------------------

    def create_project(self, title: str, project_id: str | None = None) -> dict:
        project_id = project_id or f"p{len(self.store.list_projects()) + 1}"
        return self.store.create_project(project_id, title, self.config.model_id)

    def get_project(self, project_id: str) -> dict:
        return self.store.load_project(project_id)

    # -- authoring -----------------------------------------------------------

    def analyze_requirements(
        self, project_id: str, instructor_input: InstructorInput
    ) -> McqFeatureSet:
        self.store.load_project(project_id)  # existence check
        return self.pipeline.analyze_requirements(instructor_input)

    def generate_question(self, project_id: str, features: dict) -> QuestionVersion:
        return self.pipeline.generate_question(default_features(**features), project_id)

    def revise_question(
        self,
        project_id: str,
        version_id: str,
        revision_prompt: str = "",
        feature_deltas: dict | None = None,
    ) -> QuestionVersion:
        prev = QuestionVersion.from_dict(self.store.load_version(project_id, version_id))
        return self.pipeline.revise_question(
            project_id, prev, revision_prompt, feature_deltas
        )

    def get_version(self, project_id: str, version_id: str) -> QuestionVersion:
        return QuestionVersion.from_dict(self.store.load_version(project_id, version_id))

    def set_checked(self, project_id: str, version_id: str, checked: bool) -> dict:
        with self.store.lock(project_id):
            doc = self.store.load_version(project_id, version_id)
            doc["checked"] = bool(checked)
            self.store.save_version(project_id, doc)
        return doc

    def reliability_stats(self, project_id: str) -> dict:
        return self.pipeline.reliability_stats(project_id)

    # -- cohort --------------------------------------------------------------

    def generate_cohort(self, project_id: str, spec: CohortSpec) -> list[StudentProfile]:
        profiles = self.simulator.generate_profiles(spec)
        self._save_cohort(project_id, profiles)
        return profiles

    def update_cohort(
        self, project_id: str, selector: dict, edits: dict
    ) -> list[StudentProfile]:
        profiles = self.get_cohort(project_id)
        updated = self.simulator.update_profiles(profiles, selector, edits)
        self._save_cohort(project_id, updated)
        return updated

    def import_roster(self, project_id: str, csv_text: str) -> list[StudentProfile]:
        profiles = self.simulator.import_roster(csv_text)
        self._save_cohort(project_id, profiles)
        return profiles

    def get_cohort(self, project_id: str) -> list[StudentProfile]:
        project = self.store.load_project(project_id)
        return [StudentProfile.from_dict(p) for p in project["cohort"]]

    def _save_cohort(self, project_id: str, profiles: list[StudentProfile]) -> None:
        with self.store.lock(project_id):
            project = self.store.load_project(project_id)
            project["cohort"] = [p.to_dict() for p in profiles]
            self.store.save_project(project)

    # -- simulation ----------------------------------------------------------

    def run_simulation(
        self,
        project_id: str,
        version_id: str,
        k: int | None = None,
        seed: int = 0,
        image: Optional[str] = None,
    ) -> dict:
        project = self.store.load_project(project_id)
        if version_id not in project["version_ids"]:
            raise UnknownVersion(f"no such version: {version_id}")
        question = self.get_version(project_id, version_id)
        profiles = self.get_cohort(project_id)
        if not profiles:
            raise InvalidRequest("project has no cohort; create one first")

        run_id = f"r{len(project['run_ids']) + 1}"
        run = self.simulator.simulate_cohort(
            profiles, question, image=image, run_id=run_id
        )
        assignment = cluster(
            profiles, k=k if k is not None else min(4, len(profiles)), seed=seed
        )
        doc = run.to_dict()
        doc["assignment"] = assignment.to_dict()
        doc["groups"] = [
            g.to_dict() for g in summarize_groups(assignment, profiles)
        ]
        with self.store.lock(project_id):
            self.store.save_run(project_id, doc)
            project = self.store.load_project(project_id)
            project["run_ids"].append(run_id)
            self.store.save_project(project)
        return doc

    def _load_run(self, project_id: str, run_id: str) -> tuple[SimulationRun, ClusterAssignment]:
        doc = self.store.load_run(project_id, run_id)
        run = SimulationRun.from_dict(doc)
        a = doc["assignment"]
        assignment = ClusterAssignment(
            k=a["k"],
            labels=dict(a["labels"]),
            centroids=[tuple(c) for c in a["centroids"]],
            inertia=a["inertia"],
            seed=a["seed"],
            inertia_history=[],
        )
        return run, assignment

    # -- analytics (read-only) ----------------------------------------------

    def sankey(self, project_id: str, run_id: str, max_steps: int = 6) -> dict:
        run, assignment = self._load_run(project_id, run_id)
        traces = self.canonicalizer.canonicalize_run(run, assignment, max_steps=max_steps)
        return reasoning.aggregate_sankey(run, traces, assignment)

    def strategies(self, project_id: str, run_id: str, k: int = 5) -> list[dict]:
        run, assignment = self._load_run(project_id, run_id)
        traces = self.canonicalizer.canonicalize_run(run, assignment)
        return [
            {"sequence": list(seq), "frequency": freq}
            for seq, freq in reasoning.top_strategies(traces, k)
        ]

    def distribution(self, project_id: str, run_id: str) -> dict:
        run, assignment = self._load_run(project_id, run_id)
        question = self.get_version(project_id, run.question_version_id)
        labels = [label for label, _ in question.options]
        return reasoning.answer_distribution(run, assignment, labels)

    def compare_versions(self, project_id: str, up_to_run_id: str | None = None) -> list[dict]:
        project = self.store.load_project(project_id)
        run_ids = project["run_ids"]
        if up_to_run_id is not None:
            if up_to_run_id not in run_ids:
                from .errors import UnknownRun

                raise UnknownRun(f"no such run: {up_to_run_id}")
            run_ids = run_ids[: run_ids.index(up_to_run_id) + 1]
        pairs = [self._load_run(project_id, rid) for rid in run_ids]
        return reasoning.compare_versions(
            [run for run, _ in pairs], [a for _, a in pairs]
        )

    # -- benchmark -----------------------------------------------------------

    def benchmark(
        self,
        model_ids: list[str],
        rounds: int,
        cohort_size: int = 20,
        seed: int = 0,
    ) -> dict:
        from .alignment import benchmark_models

        cohort = self.simulator.generate_profiles(
            CohortSpec(size=cohort_size, seed=seed)
        )
        question = self._benchmark_question()
        return benchmark_models(self.gateway, model_ids, cohort, [question], rounds)

    def _benchmark_question(self) -> QuestionVersion:
        from .templates import TemplateQuery

        features = default_features(chart_type="bar", misleader="truncated_axis")
        template, _ = self.templates.retrieve(TemplateQuery(features=features, k=1))[0]
        # a fixed, template-derived question keeps the benchmark self-contained
        from .gateway import blocks
        from .gateway.types import LlmRequest

        request = LlmRequest(
            kind="chat",
            model_id=self.config.model_id,
            system_prompt="You write visualization-literacy multiple-choice questions.",
            user_prompt="\n\n".join(
                [
                    "Write the MCQ for the chart below.",
                    blocks.json_block(blocks.QA_TEMPLATE, template.qa_template),
                    blocks.block(blocks.CSV, template.sample_csv),
                    blocks.json_block(blocks.FEATURES, features.to_dict()),
                ]
            ),
            response_schema_id="qa_generation",
        )
        qa = self.gateway.complete(request).parsed
        return QuestionVersion(
            id="bench-q1",
            parent_id=None,
            features=features,
            stem=qa["stem"],
            options=[(o["label"], o["text"]) for o in qa["options"]],
            correct_label=qa["correct_label"],
            explanation=qa["explanation"],
            chart_script=template.chart_script,
            chart_csv=template.sample_csv,
            chart_image_ref=None,
            created_at=self.clock.now_iso(),
        )
