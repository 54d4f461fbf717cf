"""HTTP API exposing the instructor workflow."""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from ..config import AppConfig
from ..errors import (
    ConstraintInfeasible,
    EmptyCohort,
    EmptySelection,
    EmptyStore,
    GenerationFailed,
    InvalidRequest,
    KTooLarge,
    NoData,
    NoMatch,
    NoOpRevision,
    QuizStudioError,
    RosterImportError,
    UnknownProject,
    UnknownRun,
    UnknownVersion,
)
from ..pipeline import InstructorInput
from ..students import CohortSpec
from ..studio import Studio

_STATUS = {
    UnknownProject: 404,
    UnknownVersion: 404,
    UnknownRun: 404,
    NoMatch: 404,
    InvalidRequest: 422,
    ConstraintInfeasible: 422,
    NoOpRevision: 422,
    EmptySelection: 422,
    RosterImportError: 422,
    KTooLarge: 422,
    EmptyCohort: 422,
    EmptyStore: 409,
    NoData: 404,
    GenerationFailed: 502,
}


class ProjectBody(BaseModel):
    title: str = "Untitled project"
    id: Optional[str] = None


class RequirementsBody(BaseModel):
    text: str = ""
    image: Optional[str] = None
    feature_overrides: dict = {}


class QuestionBody(BaseModel):
    features: dict = {}


class ReviseBody(BaseModel):
    revision_prompt: str = ""
    feature_deltas: dict = {}


class CheckedBody(BaseModel):
    checked: bool


class CohortBody(BaseModel):
    description: str = ""
    size: Optional[int] = None
    attribute_constraints: dict = {}
    seed: int = 0


class CohortPatchBody(BaseModel):
    selector: dict
    edits: dict


class RosterBody(BaseModel):
    csv: str


class RunBody(BaseModel):
    version_id: str
    k: Optional[int] = None
    seed: int = 0
    image: Optional[str] = None


class BenchmarkBody(BaseModel):
    model_ids: list
    rounds: int = 1
    cohort_size: int = 20
    seed: int = 0


def create_app(studio: Studio | None = None, config: AppConfig | None = None) -> FastAPI:
    studio = studio or Studio(config)
    app = FastAPI(title="quizstudio", version="0.1.0")
    app.state.studio = studio

    @app.exception_handler(QuizStudioError)
    async def _domain_error(request: Request, exc: QuizStudioError):
        status = next(
            (code for cls, code in _STATUS.items() if isinstance(exc, cls)), 500
        )
        return JSONResponse(
            status_code=status,
            content={
                "code": exc.code,
                "message": exc.message,
                "details": {k: str(v) for k, v in exc.details.items()},
            },
        )

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/projects", status_code=201)
    def create_project(body: ProjectBody):
        return studio.create_project(body.title, body.id)

    @app.get("/projects/{project_id}")
    def get_project(project_id: str):
        return studio.get_project(project_id)

    @app.post("/projects/{project_id}/requirements")
    def analyze_requirements(project_id: str, body: RequirementsBody):
        features = studio.analyze_requirements(
            project_id,
            InstructorInput(
                text=body.text,
                image=body.image,
                feature_overrides=body.feature_overrides,
            ),
        )
        return {"features": features.to_dict()}

    @app.post("/projects/{project_id}/questions", status_code=201)
    def generate_question(project_id: str, body: QuestionBody):
        return studio.generate_question(project_id, body.features).to_dict()

    @app.post("/projects/{project_id}/questions/{version_id}/revise", status_code=201)
    def revise_question(project_id: str, version_id: str, body: ReviseBody):
        return studio.revise_question(
            project_id, version_id, body.revision_prompt, body.feature_deltas
        ).to_dict()

    @app.get("/projects/{project_id}/questions/{version_id}")
    def get_question(project_id: str, version_id: str):
        return studio.get_version(project_id, version_id).to_dict()

    @app.put("/projects/{project_id}/questions/{version_id}/checked")
    def set_checked(project_id: str, version_id: str, body: CheckedBody):
        return studio.set_checked(project_id, version_id, body.checked)

    @app.get("/projects/{project_id}/reliability")
    def reliability(project_id: str):
        studio.get_project(project_id)
        return studio.reliability_stats(project_id)

    @app.post("/projects/{project_id}/cohort", status_code=201)
    def generate_cohort(project_id: str, body: CohortBody):
        studio.get_project(project_id)
        spec = CohortSpec(
            description=body.description,
            size=body.size if body.size is not None else 20,
            attribute_constraints=body.attribute_constraints,
            seed=body.seed,
        )
        return {"profiles": [p.to_dict() for p in studio.generate_cohort(project_id, spec)]}

    @app.patch("/projects/{project_id}/cohort")
    def update_cohort(project_id: str, body: CohortPatchBody):
        profiles = studio.update_cohort(project_id, body.selector, body.edits)
        return {"profiles": [p.to_dict() for p in profiles]}

    @app.post("/projects/{project_id}/cohort/import", status_code=201)
    def import_roster(project_id: str, body: RosterBody):
        studio.get_project(project_id)
        return {"profiles": [p.to_dict() for p in studio.import_roster(project_id, body.csv)]}

    @app.post("/projects/{project_id}/runs", status_code=201)
    def run_simulation(project_id: str, body: RunBody):
        return studio.run_simulation(
            project_id, body.version_id, k=body.k, seed=body.seed, image=body.image
        )

    @app.get("/projects/{project_id}/runs/{run_id}")
    def get_run(project_id: str, run_id: str):
        return studio.store.load_run(project_id, run_id)

    @app.get("/projects/{project_id}/runs/{run_id}/sankey")
    def sankey(project_id: str, run_id: str, max_steps: int = 6):
        return studio.sankey(project_id, run_id, max_steps=max_steps)

    @app.get("/projects/{project_id}/runs/{run_id}/distribution")
    def distribution(project_id: str, run_id: str):
        return studio.distribution(project_id, run_id)

    @app.get("/projects/{project_id}/runs/{run_id}/strategies")
    def strategies(project_id: str, run_id: str, k: int = 5):
        return {"strategies": studio.strategies(project_id, run_id, k=k)}

    @app.get("/projects/{project_id}/runs/{run_id}/versions/compare")
    def versions_compare(project_id: str, run_id: str):
        return {"versions": studio.compare_versions(project_id, up_to_run_id=run_id)}

    @app.post("/alignment/benchmark")
    def benchmark(body: BenchmarkBody):
        return studio.benchmark(
            body.model_ids, body.rounds, body.cohort_size, body.seed
        )

    return app
