"""Command-line entry points for the studio."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .config import AppConfig
from .errors import QuizStudioError
from .pipeline import InstructorInput
from .students import CohortSpec
from .studio import Studio


def _studio(config_path: str | None) -> Studio:
    return Studio(AppConfig.load(config_path))


def _echo_json(obj) -> None:
    click.echo(json.dumps(obj, indent=2, sort_keys=True))


@click.group()
def main() -> None:
    """Author visualization-literacy questions and preview them on a
    simulated student cohort."""


@main.command()
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--config", "config_path", default=None, type=click.Path(exists=True))
def serve(port: int, host: str, config_path: str | None) -> None:
    """Start the HTTP API."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(config=AppConfig.load(config_path)), host=host, port=port)


@main.command()
@click.option("--project", required=True)
@click.option("--text", default="", help="Instructor requirement in plain language.")
@click.option("--features-file", default=None, type=click.Path(exists=True))
@click.option("--config", "config_path", default=None, type=click.Path(exists=True))
def generate(project: str, text: str, features_file: str | None, config_path: str | None) -> None:
    """Generate a question version for a project."""
    studio = _studio(config_path)
    try:
        studio.get_project(project)
    except QuizStudioError:
        studio.create_project(project, project)
    if features_file:
        features = json.loads(Path(features_file).read_text())
    elif text:
        features = studio.analyze_requirements(
            project, InstructorInput(text=text)
        ).to_dict()
    else:
        raise click.UsageError("provide --text or --features-file")
    version = studio.generate_question(project, features)
    _echo_json(version.to_dict())


@main.command()
@click.option("--project", required=True)
@click.option("--version", "version_id", required=True)
@click.option("--cohort-file", default=None, type=click.Path(exists=True),
              help="CSV roster; omitted = generate a default cohort of 20.")
@click.option("--size", default=20, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--config", "config_path", default=None, type=click.Path(exists=True))
def simulate(project: str, version_id: str, cohort_file: str | None,
             size: int, seed: int, config_path: str | None) -> None:
    """Run the simulated cohort against a question version."""
    studio = _studio(config_path)
    if cohort_file:
        studio.import_roster(project, Path(cohort_file).read_text())
    elif not studio.get_cohort(project):
        studio.generate_cohort(project, CohortSpec(size=size, seed=seed))
    doc = studio.run_simulation(project, version_id, seed=seed)
    correct = sum(1 for r in doc["responses"] if r["correct"])
    click.echo(f"run {doc['id']}: {correct}/{len(doc['responses'])} correct")


@main.command()
@click.option("--project", required=True)
@click.option("--run", "run_id", required=True)
@click.option("--out", default="report", show_default=True, type=click.Path())
@click.option("--config", "config_path", default=None, type=click.Path(exists=True))
def report(project: str, run_id: str, out: str, config_path: str | None) -> None:
    """Write analytics files and figures for a finished run."""
    from .report import write_report

    studio = _studio(config_path)
    for name in write_report(studio, project, run_id, out):
        click.echo(f"wrote {Path(out) / name}")


@main.command("bench-alignment")
@click.option("--models", required=True, help="Comma-separated model ids.")
@click.option("--rounds", default=1, show_default=True)
@click.option("--cohort-size", default=20, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--config", "config_path", default=None, type=click.Path(exists=True))
def bench_alignment(models: str, rounds: int, cohort_size: int, seed: int,
                    config_path: str | None) -> None:
    """Score how faithfully each model plays the assigned personas."""
    studio = _studio(config_path)
    result = studio.benchmark(
        [m.strip() for m in models.split(",") if m.strip()],
        rounds, cohort_size, seed,
    )
    _echo_json(result)


def entrypoint() -> None:  # pragma: no cover
    try:
        main(standalone_mode=False)
    except QuizStudioError as exc:
        click.echo(f"error [{exc.code}]: {exc.message}", err=True)
        sys.exit(1)
    except click.ClickException as exc:
        exc.show()
        sys.exit(exc.exit_code)
    except click.exceptions.Abort:
        sys.exit(130)


if __name__ == "__main__":  # pragma: no cover
    entrypoint()
