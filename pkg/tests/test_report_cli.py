import csv
import json

from click.testing import CliRunner

from quizstudio.cli import main
from quizstudio.report import distribution_csv, write_report
from quizstudio.students import CohortSpec


def run_project(studio):
    studio.create_project("Demo")
    studio.generate_question("p1", {"chart_type": "bar"})
    studio.generate_cohort("p1", CohortSpec(size=8, seed=1))
    doc = studio.run_simulation("p1", "v1", seed=1)
    return doc["id"]


class TestReport:
    def test_all_artifacts_written(self, studio, tmp_path):
        rid = run_project(studio)
        out = tmp_path / "report"
        written = write_report(studio, "p1", rid, out)
        assert set(written) == {
            "sankey.json",
            "strategies.json",
            "version_stats.json",
            "distribution.csv",
            "accuracy_by_version.svg",
            "ratings_by_cluster.svg",
        }
        sankey = json.loads((out / "sankey.json").read_text())
        assert sankey["total"] == 8
        svg = (out / "accuracy_by_version.svg").read_text()
        assert svg.lstrip().startswith("<?xml") and "<svg" in svg

    def test_distribution_csv_shape(self, studio, tmp_path):
        rid = run_project(studio)
        text = distribution_csv(studio.distribution("p1", rid))
        rows = list(csv.DictReader(text.splitlines()))
        assert rows and set(rows[0]) == {"option", "cluster", "count", "share"}
        total = sum(int(r["count"]) for r in rows)
        assert total == 8


class TestCli:
    def test_generate_simulate_report(self, tmp_path, monkeypatch):
        monkeypatch.setenv("QUIZSTUDIO_DATA_DIR", str(tmp_path / "data"))
        runner = CliRunner()

        result = runner.invoke(
            main,
            ["generate", "--project", "p1", "--text", "an easy bar chart"],
        )
        assert result.exit_code == 0, result.output
        version = json.loads(result.output)
        assert version["id"] == "v1"
        assert version["features"]["chart_type"] == "bar"

        result = runner.invoke(
            main,
            ["simulate", "--project", "p1", "--version", "v1", "--size", "6", "--seed", "2"],
        )
        assert result.exit_code == 0, result.output
        assert "run r1:" in result.output and "/6 correct" in result.output

        out = tmp_path / "report"
        result = runner.invoke(
            main, ["report", "--project", "p1", "--run", "r1", "--out", str(out)]
        )
        assert result.exit_code == 0, result.output
        assert (out / "distribution.csv").exists()
        assert (out / "accuracy_by_version.svg").exists()

    def test_generate_with_features_file(self, tmp_path, monkeypatch):
        monkeypatch.setenv("QUIZSTUDIO_DATA_DIR", str(tmp_path / "data"))
        features_file = tmp_path / "features.json"
        features_file.write_text(json.dumps({"chart_type": "pie", "difficulty_target": 2}))
        result = CliRunner().invoke(
            main,
            ["generate", "--project", "p1", "--features-file", str(features_file)],
        )
        assert result.exit_code == 0, result.output
        assert json.loads(result.output)["features"]["chart_type"] == "pie"

    def test_bench_alignment(self, tmp_path, monkeypatch):
        monkeypatch.setenv("QUIZSTUDIO_DATA_DIR", str(tmp_path / "data"))
        result = CliRunner().invoke(
            main,
            ["bench-alignment", "--models", "gpt-4o", "--cohort-size", "3"],
        )
        assert result.exit_code == 0, result.output
        report = json.loads(result.output)
        assert report["gpt-4o"]["n_students"] == 3

    def test_generate_requires_input(self, tmp_path, monkeypatch):
        monkeypatch.setenv("QUIZSTUDIO_DATA_DIR", str(tmp_path / "data"))
        result = CliRunner().invoke(main, ["generate", "--project", "p1"])
        assert result.exit_code != 0
