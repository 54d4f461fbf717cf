import json

import pytest

from quizstudio.errors import GenerationFailed, InvalidRequest, NoData, NoOpRevision
from quizstudio.features import default_features
from quizstudio.pipeline import (
    InstructorInput,
    QuestionVersion,
    validate_question,
)


def make_question(**overrides) -> QuestionVersion:
    attrs = dict(
        id="v1",
        parent_id=None,
        features=default_features(),
        stem="Which Category has the highest Value?",
        options=[("A", "a"), ("B", "b"), ("C", "c"), ("D", "d")],
        correct_label="B",
        explanation="B is tallest.",
        chart_script="const x = data.map(d => d.Category);\n",
        chart_csv="Category,Value\na,1\nb,2\n",
        chart_image_ref=None,
        created_at="2024-01-01T00:00:01Z",
    )
    attrs.update(overrides)
    return QuestionVersion(**attrs)


class TestInstructorInput:
    def test_needs_text_or_image(self):
        with pytest.raises(InvalidRequest):
            InstructorInput().validate()
        InstructorInput(text="x").validate()
        InstructorInput(image="aGk=").validate()


class TestValidateQuestion:
    def test_clean_question_passes(self):
        report = validate_question(make_question())
        assert report.ok and report.auto_pass

    @pytest.mark.parametrize(
        "overrides,code",
        [
            ({"correct_label": "E"}, "no_correct"),
            (
                {"options": [("A", "a"), ("A", "b"), ("C", "c"), ("D", "d")],
                 "correct_label": "A"},
                "duplicate_label",
            ),
            (
                {"options": [("A", "a"), ("C", "b"), ("D", "c"), ("E", "d")],
                 "correct_label": "A"},
                "label_sequence",
            ),
            (
                {"options": [("A", "a"), ("B", "b"), ("C", "c")]},
                "option_count_mismatch",
            ),
            ({"chart_csv": "Category,Value\na\n"}, "ragged_csv"),
            ({"chart_csv": ""}, "ragged_csv"),
            (
                {"chart_script": "const nothing = 1;\n"},
                "script_data_mismatch",
            ),
            ({"stem": "   "}, "empty_stem"),
            ({"explanation": ""}, "empty_explanation"),
        ],
    )
    def test_each_violation_code(self, overrides, code):
        report = validate_question(make_question(**overrides))
        assert code in [c for c, _ in report.violations]

    def test_round_trip(self):
        q = make_question()
        assert QuestionVersion.from_dict(q.to_dict()).to_dict() == q.to_dict()


class TestAnalyzeRequirements:
    def test_keyword_extraction(self, studio):
        studio.create_project("Demo")
        features = studio.analyze_requirements(
            "p1",
            InstructorInput(
                text="A bar chart question to retrieve and compare values,"
                " not overly straightforward."
            ),
        )
        assert features.chart_type == "bar"
        assert set(features.knowledge_points) == {"retrieve_value", "compare_values"}
        assert features.difficulty_target == 4

    def test_overrides_beat_extraction(self, studio):
        studio.create_project("Demo")
        features = studio.analyze_requirements(
            "p1",
            InstructorInput(
                text="an easy pie chart about proportions",
                feature_overrides={"difficulty_target": 5},
            ),
        )
        assert features.chart_type == "pie"
        assert features.difficulty_target == 5


class TestGenerate:
    def test_generates_valid_version(self, studio):
        studio.create_project("Demo")
        version = studio.generate_question("p1", {"chart_type": "bar"})
        assert version.id == "v1" and version.parent_id is None
        assert validate_question(version).ok
        assert len(version.options) == 4
        assert version.correct_label in [l for l, _ in version.options]
        # persisted alongside raw chart assets
        vdir = studio.store.root / "projects/p1/versions/v1"
        assert (vdir / "version.json").exists()
        assert (vdir / "chart.js").read_text() == version.chart_script
        assert (vdir / "data.csv").read_text() == version.chart_csv

    def test_distractor_count_respected(self, studio):
        studio.create_project("Demo")
        version = studio.generate_question(
            "p1", {"chart_type": "bar", "distractor_count": 4}
        )
        assert len(version.options) == 5

    def test_corrective_regeneration_recovers(self, studio):
        studio.create_project("Demo")
        # schema-valid but structurally wrong: no option carries the correct label
        bad = json.dumps(
            {
                "stem": "s",
                "options": [
                    {"label": "A", "text": "w"},
                    {"label": "B", "text": "x"},
                    {"label": "C", "text": "y"},
                    {"label": "D", "text": "z"},
                ],
                "correct_label": "E",
                "explanation": "e",
            }
        )
        studio.gateway.provider.script("qa_generation", bad, None)
        version = studio.generate_question("p1", {"chart_type": "bar"})
        assert validate_question(version).ok

    def test_generation_failed_after_retry(self, studio):
        studio.create_project("Demo")
        # schema-valid but structurally wrong: no option carries the correct label
        bad = json.dumps(
            {
                "stem": "s",
                "options": [
                    {"label": "A", "text": "w"},
                    {"label": "B", "text": "x"},
                    {"label": "C", "text": "y"},
                    {"label": "D", "text": "z"},
                ],
                "correct_label": "E",
                "explanation": "e",
            }
        )
        studio.gateway.provider.script("qa_generation", bad, bad)
        with pytest.raises(GenerationFailed):
            studio.generate_question("p1", {"chart_type": "bar"})
        # the failed attempt still lands in the reliability log
        stats = studio.reliability_stats("p1")
        assert stats["gen_pass_rate"] == 0.0


class TestRevise:
    def test_noop_revision_rejected(self, studio):
        studio.create_project("Demo")
        studio.generate_question("p1", {"chart_type": "bar"})
        with pytest.raises(NoOpRevision):
            studio.revise_question("p1", "v1")

    def test_revision_chains_parent(self, studio):
        studio.create_project("Demo")
        v1 = studio.generate_question("p1", {"chart_type": "bar"})
        v2 = studio.revise_question("p1", "v1", revision_prompt="add a hint")
        assert v2.id == "v2" and v2.parent_id == "v1"
        assert v2.stem != v1.stem  # the hint materially changes the stem
        project = studio.get_project("p1")
        assert project["version_ids"] == ["v1", "v2"]

    def test_chart_type_delta_reretrieves(self, studio):
        studio.create_project("Demo")
        v1 = studio.generate_question("p1", {"chart_type": "bar"})
        v2 = studio.revise_question(
            "p1", "v1", feature_deltas={"chart_type": "line"}
        )
        assert v2.features.chart_type == "line"
        assert v2.chart_script != v1.chart_script

    def test_feature_delta_without_chart_change_keeps_continuity(self, studio):
        studio.create_project("Demo")
        v1 = studio.generate_question("p1", {"chart_type": "bar"})
        v2 = studio.revise_question(
            "p1", "v1", feature_deltas={"difficulty_target": 5}
        )
        # same template lineage: the stem derives from the previous stem
        assert v1.stem.split("?")[0] in v2.stem


class TestReliability:
    def test_no_attempts_raises(self, studio):
        studio.create_project("Demo")
        with pytest.raises(NoData):
            studio.reliability_stats("p1")

    def test_stats_after_session(self, studio):
        studio.create_project("Demo")
        studio.generate_question("p1", {"chart_type": "bar"})
        studio.revise_question("p1", "v1", revision_prompt="harder")
        stats = studio.reliability_stats("p1")
        assert stats["gen_pass_rate"] == 1.0
        assert stats["rev_pass_rate"] == 1.0
        assert stats["gen_mean_s"] > 0
        assert stats["rev_mean_s"] > 0
