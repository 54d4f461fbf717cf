import pytest

from quizstudio.errors import InvalidRequest
from quizstudio.features import DEFAULTS, McqFeatureSet, default_features


class TestDefaults:
    def test_all_fourteen_fields(self):
        assert len(McqFeatureSet.__dataclass_fields__) == 14

    def test_default_values(self):
        features = default_features()
        for name, value in DEFAULTS.items():
            got = getattr(features, name)
            if name == "knowledge_points":
                got = list(got)
            assert got == value, name


class TestValidation:
    @pytest.mark.parametrize(
        "overrides",
        [
            {"difficulty_target": 0},
            {"difficulty_target": 6},
            {"cognitive_complexity": 7},
            {"distractor_count": 0},
            {"chart_type": "donut"},
            {"misleader": "sneaky"},
            {"color_scheme": "rainbow"},
            {"distractor_strategy": "evil"},
            {"knowledge_points": ()},
            {"knowledge_points": ("unknown",)},
            {"context_domain": ""},
        ],
    )
    def test_rejects(self, overrides):
        with pytest.raises(InvalidRequest):
            default_features(**overrides)

    def test_cognitive_complexity_allows_bloom_six(self):
        assert default_features(cognitive_complexity=6).cognitive_complexity == 6


class TestMergeAndSerialize:
    def test_merged_overrides_win(self):
        merged = default_features().merged({"difficulty_target": 5, "chart_type": "pie"})
        assert merged.difficulty_target == 5
        assert merged.chart_type == "pie"
        assert merged.data_complexity == 3

    def test_merged_rejects_unknown_field(self):
        with pytest.raises(InvalidRequest):
            default_features().merged({"difficulty": 4})

    def test_round_trip(self):
        original = default_features(
            chart_type="line", knowledge_points=("find_trend", "compare_values")
        )
        restored = McqFeatureSet.from_dict(original.to_dict())
        assert restored.to_dict() == original.to_dict()

    def test_knowledge_points_serialized_sorted(self):
        features = default_features(knowledge_points=("find_trend", "compare_values"))
        assert features.to_dict()["knowledge_points"] == [
            "compare_values",
            "find_trend",
        ]
