"""Fixed vocabularies used across the studio.

These enumerations are closed by design: schemas, the mock provider, and the
analytics all validate against them.
"""

from __future__ import annotations

CHART_TYPES = (
    "bar",
    "stacked_bar",
    "line",
    "area",
    "pie",
    "scatterplot",
    "bubble",
    "histogram",
    "choropleth",
    "treemap",
)

MISLEADERS = (
    "truncated_axis",
    "inappropriate_scale_range",
    "inverted_axis",
    "non_linear_scale",
    "cherry_picking",
    "misleading_color",
    "missing_baseline",
)

KNOWLEDGE_POINTS = (
    "retrieve_value",
    "find_extremum",
    "determine_range",
    "compare_values",
    "find_trend",
    "find_correlation",
    "make_proportion_judgment",
    "identify_misleader",
)

COLOR_SCHEMES = ("categorical", "sequential", "diverging", "auto")

DISTRACTOR_STRATEGIES = ("near_value", "wrong_encoding", "axis_confusion", "mixed")

MAJORS = ("computer_science", "design", "business", "other")

EDUCATION_YEARS = ("freshman", "sophomore", "junior", "senior", "graduate")

TRAIT_KEYS = (
    "logical_reasoning",
    "visual_processing",
    "critical_thinking",
    "working_memory",
    "attention_to_detail",
    "motivation",
)

PROFILE_KNOWLEDGE_KEYS = (
    "bar_line_reading",
    "proportion_charts",
    "axis_scale_interpretation",
    "misleader_awareness",
    "data_statistics_literacy",
)

RATING_KEYS = (
    "context_clarity",
    "chart_complexity",
    "data_difficulty",
    "visual_encoding_complexity",
    "overall_cognitive_challenge",
    "hint_dependency",
)

# Stacked-bar rows in the simulation dashboard: one row rates the question
# stem, the other rates the chart settings.
STEM_RATING_KEYS = ("context_clarity", "overall_cognitive_challenge", "hint_dependency")
CHART_RATING_KEYS = ("chart_complexity", "data_difficulty", "visual_encoding_complexity")
