import random
import sys

import pytest

from quizstudio.clock import LogicalClock
from quizstudio.config import AppConfig
from quizstudio.gateway import Gateway
from quizstudio.gateway.types import GatewayConfig
from quizstudio.reasoning import CanonicalTrace, StrategyStep
from quizstudio.students import StudentProfile
from quizstudio.studio import Studio

PROFILE_DEFAULTS = dict(
    age=20,
    major="computer_science",
    education_year="sophomore",
    prior_vis_coursework=False,
    logical_reasoning=3,
    visual_processing=3,
    critical_thinking=3,
    working_memory=3,
    attention_to_detail=3,
    motivation=3,
    bar_line_reading=3,
    proportion_charts=3,
    axis_scale_interpretation=3,
    misleader_awareness=3,
    data_statistics_literacy=3,
)


def make_profile(profile_id="s001", **overrides) -> StudentProfile:
    attrs = dict(PROFILE_DEFAULTS)
    attrs.update(overrides)
    return StudentProfile(id=profile_id, **attrs)


def make_trace(labels, profile_id="s001", cluster=0, selected="A", tokens=None):
    tokens = tokens or [1] * len(labels)
    return CanonicalTrace(
        profile_id=profile_id,
        cluster_index=cluster,
        selected_label=selected,
        steps=tuple(
            StrategyStep(canonical_label=l, token_count=t)
            for l, t in zip(labels, tokens)
        ),
    )


def random_profile(rng: random.Random, profile_id: str) -> StudentProfile:
    from quizstudio import taxonomy

    attrs = dict(
        age=rng.randint(18, 30),
        major=rng.choice(taxonomy.MAJORS),
        education_year=rng.choice(taxonomy.EDUCATION_YEARS),
        prior_vis_coursework=rng.random() < 0.5,
    )
    for key in taxonomy.TRAIT_KEYS + taxonomy.PROFILE_KNOWLEDGE_KEYS:
        attrs[key] = rng.randint(1, 5)
    return StudentProfile(id=profile_id, **attrs)


@pytest.fixture
def gateway():
    return Gateway(GatewayConfig(provider="mock"))


@pytest.fixture
def clock():
    return LogicalClock()


@pytest.fixture
def studio(tmp_path):
    return Studio(AppConfig(data_dir=str(tmp_path / "data")))


@pytest.fixture
def studio_factory(tmp_path):
    def make(name="data", **overrides):
        return Studio(AppConfig(data_dir=str(tmp_path / name), **overrides))

    return make


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Echo the acceptance verdict lines uncaptured, one per criterion."""
    module = sys.modules.get("test_acceptance")
    verdicts = getattr(module, "VERDICTS", None) if module else None
    if not verdicts:
        return
    terminalreporter.ensure_newline()
    for line in verdicts:
        terminalreporter.write_line(line)
