"""Tagged prompt blocks.

Prompts embed structured payloads (scripts, CSVs, profiles) between explicit
delimiters. A remote model reads them as labelled context; the offline mock
provider parses them back out to compute its deterministic reply.
"""

from __future__ import annotations

import json
import re


def block(tag: str, content: str) -> str:
    return f"[[{tag}]]\n{content}\n[[/{tag}]]"


def json_block(tag: str, payload) -> str:
    return block(tag, json.dumps(payload, sort_keys=True))


def extract_block(text: str, tag: str) -> str | None:
    m = re.search(
        rf"\[\[{re.escape(tag)}\]\]\n(.*?)\n\[\[/{re.escape(tag)}\]\]",
        text,
        re.DOTALL,
    )
    return m.group(1) if m else None


def extract_json_block(text: str, tag: str):
    raw = extract_block(text, tag)
    return None if raw is None else json.loads(raw)


# Tag names shared between prompt builders and the mock provider.
INSTRUCTOR_TEXT = "INSTRUCTOR_TEXT"
CHART_SCRIPT = "CHART_SCRIPT"
CSV = "CSV"
FEATURES = "FEATURES"
QA_TEMPLATE = "QA_TEMPLATE"
REVISION_PROMPT = "REVISION_PROMPT"
PREVIOUS_QA = "PREVIOUS_QA"
ASSIGNED = "ASSIGNED"
PROFILE = "PROFILE"
QUESTION = "QUESTION"
STEPS = "STEPS"
TEXT = "TEXT"
