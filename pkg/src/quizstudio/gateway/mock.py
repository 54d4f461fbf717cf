"""Deterministic offline provider.

Replies are a pure function of (schema id, prompt hash, seed). Tests can
pre-script replies or transport failures per schema id; unscripted requests
fall through to procedural generators that emit schema-valid JSON derived
from the tagged payload blocks embedded in the prompt.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import random
from collections import defaultdict, deque
from typing import Callable

from .. import assets, taxonomy
from ..errors import InvalidRequest
from . import blocks
from .types import LlmRequest, ProviderResult

EMBED_DIM = 32

PALETTES = [
    ["#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948"],
    ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02"],
    ["#a6cee3", "#1f78b4", "#b2df8a", "#33a02c", "#fb9a99", "#e31a1c"],
    ["#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462"],
    ["#66c2a5", "#fc8d62", "#8da0cb", "#e78ac3", "#a6d854", "#ffd92f"],
]

FILLER_OPTIONS = [
    "None of the above",
    "Cannot be determined from the chart",
    "They are all equal",
    "About the same",
]

# (cue, chart_type); checked in order so longer cues win.
CHART_TYPE_CUES = [
    ("stacked bar", "stacked_bar"),
    ("stacked_bar", "stacked_bar"),
    ("scatterplot", "scatterplot"),
    ("scatter", "scatterplot"),
    ("choropleth", "choropleth"),
    ("treemap", "treemap"),
    ("histogram", "histogram"),
    ("bubble", "bubble"),
    ("pie", "pie"),
    ("area", "area"),
    ("line", "line"),
    ("bar", "bar"),
]

KNOWLEDGE_CUES = [
    ("retriev", "retrieve_value"),
    ("read off", "retrieve_value"),
    ("compar", "compare_values"),
    ("extremum", "find_extremum"),
    ("maximum", "find_extremum"),
    ("minimum", "find_extremum"),
    ("largest", "find_extremum"),
    ("smallest", "find_extremum"),
    ("range", "determine_range"),
    ("trend", "find_trend"),
    ("correlat", "find_correlation"),
    ("proportion", "make_proportion_judgment"),
    ("percentage", "make_proportion_judgment"),
    ("mislead", "identify_misleader"),
]

MISLEADER_CUES = [
    ("truncat", "truncated_axis"),
    ("invert", "inverted_axis"),
    ("log scale", "non_linear_scale"),
    ("non-linear", "non_linear_scale"),
    ("nonlinear", "non_linear_scale"),
    ("cherry", "cherry_picking"),
    ("misleading color", "misleading_color"),
    ("baseline", "missing_baseline"),
    ("non-zero", "inappropriate_scale_range"),
    ("scale range", "inappropriate_scale_range"),
]

HARD_CUES = ["not overly straightforward", "challenging", "difficult", "hard", "tricky"]
EASY_CUES = ["easy", "simple", "straightforward", "warm-up"]

BLOOM_CUES = [
    ("create", 6),
    ("evaluat", 5),
    ("analy", 4),
    ("apply", 3),
    ("understand", 2),
    ("remember", 1),
]

DOMAIN_CUES = [
    ("sales", "business"),
    ("revenue", "business"),
    ("climate", "climate"),
    ("temperature", "climate"),
    ("weather", "climate"),
    ("health", "health"),
    ("hospital", "health"),
    ("sport", "sports"),
    ("population", "demographics"),
]


def prompt_hash(request: LlmRequest) -> str:
    h = hashlib.sha256()
    h.update(request.model_id.encode())
    h.update(b"\x00")
    h.update(request.system_prompt.encode())
    h.update(b"\x00")
    h.update(request.user_prompt.encode())
    h.update(b"\x00")
    h.update((request.image or "").encode())
    return h.hexdigest()


def _parse_csv(text: str) -> tuple[list[str], list[list[str]]]:
    rows = list(csv.reader(io.StringIO(text.strip())))
    if not rows:
        return [], []
    return rows[0], rows[1:]


def _is_number(cell: str) -> bool:
    try:
        float(cell)
        return True
    except ValueError:
        return False


def _csv_stats(text: str) -> dict:
    header, rows = _parse_csv(text)
    stats = {
        "category_col": header[0] if header else "category",
        "value_col": header[1] if len(header) > 1 else "value",
        "categories": [],
        "values": [],
        "n_rows": len(rows),
    }
    value_idx = 1
    for idx in range(1, len(header)):
        if rows and all(_is_number(r[idx]) for r in rows if len(r) > idx):
            value_idx = idx
            stats["value_col"] = header[idx]
            break
    for r in rows:
        if not r:
            continue
        stats["categories"].append(r[0])
        if len(r) > value_idx and _is_number(r[value_idx]):
            stats["values"].append(float(r[value_idx]))
    vals = stats["values"] or [0.0]
    imax = vals.index(max(vals))
    imin = vals.index(min(vals))
    cats = stats["categories"] or ["unknown"]
    stats.update(
        max_value=max(vals),
        min_value=min(vals),
        max_category=cats[min(imax, len(cats) - 1)],
        min_category=cats[min(imin, len(cats) - 1)],
    )
    return stats


def _fmt_num(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else f"{x:.1f}"


def _render(template: str, stats: dict, extra: dict | None = None) -> str:
    mapping = {
        "category_col": stats["category_col"],
        "value_col": stats["value_col"],
        "max_category": stats["max_category"],
        "min_category": stats["min_category"],
        "max_value": _fmt_num(stats["max_value"]),
        "min_value": _fmt_num(stats["min_value"]),
        "n_rows": str(stats["n_rows"]),
    }
    if extra:
        mapping.update(extra)
    out = template
    for key, val in mapping.items():
        out = out.replace("{" + key + "}", val)
    return out


def _clamp(v: int, lo: int = 1, hi: int = 5) -> int:
    return max(lo, min(hi, v))


class MockProvider:
    def __init__(self, registry=None, seed: int = 0):
        self.registry = registry
        self.seed = seed
        self._scripts: dict[str, deque] = defaultdict(deque)
        self._fixtures: dict[tuple[str, str, int], str] = {}
        self._generators: dict[str, Callable] = {
            "feature_extraction": self._gen_features,
            "chart_customization": self._gen_chart,
            "qa_generation": self._gen_qa,
            "student_profile": self._gen_profile,
            "student_response": self._gen_response,
            "trace_canonicalization": self._gen_canonical,
            "embedding": self._gen_embedding,
        }

    # -- test scripting ------------------------------------------------------

    def script(self, schema_id: str, *entries) -> None:
        """Queue raw reply texts or exceptions for a schema id.

        ``None`` entries fall through to the procedural generator.
        """
        self._scripts[schema_id].extend(entries)

    def add_fixture(self, request: LlmRequest, text: str) -> None:
        key = (request.response_schema_id, prompt_hash(request), self._seed_of(request))
        self._fixtures[key] = text

    # -- provider interface --------------------------------------------------

    def generate(self, request: LlmRequest) -> ProviderResult:
        sid = request.response_schema_id
        queue = self._scripts.get(sid)
        if queue:
            entry = queue.popleft()
            if isinstance(entry, Exception):
                raise entry
            if entry is not None:
                return self._result(entry)
        key = (sid, prompt_hash(request), self._seed_of(request))
        if key in self._fixtures:
            return self._result(self._fixtures[key])
        gen = self._generators.get(sid)
        if gen is None:
            raise InvalidRequest(f"mock provider has no generator for schema {sid}")
        rng = random.Random("|".join(map(str, key)))
        payload = gen(request, rng)
        return self._result(json.dumps(payload, sort_keys=True))

    def _seed_of(self, request: LlmRequest) -> int:
        return self.seed if request.seed is None else request.seed

    @staticmethod
    def _result(text: str) -> ProviderResult:
        return ProviderResult(
            text=text,
            completion_tokens=len(text.split()),
            latency_ms=5 + len(text) % 20,
        )

    # -- procedural generators ----------------------------------------------

    def _gen_features(self, request: LlmRequest, rng: random.Random) -> dict:
        text = blocks.extract_block(request.user_prompt, blocks.INSTRUCTOR_TEXT)
        text = (text or request.user_prompt).lower()

        chart_type = next((ct for cue, ct in CHART_TYPE_CUES if cue in text), None)
        knowledge = []
        for cue, kp in KNOWLEDGE_CUES:
            if cue in text and kp not in knowledge:
                knowledge.append(kp)
        misleader = next((m for cue, m in MISLEADER_CUES if cue in text), None)
        if misleader is None and "mislead" in text:
            misleader = "truncated_axis"

        if any(cue in text for cue in HARD_CUES):
            difficulty = 4
        elif any(cue in text for cue in EASY_CUES):
            difficulty = 2
        else:
            difficulty = 3

        bloom = next((lvl for cue, lvl in BLOOM_CUES if cue in text), 3)
        domain = next((d for cue, d in DOMAIN_CUES if cue in text), "general")

        import re

        m = re.search(r"(\d+)\s+distractor", text)
        distractors = _clamp(int(m.group(1))) if m else 3

        return {
            "cognitive_complexity": bloom,
            "context_domain": domain,
            "context_richness": 3,
            "difficulty_target": difficulty,
            "chart_type": chart_type,
            "data_complexity": 3,
            "color_scheme": "auto",
            "misleader": misleader,
            "embellishment_level": 3,
            "distractor_count": distractors,
            "plausibility": 4 if difficulty >= 4 else 3,
            "distractor_strategy": "mixed",
            "knowledge_points": knowledge or ["retrieve_value"],
            "hint_presence": "hint" in text,
        }

    def _gen_chart(self, request: LlmRequest, rng: random.Random) -> dict:
        script = blocks.extract_block(request.user_prompt, blocks.CHART_SCRIPT) or ""
        csv_text = blocks.extract_block(request.user_prompt, blocks.CSV) or "x,y\na,1\n"
        if not script:
            script = "// generated chart\nconst data = loadCsv();\ndrawBars(data);\n"

        import re

        palette = rng.choice(PALETTES)
        seen: dict[str, str] = {}

        def recolor(m: re.Match) -> str:
            tok = m.group(0)
            if tok not in seen:
                seen[tok] = palette[len(seen) % len(palette)]
            return seen[tok]

        new_script = re.sub(r"#[0-9a-fA-F]{6}", recolor, script)

        header, rows = _parse_csv(csv_text)
        out_rows = [header]
        for row in rows:
            new_row = []
            for cell in row:
                if _is_number(cell):
                    val = float(cell) * rng.uniform(0.8, 1.2)
                    if "." not in cell:
                        new_row.append(str(max(1, round(val))))
                    else:
                        new_row.append(f"{val:.1f}")
                else:
                    new_row.append(cell)
            out_rows.append(new_row)
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(out_rows)
        return {"chart_script": new_script, "csv": buf.getvalue()}

    def _gen_qa(self, request: LlmRequest, rng: random.Random) -> dict:
        qa = blocks.extract_json_block(request.user_prompt, blocks.QA_TEMPLATE) or {}
        csv_text = blocks.extract_block(request.user_prompt, blocks.CSV) or "x,y\na,1\n"
        features = blocks.extract_json_block(request.user_prompt, blocks.FEATURES) or {}
        revision = blocks.extract_block(request.user_prompt, blocks.REVISION_PROMPT)

        stats = _csv_stats(csv_text)
        stem = _render(
            qa.get("stem_template", "According to the chart, which {category_col} has the highest {value_col}?"),
            stats,
        )
        if features.get("hint_presence"):
            stem += " (Hint: check the axis scale carefully.)"
        if revision:
            if "hint" in revision.lower() and "Hint:" not in stem:
                stem += " (Hint: look closely at how the axis is drawn.)"
            else:
                stem += " Examine the chart closely before answering."

        correct_text = _render(qa.get("answer_template", "{max_category}"), stats)
        pool_kind = qa.get("distractor_pool", "categories")
        if pool_kind == "values":
            base = stats["max_value"] if "{max_value}" in qa.get("answer_template", "") else stats["min_value"]
            pool = [_fmt_num(base * f) for f in (0.5, 1.5, 2.0, 0.75, 1.25)]
        else:
            pool = [c for c in stats["categories"]]
        pool = [p for p in dict.fromkeys(pool) if p != correct_text]
        pool.extend(f for f in FILLER_OPTIONS if f not in pool)

        n_options = int(features.get("distractor_count", 3)) + 1
        distractors = pool[: n_options - 1]
        correct_pos = rng.randrange(n_options)
        texts = distractors[:correct_pos] + [correct_text] + distractors[correct_pos:]
        labels = [chr(ord("A") + i) for i in range(n_options)]
        options = [{"label": l, "text": t} for l, t in zip(labels, texts)]

        explanation = _render(
            qa.get("explanation_template", "Reading the chart shows that {answer} is the right choice."),
            stats,
            {"answer": correct_text},
        )
        return {
            "stem": stem,
            "options": options,
            "correct_label": labels[correct_pos],
            "explanation": explanation,
        }

    def _gen_profile(self, request: LlmRequest, rng: random.Random) -> dict:
        assigned = blocks.extract_json_block(request.user_prompt, blocks.ASSIGNED) or {}
        level = lambda: rng.choice([1, 2, 2, 3, 3, 3, 4, 4, 5])  # noqa: E731
        profile = {
            "age": rng.randint(18, 27),
            "major": rng.choice(taxonomy.MAJORS),
            "education_year": rng.choice(taxonomy.EDUCATION_YEARS),
            "prior_vis_coursework": rng.random() < 0.4,
        }
        for key in taxonomy.TRAIT_KEYS + taxonomy.PROFILE_KNOWLEDGE_KEYS:
            profile[key] = level()
        profile.update(assigned)
        return profile

    def _gen_response(self, request: LlmRequest, rng: random.Random) -> dict:
        profile = blocks.extract_json_block(request.user_prompt, blocks.PROFILE) or {}
        question = blocks.extract_json_block(request.user_prompt, blocks.QUESTION) or {}
        ctx = request.context or {}

        labels = [o["label"] for o in question.get("options", [])] or ["A", "B"]
        correct_label = ctx.get("correct_label") or labels[0]

        knowledge = [profile.get(k, 3) for k in taxonomy.PROFILE_KNOWLEDGE_KEYS]
        ability = (sum(knowledge) / len(knowledge) - 1) / 4
        difficulty = int(ctx.get("difficulty_target", 3))
        p = 0.35 + 0.6 * ability - 0.08 * (difficulty - 3)
        if ctx.get("misleader"):
            awareness = (profile.get("misleader_awareness", 3) - 1) / 4
            p -= 0.25 * (1 - awareness)
        if ctx.get("hint_presence"):
            p += 0.1
        p = max(0.05, min(0.97, p))

        if rng.random() < p:
            selected = correct_label
        else:
            wrong = [l for l in labels if l != correct_label] or labels
            selected = rng.choice(wrong)

        families = assets.strategy_families()
        family = (
            "visual_first"
            if profile.get("visual_processing", 3) >= profile.get("logical_reasoning", 3)
            else "logic_first"
        )
        seq = list(rng.choice(families[family]))
        if ctx.get("misleader") and profile.get("misleader_awareness", 3) >= 4:
            seq.insert(len(seq) - 1, "note_misleader")
        if profile.get("attention_to_detail", 3) <= 2 or profile.get("motivation", 3) <= 2:
            seq = seq[:3]
        elif profile.get("attention_to_detail", 3) >= 4 and "double_check_answer" not in seq:
            seq.append("double_check_answer")

        phrases = assets.step_vocabulary()["step_phrases"]
        steps = [phrases[label] for label in seq]

        jitter = lambda: rng.randint(-1, 1)  # noqa: E731
        data_complexity = int(ctx.get("data_complexity", 3))
        ratings = {
            "context_clarity": _clamp(6 - difficulty + jitter()),
            "chart_complexity": _clamp(data_complexity + jitter()),
            "data_difficulty": _clamp(difficulty + jitter()),
            "visual_encoding_complexity": _clamp(data_complexity + jitter()),
            "overall_cognitive_challenge": _clamp(difficulty + jitter()),
            "hint_dependency": _clamp((4 if ctx.get("hint_presence") else 2) + jitter()),
        }
        return {"selected_label": selected, "steps": steps, "ratings": ratings}

    def _gen_canonical(self, request: LlmRequest, rng: random.Random) -> dict:
        steps = blocks.extract_json_block(request.user_prompt, blocks.STEPS) or []
        vocab = assets.step_vocabulary()
        labels = [self._lookup_label(s, vocab) for s in steps]
        return {"labels": labels or [vocab["fallback_label"]]}

    @staticmethod
    def _lookup_label(step: str, vocab: dict) -> str:
        low = step.lower()
        for keyword, label in vocab["keyword_map"]:
            if keyword in low:
                return label
        return vocab["fallback_label"]

    def _gen_embedding(self, request: LlmRequest, rng: random.Random) -> dict:
        text = blocks.extract_block(request.user_prompt, blocks.TEXT)
        if text is None:
            text = request.user_prompt
        vec = [0.0] * EMBED_DIM
        for token in text.lower().split():
            digest = hashlib.sha256(token.encode()).digest()
            idx = digest[0] % EMBED_DIM
            sign = 1.0 if digest[1] % 2 == 0 else -1.0
            vec[idx] += sign
        norm = math.sqrt(sum(v * v for v in vec))
        if norm == 0:
            vec[0] = 1.0
            norm = 1.0
        return {"vector": [round(v / norm, 6) for v in vec]}
