#!/usr/bin/env python3
"""Regenerates the seed template bundle under src/quizstudio/data/seed_bundle.

Each template directory holds chart.js, data.csv, qa.json, meta.json.
Chart scripts run against the renderer's sandbox globals: d3, data (parsed
CSV rows), svg (root selection), width, height.
"""

from __future__ import annotations

import json
import shutil
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1] / "src" / "quizstudio" / "data" / "seed_bundle"

AXES = """\
const margin = {top: 20, right: 20, bottom: 40, left: 50};
const w = width - margin.left - margin.right;
const h = height - margin.top - margin.bottom;
const g = svg.append("g").attr("transform", `translate(${margin.left},${margin.top})`);
"""


def bar_script(truncated: bool) -> str:
    ymin = 'd3.min(data, d => +d.Value) * 0.9' if truncated else "0"
    return AXES + f"""\
const x = d3.scaleBand().domain(data.map(d => d.Category)).range([0, w]).padding(0.2);
const y = d3.scaleLinear().domain([{ymin}, d3.max(data, d => +d.Value)]).range([h, 0]);
g.append("g").attr("class", "axis x-axis").attr("transform", `translate(0,${{h}})`).call(d3.axisBottom(x));
g.append("g").attr("class", "axis y-axis").call(d3.axisLeft(y));
g.selectAll("rect.bar").data(data).join("rect")
  .attr("class", "bar")
  .attr("x", d => x(d.Category))
  .attr("y", d => y(+d.Value))
  .attr("width", x.bandwidth())
  .attr("height", d => h - y(+d.Value))
  .attr("fill", "#4e79a7");
"""


def stacked_bar_script(missing_baseline: bool) -> str:
    note = "// no zero baseline gridline drawn\n" if missing_baseline else ""
    return AXES + note + """\
const keys = ["SeriesA", "SeriesB"];
const stacked = d3.stack().keys(keys)(data.map(d => ({Category: d.Category, SeriesA: +d.SeriesA, SeriesB: +d.SeriesB})));
const x = d3.scaleBand().domain(data.map(d => d.Category)).range([0, w]).padding(0.2);
const y = d3.scaleLinear().domain([0, d3.max(stacked[stacked.length - 1], d => d[1])]).range([h, 0]);
const color = d3.scaleOrdinal().domain(keys).range(["#4e79a7", "#f28e2b"]);
g.append("g").attr("class", "axis x-axis").attr("transform", `translate(0,${h})`).call(d3.axisBottom(x));
g.append("g").attr("class", "axis y-axis").call(d3.axisLeft(y));
g.selectAll("g.layer").data(stacked).join("g")
  .attr("class", "layer")
  .attr("fill", s => color(s.key))
  .selectAll("rect.bar").data(s => s).join("rect")
  .attr("class", "bar")
  .attr("x", d => x(d.data.Category))
  .attr("y", d => y(d[1]))
  .attr("width", x.bandwidth())
  .attr("height", d => y(d[0]) - y(d[1]));
"""


def line_script(scale_range: bool, area: bool = False, cherry: bool = False) -> str:
    ymin = 'd3.min(data, d => +d.Value) * 0.95' if scale_range else "0"
    rows = "data.slice(0, Math.max(3, data.length - 2))" if cherry else "data"
    shape = (
        'd3.area().x(d => x(d.Month)).y0(h).y1(d => y(+d.Value))'
        if area
        else 'd3.line().x(d => x(d.Month)).y(d => y(+d.Value))'
    )
    mark = "area" if area else "line"
    fill = "#76b7b2" if area else "none"
    stroke = "none" if area else "#e15759"
    return AXES + f"""\
const rows = {rows};
const x = d3.scalePoint().domain(rows.map(d => d.Month)).range([0, w]);
const y = d3.scaleLinear().domain([{ymin}, d3.max(rows, d => +d.Value)]).range([h, 0]);
g.append("g").attr("class", "axis x-axis").attr("transform", `translate(0,${{h}})`).call(d3.axisBottom(x));
g.append("g").attr("class", "axis y-axis").call(d3.axisLeft(y));
g.append("path").datum(rows)
  .attr("class", "{mark}")
  .attr("fill", "{fill}")
  .attr("stroke", "{stroke}")
  .attr("stroke-width", 2)
  .attr("d", {shape});
"""


def pie_script(misleading_color: bool) -> str:
    colors = (
        '["#d3d3d3", "#d62728", "#d3d3d3", "#d3d3d3", "#d3d3d3", "#d3d3d3"]'
        if misleading_color
        else '["#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948"]'
    )
    return f"""\
const radius = Math.min(width, height) / 2 - 20;
const g = svg.append("g").attr("transform", `translate(${{width / 2}},${{height / 2}})`);
const color = d3.scaleOrdinal().domain(data.map(d => d.Category)).range({colors});
const arcs = d3.pie().value(d => +d.Value)(data);
g.selectAll("path.slice").data(arcs).join("path")
  .attr("class", "slice")
  .attr("d", d3.arc().innerRadius(0).outerRadius(radius))
  .attr("fill", d => color(d.data.Category))
  .attr("stroke", "#ffffff");
"""


def scatter_script(inverted: bool) -> str:
    yrange = "[0, h]" if inverted else "[h, 0]"
    return AXES + f"""\
const x = d3.scaleLinear().domain(d3.extent(data, d => +d.X)).range([0, w]);
const y = d3.scaleLinear().domain(d3.extent(data, d => +d.Y)).range({yrange});
g.append("g").attr("class", "axis x-axis").attr("transform", `translate(0,${{h}})`).call(d3.axisBottom(x));
g.append("g").attr("class", "axis y-axis").call(d3.axisLeft(y));
g.selectAll("circle.dot").data(data).join("circle")
  .attr("class", "dot")
  .attr("cx", d => x(+d.X))
  .attr("cy", d => y(+d.Y))
  .attr("r", 4)
  .attr("fill", "#59a14f");
"""


def bubble_script(non_linear: bool) -> str:
    rscale = "d3.scaleLog().domain([1, d3.max(data, d => +d.Size)]).range([2, 24])" if non_linear else "d3.scaleSqrt().domain([0, d3.max(data, d => +d.Size)]).range([2, 24])"
    return AXES + f"""\
const x = d3.scaleLinear().domain(d3.extent(data, d => +d.X)).range([0, w]);
const y = d3.scaleLinear().domain(d3.extent(data, d => +d.Y)).range([h, 0]);
const r = {rscale};
g.append("g").attr("class", "axis x-axis").attr("transform", `translate(0,${{h}})`).call(d3.axisBottom(x));
g.append("g").attr("class", "axis y-axis").call(d3.axisLeft(y));
g.selectAll("circle.bubble").data(data).join("circle")
  .attr("class", "bubble")
  .attr("cx", d => x(+d.X))
  .attr("cy", d => y(+d.Y))
  .attr("r", d => r(+d.Size))
  .attr("fill", "#f28e2b")
  .attr("opacity", 0.7);
"""


def histogram_script(truncated: bool) -> str:
    ymin = 'd3.min(data, d => +d.Count) * 0.8' if truncated else "0"
    return AXES + f"""\
const x = d3.scaleBand().domain(data.map(d => d.Bin)).range([0, w]).padding(0.05);
const y = d3.scaleLinear().domain([{ymin}, d3.max(data, d => +d.Count)]).range([h, 0]);
g.append("g").attr("class", "axis x-axis").attr("transform", `translate(0,${{h}})`).call(d3.axisBottom(x));
g.append("g").attr("class", "axis y-axis").call(d3.axisLeft(y));
g.selectAll("rect.bar").data(data).join("rect")
  .attr("class", "bar")
  .attr("x", d => x(d.Bin))
  .attr("y", d => y(+d.Count))
  .attr("width", x.bandwidth())
  .attr("height", d => h - y(+d.Count))
  .attr("fill", "#76b7b2");
"""


def choropleth_script(misleading_color: bool) -> str:
    # desk-scale stand-in: a grid of region tiles shaded by value
    interp = "d3.interpolateReds" if misleading_color else "d3.interpolateBlues"
    domain = "[d3.max(data, d => +d.Value) * 0.9, d3.max(data, d => +d.Value)]" if misleading_color else "[0, d3.max(data, d => +d.Value)]"
    return f"""\
const cols = Math.ceil(Math.sqrt(data.length));
const tile = Math.min(width, height) / cols - 4;
const color = d3.scaleSequential({interp}).domain({domain});
svg.selectAll("rect.region").data(data).join("rect")
  .attr("class", "region")
  .attr("x", (d, i) => (i % cols) * (tile + 4) + 10)
  .attr("y", (d, i) => Math.floor(i / cols) * (tile + 4) + 10)
  .attr("width", tile)
  .attr("height", tile)
  .attr("fill", d => color(+d.Value))
  .attr("stroke", "#333333");
svg.selectAll("text.region-label").data(data).join("text")
  .attr("class", "region-label")
  .attr("x", (d, i) => (i % cols) * (tile + 4) + 14)
  .attr("y", (d, i) => Math.floor(i / cols) * (tile + 4) + 24)
  .text(d => d.Region);
"""


def treemap_script(cherry: bool) -> str:
    rows = "data.filter(d => +d.Value > d3.mean(data, e => +e.Value) * 0.5)" if cherry else "data"
    return f"""\
const rows = {rows};
const root = d3.hierarchy({{children: rows.map(d => ({{name: d.Category, value: +d.Value}}))}})
  .sum(d => d.value);
d3.treemap().size([width, height]).padding(2)(root);
const color = d3.scaleOrdinal(d3.schemeTableau10);
svg.selectAll("rect.cell").data(root.leaves()).join("rect")
  .attr("class", "cell")
  .attr("x", d => d.x0)
  .attr("y", d => d.y0)
  .attr("width", d => d.x1 - d.x0)
  .attr("height", d => d.y1 - d.y0)
  .attr("fill", d => color(d.data.name));
"""


CATEGORY_CSV = "Category,Value\nAlpha,42\nBravo,58\nCharlie,35\nDelta,71\nEcho,49\n"
STACKED_CSV = "Category,SeriesA,SeriesB\nQ1,20,35\nQ2,28,30\nQ3,34,26\nQ4,40,22\n"
MONTH_CSV = "Month,Value\nJan,12\nFeb,18\nMar,15\nApr,24\nMay,30\nJun,27\n"
XY_CSV = "X,Y\n1,3\n2,5\n3,4\n4,8\n5,7\n6,11\n7,10\n8,14\n"
BUBBLE_CSV = "X,Y,Size\n1,3,10\n2,6,40\n3,4,90\n4,9,25\n5,7,60\n6,12,150\n"
HIST_CSV = "Bin,Count\n0-9,4\n10-19,9\n20-29,15\n30-39,11\n40-49,6\n"
REGION_CSV = "Region,Value\nNorth,120\nSouth,95\nEast,140\nWest,80\nCentral,105\nCoast,132\n"

QA_MAX_CATEGORY = {
    "stem_template": "According to the chart, which {category_col} has the highest {value_col}?",
    "answer_template": "{max_category}",
    "distractor_pool": "categories",
    "explanation_template": "The chart shows {answer} reaching {max_value}, the largest {value_col} displayed.",
}
QA_MIN_CATEGORY = {
    "stem_template": "Which {category_col} shows the lowest {value_col} in the chart?",
    "answer_template": "{min_category}",
    "distractor_pool": "categories",
    "explanation_template": "{answer} sits at {min_value}, lower than every other {category_col}.",
}
QA_MAX_VALUE = {
    "stem_template": "What is the highest {value_col} shown for any {category_col}?",
    "answer_template": "{max_value}",
    "distractor_pool": "values",
    "explanation_template": "The tallest mark corresponds to {answer}.",
}

TEMPLATES = [
    # (chart_type, misleader or None, script, csv, qa, knowledge_points, difficulty)
    ("bar", None, bar_script(False), CATEGORY_CSV, QA_MAX_CATEGORY,
     ["retrieve_value", "find_extremum", "compare_values"], 2),
    ("bar", "truncated_axis", bar_script(True), CATEGORY_CSV, QA_MIN_CATEGORY,
     ["compare_values", "identify_misleader"], 4),
    ("stacked_bar", None, stacked_bar_script(False), STACKED_CSV, QA_MAX_CATEGORY,
     ["compare_values", "make_proportion_judgment"], 3),
    ("stacked_bar", "missing_baseline", stacked_bar_script(True), STACKED_CSV, QA_MAX_CATEGORY,
     ["make_proportion_judgment", "identify_misleader"], 4),
    ("line", None, line_script(False), MONTH_CSV, QA_MAX_VALUE,
     ["find_trend", "retrieve_value"], 2),
    ("line", "inappropriate_scale_range", line_script(True), MONTH_CSV, QA_MAX_CATEGORY,
     ["find_trend", "identify_misleader"], 4),
    ("area", None, line_script(False, area=True), MONTH_CSV, QA_MAX_CATEGORY,
     ["find_trend", "determine_range"], 3),
    ("area", "cherry_picking", line_script(False, area=True, cherry=True), MONTH_CSV, QA_MAX_CATEGORY,
     ["find_trend", "identify_misleader"], 4),
    ("pie", None, pie_script(False), CATEGORY_CSV, QA_MAX_CATEGORY,
     ["make_proportion_judgment", "compare_values"], 2),
    ("pie", "misleading_color", pie_script(True), CATEGORY_CSV, QA_MAX_CATEGORY,
     ["make_proportion_judgment", "identify_misleader"], 4),
    ("scatterplot", None, scatter_script(False), XY_CSV, QA_MAX_VALUE,
     ["find_correlation", "retrieve_value"], 3),
    ("scatterplot", "inverted_axis", scatter_script(True), XY_CSV, QA_MAX_VALUE,
     ["find_correlation", "identify_misleader"], 5),
    ("bubble", None, bubble_script(False), BUBBLE_CSV, QA_MAX_VALUE,
     ["compare_values", "find_correlation"], 3),
    ("bubble", "non_linear_scale", bubble_script(True), BUBBLE_CSV, QA_MAX_VALUE,
     ["compare_values", "identify_misleader"], 5),
    ("histogram", None, histogram_script(False), HIST_CSV, QA_MAX_CATEGORY,
     ["determine_range", "find_extremum"], 2),
    ("histogram", "truncated_axis", histogram_script(True), HIST_CSV, QA_MIN_CATEGORY,
     ["determine_range", "identify_misleader"], 4),
    ("choropleth", None, choropleth_script(False), REGION_CSV, QA_MAX_CATEGORY,
     ["retrieve_value", "compare_values"], 3),
    ("choropleth", "misleading_color", choropleth_script(True), REGION_CSV, QA_MAX_CATEGORY,
     ["compare_values", "identify_misleader"], 4),
    ("treemap", None, treemap_script(False), CATEGORY_CSV, QA_MAX_CATEGORY,
     ["make_proportion_judgment", "compare_values"], 3),
    ("treemap", "cherry_picking", treemap_script(True), CATEGORY_CSV, QA_MIN_CATEGORY,
     ["make_proportion_judgment", "identify_misleader"], 4),
]


def main() -> None:
    if ROOT.exists():
        shutil.rmtree(ROOT)
    ROOT.mkdir(parents=True)
    manifest = []
    for chart_type, misleader, script, csv_text, qa, kps, difficulty in TEMPLATES:
        suffix = misleader or "plain"
        tid = f"{chart_type}__{suffix}"
        tdir = ROOT / tid
        tdir.mkdir()
        (tdir / "chart.js").write_text(script)
        (tdir / "data.csv").write_text(csv_text)
        (tdir / "qa.json").write_text(json.dumps(qa, indent=2) + "\n")
        meta = {
            "chart_type": chart_type,
            "misleader_tags": [misleader] if misleader else [],
            "knowledge_points": kps,
            "difficulty_hint": difficulty,
            "library": "d3@7",
        }
        (tdir / "meta.json").write_text(json.dumps(meta, indent=2) + "\n")
        manifest.append({"id": tid, "path": tid})
    (ROOT / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    print(f"wrote {len(manifest)} templates to {ROOT}")


if __name__ == "__main__":
    main()
