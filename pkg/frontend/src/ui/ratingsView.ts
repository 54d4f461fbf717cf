/** Stacked rating bars per cluster. Bars for the current run are colored;
 * when a previous version's means are supplied they appear as grey bars
 * behind the current ones. A first run renders no grey bars at all. */

import type { RatingMeans, VersionStats } from "./types.js";

const STEM_KEYS = ["context_clarity", "overall_cognitive_challenge", "hint_dependency"];
const CHART_KEYS = [
  "chart_complexity",
  "data_difficulty",
  "visual_encoding_complexity",
];

function appendBars(
  doc: Document,
  row: HTMLElement,
  keys: string[],
  means: RatingMeans,
  previous: RatingMeans | undefined,
): void {
  for (const key of keys) {
    const cell = doc.createElement("div");
    cell.className = "rating-cell";
    cell.dataset.key = key;

    if (previous && key in previous) {
      const grey = doc.createElement("div");
      grey.className = "rating-bar previous";
      grey.style.width = `${(100 * previous[key]) / 5}%`;
      grey.title = `previous: ${previous[key].toFixed(2)}`;
      cell.appendChild(grey);
    }

    const bar = doc.createElement("div");
    bar.className = "rating-bar current";
    bar.style.width = `${(100 * (means[key] ?? 0)) / 5}%`;
    bar.textContent = (means[key] ?? 0).toFixed(2);
    cell.appendChild(bar);
    row.appendChild(cell);
  }
}

export function renderRatings(container: HTMLElement, stats: VersionStats): void {
  const doc = container.ownerDocument;
  container.replaceChildren();
  for (const [clusterId, means] of Object.entries(stats.rating_means)) {
    const previous = stats.previous_rating_means?.[clusterId];
    const card = doc.createElement("div");
    card.className = "rating-card";
    card.dataset.cluster = clusterId;

    const stemRow = doc.createElement("div");
    stemRow.className = "rating-row stem";
    appendBars(doc, stemRow, STEM_KEYS, means, previous);
    card.appendChild(stemRow);

    const chartRow = doc.createElement("div");
    chartRow.className = "rating-row chart";
    appendBars(doc, chartRow, CHART_KEYS, means, previous);
    card.appendChild(chartRow);

    container.appendChild(card);
  }
}
