/** Accuracy-per-version chart, pinned at the top of the simulation view so
 * the overall difficulty trend stays visible without scrolling. */

import type { VersionStats } from "./types.js";

export function renderVersionChart(
  container: HTMLElement,
  versions: VersionStats[],
): void {
  const doc = container.ownerDocument;
  container.replaceChildren();
  container.classList.add("version-chart", "pinned");
  for (const entry of versions) {
    const bar = doc.createElement("div");
    bar.className = "version-bar";
    bar.dataset.version = entry.version_id;
    bar.style.height = `${Math.round(entry.accuracy * 100)}%`;
    bar.title = `${entry.version_id} (${entry.run_id}): ${(entry.accuracy * 100).toFixed(0)}%`;

    const label = doc.createElement("span");
    label.textContent = `${entry.version_id} ${(entry.accuracy * 100).toFixed(0)}%`;
    bar.appendChild(label);
    container.appendChild(bar);
  }
}
