/** Draggable radar chart over a group's trait or knowledge means.
 *
 * Dragging an axis handle proposes a new level for that attribute across the
 * group's members. The proposal is clamped to the 1..5 scale before any
 * request leaves the view, and it is sent as a shift relative to the current
 * mean so individual profiles keep their spread. */

import type { CohortPatch } from "./types.js";

export interface RadarOptions {
  memberIds: string[];
  means: Record<string, number>;
  onPatch: (patch: CohortPatch) => void;
}

export function clampLevel(value: number): number {
  return Math.min(5, Math.max(1, value));
}

export function buildPatch(
  memberIds: string[],
  attribute: string,
  currentMean: number,
  draggedValue: number,
): CohortPatch | null {
  const target = clampLevel(draggedValue);
  const shift = Math.round(target - currentMean);
  if (shift === 0) return null;
  return {
    selector: { ids: [...memberIds] },
    edits: { [attribute]: { shift } },
  };
}

export function renderRadar(container: HTMLElement, options: RadarOptions): void {
  const doc = container.ownerDocument;
  container.replaceChildren();
  for (const [attribute, mean] of Object.entries(options.means)) {
    const handle = doc.createElement("div");
    handle.className = "radar-handle";
    handle.dataset.attribute = attribute;
    handle.dataset.mean = mean.toFixed(2);

    // the drag target value travels in the event detail so the handle works
    // the same under pointer events and programmatic tests
    handle.addEventListener("radar-drag", (event) => {
      const dragged = (event as CustomEvent<number>).detail;
      const patch = buildPatch(options.memberIds, attribute, mean, dragged);
      if (patch) options.onPatch(patch);
    });

    const label = doc.createElement("span");
    label.className = "radar-label";
    label.textContent = `${attribute}: ${mean.toFixed(1)}`;
    handle.appendChild(label);
    container.appendChild(handle);
  }
}
