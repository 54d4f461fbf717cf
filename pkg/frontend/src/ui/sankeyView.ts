/** Interactive reasoning-flow view.
 *
 * One dot per answer choice, labelled with the share of students who picked
 * it; below each dot the prefix-merged strategy blocks, indented by depth
 * with horizontal spacing proportional to the mean reasoning token count.
 * Clicking a dot filters to that answer's subtree; clicking it again resets.
 */

import type { AnswerNode, SankeyBlock, SankeyModel, ViewState } from "./types.js";

const TOKEN_SPACING_PX = 2;

export function formatShare(share: number): string {
  return `${Math.round(share * 100)}%`;
}

function renderBlock(doc: Document, block: SankeyBlock, parentCount: number): HTMLElement {
  const el = doc.createElement("div");
  el.className = "sankey-block";
  el.dataset.label = block.label;
  el.dataset.depth = String(block.depth);
  el.dataset.count = String(block.count);
  // child widths sum to the parent width: width is the member share
  el.style.width = `${(100 * block.count) / parentCount}%`;
  el.style.marginLeft = `${Math.round(block.mean_token_count * TOKEN_SPACING_PX)}px`;

  const caption = doc.createElement("span");
  caption.className = "sankey-block-label";
  caption.textContent = `${block.label} (${block.count})`;
  el.appendChild(caption);

  const children = doc.createElement("div");
  children.className = "sankey-children";
  for (const child of block.children) {
    children.appendChild(renderBlock(doc, child, block.count));
  }
  el.appendChild(children);
  return el;
}

function renderAnswer(
  doc: Document,
  node: AnswerNode,
  state: ViewState,
  onToggle: (label: string) => void,
): HTMLElement {
  const wrap = doc.createElement("div");
  wrap.className = "sankey-answer";
  wrap.dataset.label = node.label;
  const filtered = state.sankeyFilter !== null && state.sankeyFilter !== node.label;
  if (filtered) wrap.classList.add("hidden");

  const dot = doc.createElement("button");
  dot.className = "answer-dot";
  dot.dataset.label = node.label;
  dot.textContent = `${node.label} ${formatShare(node.share)}`;
  dot.addEventListener("click", () => onToggle(node.label));
  wrap.appendChild(dot);

  const subtree = doc.createElement("div");
  subtree.className = "sankey-subtree";
  for (const block of node.blocks) {
    subtree.appendChild(renderBlock(doc, block, node.count));
  }
  wrap.appendChild(subtree);
  return wrap;
}

export function renderSankey(
  container: HTMLElement,
  model: SankeyModel,
  state: ViewState,
  onStateChange: (state: ViewState) => void,
): void {
  const doc = container.ownerDocument;
  container.replaceChildren();

  const toggle = (label: string) => {
    const next: ViewState = {
      ...state,
      sankeyFilter: state.sankeyFilter === label ? null : label,
    };
    onStateChange(next);
    renderSankey(container, model, next, onStateChange);
  };

  const fullView = doc.createElement("button");
  fullView.className = "sankey-full-view";
  fullView.textContent = "Full View";
  fullView.addEventListener("click", () => {
    container.classList.toggle("expanded");
  });
  container.appendChild(fullView);

  for (const node of model.answer_nodes) {
    container.appendChild(renderAnswer(doc, node, state, toggle));
  }
}
