/**
 * Executes a chart script against its CSV inside a locked-down VM context.
 *
 * The script sees exactly five globals: `d3`, `data` (parsed CSV rows),
 * `svg` (a d3 selection of an empty <svg>), `width`, and `height`. There is
 * no fetch, no XMLHttpRequest, no require, no process, and Math.random is
 * replaced with a seeded generator, so two runs of the same request produce
 * byte-identical output.
 */

import * as vm from "node:vm";
import * as d3 from "d3";
import { JSDOM } from "jsdom";

export interface RenderRequest {
  chart_script: string;
  csv: string;
  viewport?: { width?: number; height?: number };
  timeout_ms?: number;
}

export class ScriptError extends Error {
  readonly code = "script_error";
  constructor(message: string, readonly consoleLines: string[]) {
    super(message);
  }
}

export class RenderTimeout extends Error {
  readonly code = "timeout";
}

export class EmptyOutput extends Error {
  readonly code = "empty_output";
}

export class InvalidRender extends Error {
  readonly code = "invalid_request";
}

const DEFAULT_WIDTH = 800;
const DEFAULT_HEIGHT = 600;
const DEFAULT_TIMEOUT_MS = 5000;

/** Mulberry32: tiny deterministic PRNG, good enough for chart jitter. */
function seededRandom(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function renderSvg(request: RenderRequest): string {
  const script = request.chart_script;
  const csv = request.csv;
  if (!script || !script.trim() || !csv || !csv.trim()) {
    throw new InvalidRender("chart_script and csv must be non-empty");
  }
  const width = request.viewport?.width ?? DEFAULT_WIDTH;
  const height = request.viewport?.height ?? DEFAULT_HEIGHT;
  if (width <= 0 || height <= 0) {
    throw new InvalidRender("viewport dimensions must be positive");
  }
  const timeoutMs = request.timeout_ms ?? DEFAULT_TIMEOUT_MS;

  const dom = new JSDOM("<!DOCTYPE html><body></body>");
  const document = dom.window.document;
  const svgEl = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  svgEl.setAttribute("xmlns", "http://www.w3.org/2000/svg");
  svgEl.setAttribute("width", String(width));
  svgEl.setAttribute("height", String(height));
  svgEl.setAttribute("viewBox", `0 0 ${width} ${height}`);
  document.body.appendChild(svgEl);

  const consoleLines: string[] = [];
  const capture =
    (level: string) =>
    (...args: unknown[]) =>
      consoleLines.push(`[${level}] ${args.map(String).join(" ")}`);

  const sandboxMath: Math = Object.create(Math);
  sandboxMath.random = seededRandom(42);

  const context = vm.createContext(
    {
      d3,
      data: d3.csvParse(csv.trim()),
      svg: d3.select(svgEl),
      width,
      height,
      document,
      Math: sandboxMath,
      console: {
        log: capture("log"),
        warn: capture("warn"),
        error: capture("error"),
      },
    },
    { codeGeneration: { strings: false, wasm: false } },
  );

  try {
    new vm.Script(script, { filename: "chart.js" }).runInContext(context, {
      timeout: timeoutMs,
    });
  } catch (err) {
    const message = err instanceof Error ? err.message : String(err);
    if (message.includes("Script execution timed out")) {
      throw new RenderTimeout(`render exceeded ${timeoutMs} ms`);
    }
    throw new ScriptError(message, consoleLines);
  }

  if (svgEl.childElementCount === 0) {
    throw new EmptyOutput("script produced no drawable elements");
  }
  return svgEl.outerHTML;
}
