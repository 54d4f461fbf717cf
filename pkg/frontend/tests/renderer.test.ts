import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import { dirname, join } from "node:path";
import { describe, expect, it } from "vitest";

import {
  EmptyOutput,
  InvalidRender,
  RenderTimeout,
  ScriptError,
  renderSvg,
} from "../src/renderer/sandbox.js";
import { createServer, rasterize } from "../src/renderer/server.js";

const here = dirname(fileURLToPath(import.meta.url));

const barTemplateDir = join(
  here,
  "../../src/quizstudio/data/seed_bundle/bar__plain",
);
const barScript = readFileSync(join(barTemplateDir, "chart.js"), "utf8");
const barCsv = readFileSync(join(barTemplateDir, "data.csv"), "utf8");

describe("sandboxed rendering", () => {
  it("renders one bar rect per CSV row", () => {
    const rows = barCsv.trim().split("\n").length - 1;
    expect(rows).toBe(5);
    const svg = renderSvg({ chart_script: barScript, csv: barCsv });
    const bars = svg.match(/<rect[^>]*class="bar"/g) ?? [];
    expect(bars.length).toBe(5);
  });

  it("is byte-identical across runs", () => {
    const a = renderSvg({ chart_script: barScript, csv: barCsv });
    const b = renderSvg({ chart_script: barScript, csv: barCsv });
    expect(a).toBe(b);
  });

  it("seeds Math.random deterministically", () => {
    const script =
      'svg.append("circle").attr("r", 5).attr("cx", Math.random() * width);';
    const a = renderSvg({ chart_script: script, csv: "x\n1\n" });
    const b = renderSvg({ chart_script: script, csv: "x\n1\n" });
    expect(a).toBe(b);
  });

  it("reports thrown scripts as ScriptError with the message", () => {
    expect(() =>
      renderSvg({ chart_script: 'throw new Error("boom")', csv: barCsv }),
    ).toThrowError(ScriptError);
    try {
      renderSvg({ chart_script: 'throw new Error("boom")', csv: barCsv });
    } catch (err) {
      expect((err as ScriptError).message).toContain("boom");
    }
  });

  it("blocks network canaries", () => {
    const canaries = [
      'fetch("http://example.com/canary")',
      'new XMLHttpRequest()',
      'require("http")',
    ];
    for (const canary of canaries) {
      expect(() =>
        renderSvg({ chart_script: canary, csv: barCsv }),
      ).toThrowError(ScriptError);
    }
  });

  it("rejects empty output", () => {
    expect(() =>
      renderSvg({ chart_script: "const nothing = 1;", csv: barCsv }),
    ).toThrowError(EmptyOutput);
  });

  it("rejects empty inputs", () => {
    expect(() => renderSvg({ chart_script: "", csv: barCsv })).toThrowError(
      InvalidRender,
    );
    expect(() =>
      renderSvg({ chart_script: barScript, csv: "  " }),
    ).toThrowError(InvalidRender);
    expect(() =>
      renderSvg({
        chart_script: barScript,
        csv: barCsv,
        viewport: { width: -1 },
      }),
    ).toThrowError(InvalidRender);
  });

  it("times out runaway scripts", () => {
    expect(() =>
      renderSvg({
        chart_script: "while (true) {}",
        csv: barCsv,
        timeout_ms: 200,
      }),
    ).toThrowError(RenderTimeout);
  });

  it("rasterizes SVG to PNG", () => {
    const svg = renderSvg({ chart_script: barScript, csv: barCsv });
    const png = Buffer.from(rasterize(svg, 800), "base64");
    // PNG magic bytes
    expect(png.subarray(0, 4)).toEqual(Buffer.from([0x89, 0x50, 0x4e, 0x47]));
  });
});

describe("render service", () => {
  async function withServer<T>(
    fn: (base: string) => Promise<T>,
  ): Promise<T> {
    const app = createServer();
    const server = app.listen(0);
    const address = server.address();
    if (address === null || typeof address === "string") {
      throw new Error("no port");
    }
    try {
      return await fn(`http://127.0.0.1:${address.port}`);
    } finally {
      server.close();
    }
  }

  it("serves /healthz", async () => {
    await withServer(async (base) => {
      const res = await fetch(`${base}/healthz`);
      expect(res.status).toBe(200);
      expect(await res.json()).toEqual({ status: "ok" });
    });
  });

  it("renders over HTTP and reports errors as problem documents", async () => {
    await withServer(async (base) => {
      const ok = await fetch(`${base}/render`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ chart_script: barScript, csv: barCsv }),
      });
      expect(ok.status).toBe(200);
      const payload = await ok.json();
      expect(payload.svg).toContain("<svg");
      expect(payload.png_base64.length).toBeGreaterThan(100);

      const bad = await fetch(`${base}/render`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ chart_script: "throw new Error('x')", csv: barCsv }),
      });
      expect(bad.status).toBe(400);
      expect((await bad.json()).code).toBe("script_error");
    });
  });
});
