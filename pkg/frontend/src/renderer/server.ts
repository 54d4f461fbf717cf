/** HTTP wrapper around the sandboxed renderer. */

import express, { type Express } from "express";
import { Resvg } from "@resvg/resvg-js";

import {
  EmptyOutput,
  InvalidRender,
  RenderRequest,
  RenderTimeout,
  ScriptError,
  renderSvg,
} from "./sandbox.js";

const MAX_CONCURRENT_RENDERS = 4;

/** Tiny FIFO semaphore so a burst of requests cannot spawn unbounded VMs. */
class Semaphore {
  private active = 0;
  private waiting: Array<() => void> = [];

  constructor(private readonly limit: number) {}

  async acquire(): Promise<void> {
    if (this.active < this.limit) {
      this.active += 1;
      return;
    }
    await new Promise<void>((resolve) => this.waiting.push(resolve));
    this.active += 1;
  }

  release(): void {
    this.active -= 1;
    this.waiting.shift()?.();
  }
}

export function rasterize(svg: string, width: number): string {
  const png = new Resvg(svg, { fitTo: { mode: "width", value: width } })
    .render()
    .asPng();
  return Buffer.from(png).toString("base64");
}

export function createServer(): Express {
  const app = express();
  app.use(express.json({ limit: "2mb" }));
  const pool = new Semaphore(MAX_CONCURRENT_RENDERS);

  app.get("/healthz", (_req, res) => {
    res.json({ status: "ok" });
  });

  app.post("/render", async (req, res) => {
    const request = req.body as RenderRequest;
    await pool.acquire();
    try {
      const svg = renderSvg(request);
      const width = request.viewport?.width ?? 800;
      res.json({ svg, png_base64: rasterize(svg, width) });
    } catch (err) {
      if (err instanceof InvalidRender) {
        res.status(422).json({ code: err.code, message: err.message });
      } else if (err instanceof ScriptError) {
        res.status(400).json({
          code: err.code,
          message: err.message,
          console: err.consoleLines,
        });
      } else if (err instanceof RenderTimeout) {
        res.status(504).json({ code: err.code, message: err.message });
      } else if (err instanceof EmptyOutput) {
        res.status(422).json({ code: err.code, message: err.message });
      } else {
        const message = err instanceof Error ? err.message : String(err);
        res.status(500).json({ code: "internal_error", message });
      }
    } finally {
      pool.release();
    }
  });

  return app;
}
