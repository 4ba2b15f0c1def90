// End-to-end round trip against a real service process.  Spawns
// `odflow serve` on a freshly generated bundle, drives the UI in jsdom
// with real HTTP, and checks the selection workflow along the way.

import { execFileSync, spawn } from "node:child_process";
import type { ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { App } from "../src/app.js";
import type { RectangleShape, SelectionResponse } from "../src/types.js";

const PORT = 8900 + (process.pid % 80);
const BASE = `http://127.0.0.1:${PORT}`;

let dataDir: string;
let server: ChildProcess;

interface Recorded {
  method: string;
  url: string;
  body: unknown;
  response: unknown;
}

const requests: Recorded[] = [];

const recordingFetch = async (
  input: string,
  init?: RequestInit,
): Promise<Response> => {
  const res = await fetch(input, init);
  requests.push({
    method: init?.method ?? "GET",
    url: input,
    body: init?.body ? JSON.parse(String(init.body)) : null,
    response: await res.clone().json().catch(() => null),
  });
  return res;
};

beforeAll(async () => {
  dataDir = mkdtempSync(join(tmpdir(), "odflow-ui-"));
  execFileSync("odflow", [
    "synth",
    join(dataDir, "demo"),
    "--graph",
    "grid:12x12",
    "--trips",
    "500",
    "--seed",
    "11",
  ]);
  server = spawn("odflow", ["serve", "--data-dir", dataDir, "--port", String(PORT)], {
    stdio: "ignore",
  });
  await waitForServer();
});

afterAll(() => {
  server?.kill();
  rmSync(dataDir, { recursive: true, force: true });
});

async function waitForServer(): Promise<void> {
  const deadline = Date.now() + 30000;
  for (;;) {
    try {
      const res = await fetch(`${BASE}/datasets`);
      if (res.ok) return;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) throw new Error("service did not come up");
    await sleep(250);
  }
}

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

async function waitFor(cond: () => boolean, what: string): Promise<void> {
  const deadline = Date.now() + 10000;
  while (!cond()) {
    if (Date.now() > deadline) throw new Error(`timed out waiting for ${what}`);
    await sleep(50);
  }
}

function mouse(type: string, x: number, y: number): MouseEvent {
  return new MouseEvent(type, { clientX: x, clientY: y, bubbles: true });
}

describe("UI round trip against a live service", () => {
  it("box selection returns trips whose points lie inside the box", async () => {
    document.body.innerHTML = "";
    const root = document.createElement("div");
    document.body.appendChild(root);
    const app = new App(root, new ApiClient(BASE, recordingFetch));
    await app.init();
    expect(app.currentPoints.length).toBe(500);

    // scripted drag across the middle of the plot
    const overlay = root.querySelector("rect.overlay")!;
    overlay.dispatchEvent(mouse("mousedown", 60, 360));
    document.dispatchEvent(mouse("mousemove", 360, 60));
    document.dispatchEvent(mouse("mouseup", 360, 60));

    await waitFor(
      () => requests.some((r) => r.url.endsWith("/selection")),
      "selection request",
    );
    await waitFor(
      () => root.querySelectorAll("circle.selected").length > 0,
      "highlighted points",
    );

    const post = requests.find((r) => r.url.endsWith("/selection"))!;
    const shape = (post.body as { shape: RectangleShape }).shape;
    expect(shape.kind).toBe("rectangle");
    expect(Number.isInteger(shape.x0)).toBe(true);

    const report = post.response as SelectionResponse;
    expect(report.trip_ids.length).toBeGreaterThan(0);

    // re-project every returned trip through the points payload: all inside
    const byId = new Map(app.currentPoints.map((p) => [p.trip_id, p]));
    for (const id of report.trip_ids) {
      const p = byId.get(id);
      expect(p, `trip ${id} missing from points`).toBeDefined();
      expect(p!.x).toBeGreaterThanOrEqual(shape.x0);
      expect(p!.x).toBeLessThanOrEqual(shape.x1);
      expect(p!.y).toBeGreaterThanOrEqual(shape.y0);
      expect(p!.y).toBeLessThanOrEqual(shape.y1);
    }

    // importance bars render in the service's order, which is descending
    const rendered = [...root.querySelectorAll(".bar-label")].map(
      (n) => n.textContent,
    );
    const served = report.importance!.features;
    expect(rendered).toEqual(served.map((f) => f.name));
    const strength = served.map((f) =>
      Math.max(f.mean_abs_class0 ?? -Infinity, f.mean_abs_class1 ?? -Infinity),
    );
    for (let i = 1; i < strength.length; i++) {
      expect(strength[i]).toBeLessThanOrEqual(strength[i - 1]);
    }

    // clicking a bar issues exactly one feature-detail request
    const before = requests.filter((r) => r.url.endsWith("/selection")).length;
    const row = root.querySelector(".bar-row") as HTMLElement;
    const clicked = row.getAttribute("data-feature");
    row.click();
    await waitFor(
      () => root.querySelectorAll(".detail-series.class0 rect").length > 0,
      "detail chart",
    );
    const detailPosts = requests
      .filter((r) => r.url.endsWith("/selection"))
      .slice(before);
    expect(detailPosts.length).toBe(1);
    const detailBody = detailPosts[0].body as { detail_feature?: string };
    expect(detailBody.detail_feature).toBe(clicked);

    // every rendered evaluation number came from the service response
    const evalOut = (detailPosts[0].response as SelectionResponse).evaluation!;
    const pctText = [...root.querySelectorAll(".eval-pct")].map(
      (n) => n.textContent,
    );
    expect(pctText[0]).toContain(`${evalOut.class0.hit_pct!.toFixed(1)}% hit`);
    expect(pctText[1]).toContain(`${evalOut.class1.hit_pct!.toFixed(1)}% hit`);
  });
});
