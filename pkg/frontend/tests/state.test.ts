import { describe, expect, it } from "vitest";

import {
  SequenceGate,
  clampOpacity,
  classParam,
  initialState,
} from "../src/state.js";

describe("clampOpacity", () => {
  it("clamps into [0, 1]", () => {
    expect(clampOpacity(0.5)).toBe(0.5);
    expect(clampOpacity(-3)).toBe(0);
    expect(clampOpacity(7)).toBe(1);
    expect(clampOpacity(NaN)).toBe(0);
  });
});

describe("classParam", () => {
  it("maps the radio onto the service parameter", () => {
    expect(classParam("all")).toBe("all");
    expect(classParam("with")).toBe("1");
    expect(classParam("without")).toBe("0");
  });
});

describe("initialState", () => {
  it("starts with no dataset, no selection, box brushing", () => {
    const s = initialState();
    expect(s.dataset).toBeNull();
    expect(s.selection).toBeNull();
    expect(s.feature).toBeNull();
    expect(s.brushMode).toBe("box");
    expect(s.opacity).toBeGreaterThan(0);
    expect(s.opacity).toBeLessThanOrEqual(1);
  });
});

describe("SequenceGate", () => {
  it("accepts only the newest request per panel", () => {
    const gate = new SequenceGate();
    const first = gate.issue("report");
    const second = gate.issue("report");
    expect(gate.isCurrent("report", first)).toBe(false);
    expect(gate.isCurrent("report", second)).toBe(true);
  });

  it("tracks panels independently", () => {
    const gate = new SequenceGate();
    const p = gate.issue("points");
    gate.issue("report");
    expect(gate.isCurrent("points", p)).toBe(true);
  });
});
