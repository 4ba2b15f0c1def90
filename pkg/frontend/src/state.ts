import type { ClassFilter, Shape } from "./types.js";

export type ClassRadio = "all" | "with" | "without";
export type BrushMode = "box" | "lasso";

/** Client-side view state; the service owns every analytic number. */
export interface ViewState {
  dataset: string | null;
  classRadio: ClassRadio;
  opacity: number;
  brushMode: BrushMode;
  selection: Shape | null;
  feature: string | null;
}

export function initialState(): ViewState {
  return {
    dataset: null,
    classRadio: "all",
    opacity: 0.7,
    brushMode: "box",
    selection: null,
    feature: null,
  };
}

export function clampOpacity(v: number): number {
  if (Number.isNaN(v)) return 0;
  return Math.min(1, Math.max(0, v));
}

/** Map the three-way radio onto the service's class_filter parameter. */
export function classParam(radio: ClassRadio): ClassFilter {
  return radio === "with" ? "1" : radio === "without" ? "0" : "all";
}

/**
 * Last-write-wins gate for in-flight requests, one counter per panel.
 * A response is applied only if no newer request for that panel was
 * issued while it was in flight.
 */
export class SequenceGate {
  private counters = new Map<string, number>();

  issue(panel: string): number {
    const next = (this.counters.get(panel) ?? 0) + 1;
    this.counters.set(panel, next);
    return next;
  }

  isCurrent(panel: string, seq: number): boolean {
    return this.counters.get(panel) === seq;
  }
}
