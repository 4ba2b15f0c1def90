import type { PolygonShape, RectangleShape } from "./types.js";

export interface LinearScale {
  (v: number): number;
  invert(px: number): number;
}

export function linearScale(
  d0: number,
  d1: number,
  r0: number,
  r1: number,
): LinearScale {
  const k = (r1 - r0) / (d1 - d0);
  const scale = ((v: number) => r0 + (v - d0) * k) as LinearScale;
  scale.invert = (px: number) => d0 + (px - r0) / k;
  return scale;
}

/**
 * Map a dragged pixel box to a rectangle selection in plot coordinates.
 *
 * Ranks are integers, so the shape snaps to the inclusive integer bounds
 * contained in the drawn box.  A box too narrow to contain an integer on
 * some axis keeps its fractional bounds there; the service then resolves
 * it to an empty selection rather than the client deciding.
 */
export function boxToRectangle(
  pxA: [number, number],
  pxB: [number, number],
  xScale: LinearScale,
  yScale: LinearScale,
): RectangleShape {
  const [xLo, xHi] = ordered(xScale.invert(pxA[0]), xScale.invert(pxB[0]));
  const [yLo, yHi] = ordered(yScale.invert(pxA[1]), yScale.invert(pxB[1]));
  const [x0, x1] = snapInclusive(xLo, xHi);
  const [y0, y1] = snapInclusive(yLo, yHi);
  return { kind: "rectangle", x0, x1, y0, y1 };
}

function ordered(a: number, b: number): [number, number] {
  return a <= b ? [a, b] : [b, a];
}

function snapInclusive(lo: number, hi: number): [number, number] {
  const a = Math.ceil(lo);
  const b = Math.floor(hi);
  return a <= b ? [a, b] : [lo, hi];
}

/** Map a lasso's pixel trail to a polygon in plot coordinates. */
export function lassoToPolygon(
  pixels: [number, number][],
  xScale: LinearScale,
  yScale: LinearScale,
): PolygonShape {
  return {
    kind: "polygon",
    vertices: pixels.map(([px, py]) => [xScale.invert(px), yScale.invert(py)]),
  };
}
