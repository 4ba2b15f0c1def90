import { CLASS_COLORS, DEST_COLOR, ORIGIN_COLOR, clear, el, svgEl } from "./dom.js";
import { linearScale } from "./scales.js";
import type { GeometryRow } from "./types.js";

export interface TripMapOptions {
  width?: number;
  height?: number;
  margin?: number;
}

/**
 * Straight-line trip map over a plain planar canvas: one segment per
 * selected trip colored by class, origin dots green, destination dots cyan.
 */
export class TripMapView {
  readonly root: HTMLElement;
  private width: number;
  private height: number;
  private margin: number;

  constructor(container: Element, opts: TripMapOptions = {}) {
    this.width = opts.width ?? 420;
    this.height = opts.height ?? 420;
    this.margin = opts.margin ?? 20;
    this.root = el("div", { class: "trip-map" });
    container.appendChild(this.root);
    this.renderEmpty();
  }

  renderEmpty(): void {
    clear(this.root);
    this.root.appendChild(
      el("p", { class: "empty-state" }, "no trips selected"),
    );
  }

  render(geometry: GeometryRow[]): void {
    if (geometry.length === 0) {
      this.renderEmpty();
      return;
    }
    clear(this.root);

    const xs = geometry.flatMap((g) => [g.origin[0], g.dest[0]]);
    const ys = geometry.flatMap((g) => [g.origin[1], g.dest[1]]);
    const [xLo, xHi] = padded(Math.min(...xs), Math.max(...xs));
    const [yLo, yHi] = padded(Math.min(...ys), Math.max(...ys));
    const x = linearScale(xLo, xHi, this.margin, this.width - this.margin);
    const y = linearScale(yLo, yHi, this.height - this.margin, this.margin);

    const svg = svgEl("svg", {
      width: this.width,
      height: this.height,
      viewBox: `0 0 ${this.width} ${this.height}`,
    });
    const lines = svgEl("g", { class: "trip-lines" });
    const ends = svgEl("g", { class: "trip-endpoints" });
    for (const g of geometry) {
      lines.appendChild(
        svgEl("line", {
          x1: x(g.origin[0]),
          y1: y(g.origin[1]),
          x2: x(g.dest[0]),
          y2: y(g.dest[1]),
          stroke: CLASS_COLORS[g.label],
          "stroke-opacity": 0.6,
          "data-trip": g.trip_id,
        }),
      );
      ends.appendChild(
        svgEl("circle", {
          cx: x(g.origin[0]),
          cy: y(g.origin[1]),
          r: 3,
          fill: ORIGIN_COLOR,
          class: "origin",
        }),
      );
      ends.appendChild(
        svgEl("circle", {
          cx: x(g.dest[0]),
          cy: y(g.dest[1]),
          r: 3,
          fill: DEST_COLOR,
          class: "dest",
        }),
      );
    }
    svg.appendChild(lines);
    svg.appendChild(ends);
    this.root.appendChild(svg);
  }
}

function padded(lo: number, hi: number): [number, number] {
  if (lo === hi) return [lo - 1, hi + 1];
  const pad = (hi - lo) * 0.05;
  return [lo - pad, hi + pad];
}
