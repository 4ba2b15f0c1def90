import { CLASS_COLORS, clear, svgEl } from "./dom.js";
import { boxToRectangle, lassoToPolygon, linearScale } from "./scales.js";
import type { LinearScale } from "./scales.js";
import type { BrushMode } from "./state.js";
import type { PointRow, Shape } from "./types.js";

export interface OdPlotOptions {
  width?: number;
  height?: number;
  margin?: number;
  onSelect?: (shape: Shape | null) => void;
}

/**
 * The OD plot: one dot per trip at (origin rank, destination rank), with
 * box and lasso brushing.  Gestures are mapped back to plot coordinates
 * and handed to onSelect; the view itself never filters trips.
 */
export class OdPlotView {
  readonly svg: SVGSVGElement;
  private plot: SVGGElement;
  private brushLayer: SVGGElement;
  private overlay: SVGRectElement;
  private width: number;
  private height: number;
  private margin: number;
  private onSelect: (shape: Shape | null) => void;
  private xScale: LinearScale;
  private yScale: LinearScale;
  private dots = new Map<number, SVGCircleElement>();
  private mode: BrushMode = "box";
  private dragStart: [number, number] | null = null;
  private trail: [number, number][] = [];

  constructor(container: Element, opts: OdPlotOptions = {}) {
    this.width = opts.width ?? 420;
    this.height = opts.height ?? 420;
    this.margin = opts.margin ?? 36;
    this.onSelect = opts.onSelect ?? (() => {});
    // placeholder scales until the first render supplies the rank domain
    this.xScale = linearScale(0, 1, this.margin, this.width - this.margin);
    this.yScale = linearScale(0, 1, this.height - this.margin, this.margin);

    this.svg = svgEl("svg", {
      width: this.width,
      height: this.height,
      viewBox: `0 0 ${this.width} ${this.height}`,
      class: "odplot",
    });
    this.plot = svgEl("g", { class: "points" });
    this.brushLayer = svgEl("g", { class: "brush" });
    this.overlay = svgEl("rect", {
      class: "overlay",
      x: this.margin,
      y: this.margin,
      width: this.width - 2 * this.margin,
      height: this.height - 2 * this.margin,
      fill: "transparent",
      cursor: "crosshair",
    });

    this.svg.appendChild(this.frame());
    this.svg.appendChild(this.plot);
    this.svg.appendChild(this.brushLayer);
    this.svg.appendChild(this.overlay);
    container.appendChild(this.svg);

    this.overlay.addEventListener("mousedown", (ev) => this.beginDrag(ev));
    // move/up on the document so drags survive leaving the plot area
    this.svg.ownerDocument.addEventListener("mousemove", (ev) =>
      this.moveDrag(ev),
    );
    this.svg.ownerDocument.addEventListener("mouseup", (ev) => this.endDrag(ev));
  }

  private frame(): SVGGElement {
    const g = svgEl("g", { class: "frame" });
    g.appendChild(
      svgEl("rect", {
        x: this.margin,
        y: this.margin,
        width: this.width - 2 * this.margin,
        height: this.height - 2 * this.margin,
        fill: "none",
        stroke: "#999",
      }),
    );
    const xLabel = svgEl("text", {
      x: this.width / 2,
      y: this.height - 8,
      "text-anchor": "middle",
      class: "axis-label",
    });
    xLabel.textContent = "origin rank";
    const yLabel = svgEl("text", {
      x: 12,
      y: this.height / 2,
      "text-anchor": "middle",
      transform: `rotate(-90 12 ${this.height / 2})`,
      class: "axis-label",
    });
    yLabel.textContent = "destination rank";
    g.appendChild(xLabel);
    g.appendChild(yLabel);
    return g;
  }

  setMode(mode: BrushMode): void {
    this.mode = mode;
  }

  /** Redraw all dots for a fresh points payload; n is the rank domain size. */
  render(points: PointRow[], n: number, opacity: number): void {
    this.xScale = linearScale(
      0,
      Math.max(1, n - 1),
      this.margin,
      this.width - this.margin,
    );
    this.yScale = linearScale(
      0,
      Math.max(1, n - 1),
      this.height - this.margin,
      this.margin,
    );
    clear(this.plot);
    this.dots.clear();
    for (const p of points) {
      const dot = svgEl("circle", {
        cx: this.xScale(p.x),
        cy: this.yScale(p.y),
        r: 2.5,
        fill: CLASS_COLORS[p.label],
        "fill-opacity": opacity,
        "data-trip": p.trip_id,
      });
      this.plot.appendChild(dot);
      this.dots.set(p.trip_id, dot);
    }
  }

  setOpacity(opacity: number): void {
    for (const dot of this.dots.values()) {
      dot.setAttribute("fill-opacity", String(opacity));
    }
  }

  /** Stroke the dots of the given trips; everything else loses its stroke. */
  highlight(tripIds: number[]): void {
    for (const dot of this.dots.values()) {
      dot.removeAttribute("stroke");
      dot.classList.remove("selected");
    }
    for (const id of tripIds) {
      const dot = this.dots.get(id);
      if (dot) {
        dot.setAttribute("stroke", "#d62728");
        dot.classList.add("selected");
      }
    }
  }

  private localPoint(ev: MouseEvent): [number, number] {
    const rect = this.svg.getBoundingClientRect();
    return [ev.clientX - rect.left, ev.clientY - rect.top];
  }

  private beginDrag(ev: MouseEvent): void {
    const p = this.localPoint(ev);
    this.dragStart = p;
    this.trail = [p];
    clear(this.brushLayer);
  }

  private moveDrag(ev: MouseEvent): void {
    if (!this.dragStart) return;
    const p = this.localPoint(ev);
    if (this.mode === "lasso") this.trail.push(p);
    this.drawBrush(p);
  }

  private endDrag(ev: MouseEvent): void {
    if (!this.dragStart) return;
    const start = this.dragStart;
    const end = this.localPoint(ev);
    this.dragStart = null;
    clear(this.brushLayer);

    if (this.mode === "box") {
      // a click without a drag clears the selection
      if (start[0] === end[0] && start[1] === end[1]) {
        this.onSelect(null);
        return;
      }
      this.onSelect(boxToRectangle(start, end, this.xScale, this.yScale));
    } else {
      if (this.trail.length < 3) {
        this.onSelect(null);
        return;
      }
      this.onSelect(lassoToPolygon(this.trail, this.xScale, this.yScale));
    }
  }

  private drawBrush(current: [number, number]): void {
    clear(this.brushLayer);
    if (!this.dragStart) return;
    if (this.mode === "box") {
      const [x0, x1] =
        this.dragStart[0] <= current[0]
          ? [this.dragStart[0], current[0]]
          : [current[0], this.dragStart[0]];
      const [y0, y1] =
        this.dragStart[1] <= current[1]
          ? [this.dragStart[1], current[1]]
          : [current[1], this.dragStart[1]];
      this.brushLayer.appendChild(
        svgEl("rect", {
          x: x0,
          y: y0,
          width: x1 - x0,
          height: y1 - y0,
          fill: "rgba(120,120,120,0.15)",
          stroke: "#555",
          "stroke-dasharray": "4 2",
        }),
      );
    } else {
      const d = this.trail
        .map(([x, y], i) => `${i === 0 ? "M" : "L"}${x},${y}`)
        .join("");
      this.brushLayer.appendChild(
        svgEl("path", {
          d,
          fill: "rgba(120,120,120,0.15)",
          stroke: "#555",
          "stroke-dasharray": "4 2",
        }),
      );
    }
  }
}
