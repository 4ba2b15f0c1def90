import { CLASS_COLORS, clear, el, svgEl } from "./dom.js";
import type { FeatureDetailOut } from "./types.js";

export interface DetailOptions {
  width?: number;
  rowHeight?: number;
}

/**
 * Per-feature distribution of the selection: two column charts, one per
 * class, stacked around a single shared row of axis labels so the same
 * column always means the same bin in both.
 */
export class FeatureDetailView {
  readonly root: HTMLElement;
  private width: number;
  private rowHeight: number;

  constructor(container: Element, opts: DetailOptions = {}) {
    this.width = opts.width ?? 420;
    this.rowHeight = opts.rowHeight ?? 90;
    this.root = el("div", { class: "feature-detail" });
    container.appendChild(this.root);
    this.renderEmpty();
  }

  renderEmpty(): void {
    clear(this.root);
    this.root.appendChild(
      el("p", { class: "empty-state" }, "click an importance bar"),
    );
  }

  render(detail: FeatureDetailOut | null): void {
    if (detail === null) {
      this.renderEmpty();
      return;
    }
    clear(this.root);
    this.root.appendChild(
      el("p", { class: "detail-title" }, `${detail.name} (${detail.kind})`),
    );

    const labels = axisLabels(detail);
    const k = labels.length;
    const labelBand = 18;
    const height = 2 * this.rowHeight + labelBand;
    const svg = svgEl("svg", {
      width: this.width,
      height,
      viewBox: `0 0 ${this.width} ${height}`,
    });
    const colWidth = this.width / Math.max(1, k);
    const maxCount = Math.max(1, ...detail.class0_counts, ...detail.class1_counts);

    // class 0 columns grow upward above the label band, class 1 downward
    const series: [number, number[], (h: number) => number][] = [
      [0, detail.class0_counts, (h) => this.rowHeight - h],
      [1, detail.class1_counts, () => this.rowHeight + labelBand],
    ];
    for (const [cls, counts, yFor] of series) {
      const g = svgEl("g", { class: `detail-series class${cls}` });
      counts.forEach((count, i) => {
        const h = (count / maxCount) * (this.rowHeight - 4);
        g.appendChild(
          svgEl("rect", {
            x: i * colWidth + 2,
            y: yFor(h),
            width: Math.max(1, colWidth - 4),
            height: h,
            fill: CLASS_COLORS[cls],
            "data-count": count,
          }),
        );
      });
      svg.appendChild(g);
    }

    const labelRow = svgEl("g", { class: "detail-labels" });
    labels.forEach((text, i) => {
      const t = svgEl("text", {
        x: i * colWidth + colWidth / 2,
        y: this.rowHeight + labelBand - 5,
        "text-anchor": "middle",
        class: "axis-label",
      });
      t.textContent = text;
      labelRow.appendChild(t);
    });
    svg.appendChild(labelRow);
    this.root.appendChild(svg);
  }
}

/** One label per column, shared by both class charts. */
export function axisLabels(detail: FeatureDetailOut): string[] {
  if (detail.categories !== null) return detail.categories;
  const edges = detail.bin_edges ?? [];
  const out: string[] = [];
  for (let i = 0; i + 1 < edges.length; i++) {
    out.push(`${compact(edges[i])}–${compact(edges[i + 1])}`);
  }
  return out;
}

function compact(v: number): string {
  return Number(v.toPrecision(3)).toString();
}
