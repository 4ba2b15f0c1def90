import { CLASS_COLORS, clear, el } from "./dom.js";
import type { ClassEvaluationOut, EvaluationOut } from "./types.js";

const CLASS_TITLES = ["without incident", "with incident"];

/**
 * Classifier performance on the selection: one row per class, hit bar
 * opaque, miss bar translucent, percentages verbatim from the service.
 */
export class EvaluationView {
  readonly root: HTMLElement;

  constructor(container: Element) {
    this.root = el("div", { class: "evaluation" });
    container.appendChild(this.root);
    this.renderEmpty();
  }

  renderEmpty(): void {
    clear(this.root);
    this.root.appendChild(
      el("p", { class: "empty-state" }, "no trips selected"),
    );
  }

  render(ev: EvaluationOut | null): void {
    if (ev === null) {
      this.renderEmpty();
      return;
    }
    clear(this.root);
    this.root.appendChild(this.classRow(0, ev.class0));
    this.root.appendChild(this.classRow(1, ev.class1));
  }

  private classRow(cls: 0 | 1, out: ClassEvaluationOut): HTMLElement {
    const row = el("div", { class: `eval-row class${cls}` });
    row.appendChild(
      el(
        "span",
        { class: "eval-label" },
        `${CLASS_TITLES[cls]} (${out.support})`,
      ),
    );
    if (out.hit_pct === null || out.miss_pct === null) {
      row.appendChild(el("span", { class: "empty-state" }, "no trips"));
      return row;
    }
    const bars = el("div", { class: "eval-bars" });
    const hit = el("div", { class: "eval-bar hit" });
    hit.style.width = `${out.hit_pct}%`;
    hit.style.background = CLASS_COLORS[cls];
    hit.style.opacity = "1";
    const miss = el("div", { class: "eval-bar miss" });
    miss.style.width = `${out.miss_pct}%`;
    miss.style.background = CLASS_COLORS[cls];
    miss.style.opacity = "0.35";
    bars.appendChild(hit);
    bars.appendChild(miss);
    row.appendChild(bars);
    row.appendChild(
      el(
        "span",
        { class: "eval-pct" },
        `${out.hit_pct.toFixed(1)}% hit / ${out.miss_pct.toFixed(1)}% miss`,
      ),
    );
    return row;
  }
}
