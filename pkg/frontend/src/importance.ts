import { CLASS_COLORS, clear, el } from "./dom.js";
import type { ImportanceOut } from "./types.js";

/**
 * Feature importance bars.  Rows appear in exactly the order the service
 * returned them (already sorted descending); clicking a row asks the app
 * for that feature's detail view.
 */
export class ImportanceView {
  readonly root: HTMLElement;
  private onFeature: (name: string) => void;

  constructor(container: Element, onFeature: (name: string) => void) {
    this.onFeature = onFeature;
    this.root = el("div", { class: "importance" });
    container.appendChild(this.root);
    this.renderEmpty();
  }

  renderEmpty(): void {
    clear(this.root);
    this.root.appendChild(
      el("p", { class: "empty-state" }, "no trips selected"),
    );
  }

  render(imp: ImportanceOut | null): void {
    if (imp === null || imp.features.length === 0) {
      this.renderEmpty();
      return;
    }
    clear(this.root);
    const grouped = el("p", { class: "group-note" }, `grouped by ${imp.group_by}`);
    this.root.appendChild(grouped);

    const max = Math.max(
      ...imp.features.flatMap((f) =>
        [f.mean_abs_class0, f.mean_abs_class1].filter(
          (v): v is number => v !== null,
        ),
      ),
    );
    const list = el("div", { class: "bar-rows" });
    for (const f of imp.features) {
      const row = el("div", { class: "bar-row", "data-feature": f.name });
      row.appendChild(el("span", { class: "bar-label" }, f.name));
      const bars = el("div", { class: "bars" });
      for (const [cls, value] of [
        [0, f.mean_abs_class0],
        [1, f.mean_abs_class1],
      ] as const) {
        if (value === null) continue;
        const bar = el("div", { class: `bar class${cls}` });
        bar.style.width = `${max > 0 ? (100 * value) / max : 0}%`;
        bar.style.background = CLASS_COLORS[cls];
        bar.title = `class ${cls}: ${value.toPrecision(4)}`;
        bars.appendChild(bar);
      }
      row.appendChild(bars);
      row.addEventListener("click", () => this.onFeature(f.name));
      list.appendChild(row);
    }
    this.root.appendChild(list);
  }
}
