import { ApiClient } from "./api.js";
import { el } from "./dom.js";
import { FeatureDetailView } from "./detail.js";
import { EvaluationView } from "./evaluation.js";
import { ImportanceView } from "./importance.js";
import { TripMapView } from "./mapview.js";
import { OdPlotView } from "./odplot.js";
import {
  SequenceGate,
  classParam,
  clampOpacity,
  initialState,
} from "./state.js";
import type { BrushMode, ClassRadio, ViewState } from "./state.js";
import type {
  DatasetSummary,
  PointRow,
  SelectionRequestBody,
  Shape,
} from "./types.js";

const DETAIL_BINS = 20;

/**
 * Single-page wiring of the five linked views.  All analytics come from
 * service responses; this class only routes state and payloads.
 */
export class App {
  readonly state: ViewState = initialState();
  readonly odplot: OdPlotView;
  readonly map: TripMapView;
  readonly importance: ImportanceView;
  readonly evaluation: EvaluationView;
  readonly detail: FeatureDetailView;
  readonly banner: HTMLElement;
  currentPoints: PointRow[] = [];

  private api: ApiClient;
  private gate = new SequenceGate();
  private datasets = new Map<string, DatasetSummary>();
  private datasetSelect: HTMLSelectElement;

  constructor(root: Element, api: ApiClient) {
    this.api = api;

    const controls = el("div", { class: "controls" });
    this.datasetSelect = el("select", { class: "dataset-select" });
    this.datasetSelect.addEventListener("change", () => {
      void this.selectDataset(this.datasetSelect.value);
    });
    controls.appendChild(label("dataset", this.datasetSelect));
    controls.appendChild(this.classRadios());
    controls.appendChild(this.opacitySlider());
    controls.appendChild(this.brushRadios());

    this.banner = el("div", { class: "error-banner" });
    this.banner.hidden = true;

    const grid = el("div", { class: "view-grid" });
    const odplotPanel = panel(grid, "OD plot");
    const mapPanel = panel(grid, "trip map");
    const importancePanel = panel(grid, "feature importance");
    const evaluationPanel = panel(grid, "model evaluation");
    const detailPanel = panel(grid, "feature detail");

    this.odplot = new OdPlotView(odplotPanel, {
      onSelect: (shape) => this.onGesture(shape),
    });
    this.map = new TripMapView(mapPanel);
    this.importance = new ImportanceView(importancePanel, (name) =>
      this.onFeatureClick(name),
    );
    this.evaluation = new EvaluationView(evaluationPanel);
    this.detail = new FeatureDetailView(detailPanel);

    root.appendChild(controls);
    root.appendChild(this.banner);
    root.appendChild(grid);
  }

  async init(): Promise<void> {
    let summaries: DatasetSummary[];
    try {
      summaries = await this.api.listDatasets();
    } catch (err) {
      this.showError(err);
      return;
    }
    this.clearError();
    this.datasets = new Map(summaries.map((d) => [d.id, d]));
    for (const d of summaries) {
      const opt = el("option", { value: d.id }, `${d.id} (${d.n_trips} trips)`);
      this.datasetSelect.appendChild(opt);
    }
    if (summaries.length > 0) {
      await this.selectDataset(summaries[0].id);
    }
  }

  async selectDataset(id: string): Promise<void> {
    this.state.dataset = id;
    this.state.selection = null;
    this.state.feature = null;
    this.clearLinkedViews();
    await this.loadPoints();
  }

  async loadPoints(): Promise<void> {
    const dataset = this.state.dataset;
    if (dataset === null) return;
    const seq = this.gate.issue("points");
    try {
      const points = await this.api.points(
        dataset,
        classParam(this.state.classRadio),
      );
      if (!this.gate.isCurrent("points", seq)) return;
      this.clearError();
      this.currentPoints = points;
      const n = this.datasets.get(dataset)?.n_nodes ?? 0;
      this.odplot.render(points, n, this.state.opacity);
    } catch (err) {
      if (this.gate.isCurrent("points", seq)) this.showError(err);
    }
  }

  onGesture(shape: Shape | null): void {
    this.state.selection = shape;
    this.state.feature = null;
    if (shape === null) {
      this.clearLinkedViews();
      return;
    }
    void this.issueSelection();
  }

  onFeatureClick(name: string): void {
    this.state.feature = name;
    void this.issueSelection();
  }

  setClassRadio(radio: ClassRadio): void {
    this.state.classRadio = radio;
    void this.loadPoints();
    if (this.state.selection !== null) void this.issueSelection();
  }

  setOpacity(value: number): void {
    this.state.opacity = clampOpacity(value);
    this.odplot.setOpacity(this.state.opacity);
  }

  setBrushMode(mode: BrushMode): void {
    this.state.brushMode = mode;
    this.odplot.setMode(mode);
  }

  /** POST the current selection; state.feature decides whether detail rides along. */
  async issueSelection(): Promise<void> {
    const dataset = this.state.dataset;
    const shape = this.state.selection;
    if (dataset === null || shape === null) return;
    const body: SelectionRequestBody = {
      shape,
      class_filter: classParam(this.state.classRadio),
    };
    if (this.state.feature !== null) {
      body.detail_feature = this.state.feature;
      body.detail_bins = DETAIL_BINS;
    }
    const seq = this.gate.issue("report");
    try {
      const report = await this.api.selection(dataset, body);
      if (!this.gate.isCurrent("report", seq)) return;
      this.clearError();
      this.odplot.highlight(report.trip_ids);
      this.map.render(report.geometry);
      this.importance.render(report.importance);
      this.evaluation.render(report.evaluation);
      this.detail.render(report.feature_detail);
    } catch (err) {
      if (this.gate.isCurrent("report", seq)) this.showError(err);
    }
  }

  private clearLinkedViews(): void {
    this.odplot.highlight([]);
    this.map.renderEmpty();
    this.importance.renderEmpty();
    this.evaluation.renderEmpty();
    this.detail.renderEmpty();
  }

  private showError(err: unknown): void {
    this.banner.textContent =
      err instanceof Error ? err.message : String(err);
    this.banner.hidden = false;
  }

  private clearError(): void {
    this.banner.hidden = true;
    this.banner.textContent = "";
  }

  private classRadios(): HTMLElement {
    const group = el("span", { class: "radio-group class-radios" });
    const options: [ClassRadio, string][] = [
      ["all", "all trips"],
      ["with", "with incident"],
      ["without", "without incident"],
    ];
    for (const [value, text] of options) {
      const input = el("input", {
        type: "radio",
        name: "class-radio",
        value,
      });
      if (value === this.state.classRadio) input.checked = true;
      input.addEventListener("change", () => this.setClassRadio(value));
      const wrap = el("label", { class: "radio" });
      wrap.appendChild(input);
      wrap.appendChild(document.createTextNode(text));
      group.appendChild(wrap);
    }
    return group;
  }

  private opacitySlider(): HTMLElement {
    const input = el("input", {
      type: "range",
      min: "0",
      max: "1",
      step: "0.05",
      value: String(this.state.opacity),
      class: "opacity-slider",
    });
    input.addEventListener("input", () =>
      this.setOpacity(Number(input.value)),
    );
    return label("opacity", input);
  }

  private brushRadios(): HTMLElement {
    const group = el("span", { class: "radio-group brush-radios" });
    for (const mode of ["box", "lasso"] as const) {
      const input = el("input", {
        type: "radio",
        name: "brush-radio",
        value: mode,
      });
      if (mode === this.state.brushMode) input.checked = true;
      input.addEventListener("change", () => this.setBrushMode(mode));
      const wrap = el("label", { class: "radio" });
      wrap.appendChild(input);
      wrap.appendChild(document.createTextNode(mode));
      group.appendChild(wrap);
    }
    return group;
  }
}

function label(text: string, control: Element): HTMLElement {
  const wrap = el("label", { class: "control" });
  wrap.appendChild(el("span", {}, text));
  wrap.appendChild(control);
  return wrap;
}

function panel(grid: Element, title: string): HTMLElement {
  const section = el("section", { class: "panel" });
  section.appendChild(el("h3", {}, title));
  grid.appendChild(section);
  return section;
}
