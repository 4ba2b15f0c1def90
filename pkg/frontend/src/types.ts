/** JSON payload shapes of the odflow HTTP service. */

export interface DatasetSummary {
  id: string;
  n_nodes: number;
  n_trips: number;
  n_features: number;
}

export interface PointRow {
  trip_id: number;
  x: number;
  y: number;
  label: number;
  predicted: number;
}

export interface FeatureMetaRow {
  name: string;
  kind: "discrete" | "continuous";
}

export type ClassFilter = "all" | "0" | "1";

export interface RectangleShape {
  kind: "rectangle";
  x0: number;
  x1: number;
  y0: number;
  y1: number;
}

export interface BandShape {
  kind: "band";
  axis: "x" | "y";
  lo: number;
  hi: number;
}

export interface PolygonShape {
  kind: "polygon";
  vertices: [number, number][];
}

export type Shape = RectangleShape | BandShape | PolygonShape;

export interface SelectionRequestBody {
  shape: Shape;
  class_filter?: ClassFilter;
  detail_feature?: string;
  detail_bins?: number;
  group_by?: "label" | "predicted";
}

export interface GeometryRow {
  trip_id: number;
  origin: [number, number];
  dest: [number, number];
  label: number;
}

export interface ImportanceEntry {
  name: string;
  mean_abs_class0: number | null;
  mean_abs_class1: number | null;
}

export interface ImportanceOut {
  group_by: "label" | "predicted";
  features: ImportanceEntry[];
}

export interface ClassEvaluationOut {
  support: number;
  hit_pct: number | null;
  miss_pct: number | null;
}

export interface EvaluationOut {
  class0: ClassEvaluationOut;
  class1: ClassEvaluationOut;
}

export interface FeatureDetailOut {
  name: string;
  kind: "discrete" | "continuous";
  categories: string[] | null;
  bin_edges: number[] | null;
  class0_counts: number[];
  class1_counts: number[];
}

export interface SelectionResponse {
  trip_ids: number[];
  geometry: GeometryRow[];
  importance: ImportanceOut | null;
  evaluation: EvaluationOut | null;
  feature_detail: FeatureDetailOut | null;
}

export interface ErrorBody {
  code: string;
  message: string;
}
