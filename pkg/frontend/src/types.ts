/** Payload shapes served by the explorer API, plus client-side view state. */

export interface RunSummary {
  id: string;
  dataset: string;
  k: number;
  n_series: number;
  selected_length: number;
  ari: number | null;
  baseline_ari: number | null;
}

export interface ElementStats {
  representativity: number[];
  exclusivity: number[];
  crossing_counts: number[];
  cluster: number;
  colored: boolean;
}

export interface GraphNode extends ElementStats {
  id: number;
  x: number;
  y: number;
  angle_bin: number;
  radius: number;
  density: number;
  member_count: number;
}

export interface GraphEdge extends ElementStats {
  src: number;
  dst: number;
  weight: number;
}

export interface GraphPayload {
  id: string;
  length: number;
  lambda: number;
  gamma: number;
  k: number;
  nodes: GraphNode[];
  edges: GraphEdge[];
}

export interface MemberRef {
  series_id: number;
  start: number;
  length: number;
}

export interface NodeDetail {
  id: number;
  length: number;
  members: MemberRef[];
  representativity: number[];
  exclusivity: number[];
  crossing_counts: number[];
}

export interface SeriesPoints {
  id: number;
  n: number;
  values: number[];
}

export type MetricTable = Record<string, Record<string, number> | null>;

export interface ClustersPayload {
  id: string;
  groups: {
    graph: number[][];
    baseline: number[][];
    truth: number[][] | null;
  };
  labels: {
    graph: number[];
    baseline: number[];
    truth: number[] | null;
  };
  series: SeriesPoints[];
  metrics: MetricTable;
}

export interface LengthScore {
  l: number;
  wc: number;
  we: number;
  product: number;
}

export interface UnderhoodPayload {
  id: string;
  length_scores: LengthScore[];
  selected_length: number;
  n_series: number;
  consensus_matrix: number[];
  final_labels: number[];
  feature_shapes: { length: number; rows: number; node_columns: number; edge_columns: number }[];
}

export type FrameName = "comparison" | "graph" | "underhood";

export interface ViewState {
  runId: string | null;
  frame: FrameName;
  lambda: number;
  gamma: number;
  selectedNode: number | null;
  selectedSeries: number | null;
}
