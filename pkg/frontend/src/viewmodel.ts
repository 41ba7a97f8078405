/**
 * Pure payload-to-render-model mapping. Every number shown in the UI is
 * taken verbatim from an API field; nothing statistical is recomputed here.
 */

import type {
  ClustersPayload,
  GraphPayload,
  MemberRef,
  SeriesPoints,
  UnderhoodPayload,
} from "./types";

export const CLUSTER_COLORS = [
  "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1",
  "#76b7b2", "#edc948", "#ff9da7", "#9c755f", "#bab0ac",
];

export const NEUTRAL_COLOR = "#c0c0c0";

export function clusterColor(cluster: number): string {
  return CLUSTER_COLORS[cluster % CLUSTER_COLORS.length];
}

export interface RenderedNode {
  id: number;
  x: number;
  y: number;
  px: number;
  fill: string;
  colored: boolean;
  cluster: number;
  memberCount: number;
}

export interface GraphRenderModel {
  nodes: RenderedNode[];
  links: { source: number; target: number; weight: number; stroke: string }[];
  coloredCount: number;
}

/** Node size grows with the square root of its member count. */
export function nodeRadiusPx(memberCount: number, maxCount: number): number {
  if (maxCount <= 0) return 4;
  return 4 + 14 * Math.sqrt(memberCount / maxCount);
}

export function graphRenderModel(payload: GraphPayload): GraphRenderModel {
  const maxCount = Math.max(0, ...payload.nodes.map((n) => n.member_count));
  const nodes = payload.nodes.map((n) => ({
    id: n.id,
    x: n.x,
    y: n.y,
    px: nodeRadiusPx(n.member_count, maxCount),
    fill: n.colored ? clusterColor(n.cluster) : NEUTRAL_COLOR,
    colored: n.colored,
    cluster: n.cluster,
    memberCount: n.member_count,
  }));
  const links = payload.edges.map((e) => ({
    source: e.src,
    target: e.dst,
    weight: e.weight,
    stroke: e.colored ? clusterColor(e.cluster) : NEUTRAL_COLOR,
  }));
  return { nodes, links, coloredCount: nodes.filter((n) => n.colored).length };
}

export interface ComparisonPanel {
  key: "graph" | "baseline" | "truth";
  title: string;
  ari: number | null;
  groups: number[][];
}

export function comparisonModel(payload: ClustersPayload): ComparisonPanel[] {
  const ariOf = (key: string): number | null => {
    const table = payload.metrics[key];
    return table ? table.ari : null;
  };
  const panels: ComparisonPanel[] = [
    { key: "graph", title: "graph clustering", ari: ariOf("graph"), groups: payload.groups.graph },
    { key: "baseline", title: "baseline k-means", ari: ariOf("baseline"), groups: payload.groups.baseline },
  ];
  if (payload.groups.truth !== null) {
    panels.push({ key: "truth", title: "true labels", ari: null, groups: payload.groups.truth });
  }
  return panels;
}

/** Line color in every panel follows the series' true label. */
export function seriesColor(seriesId: number, truth: number[] | null): string {
  return truth === null ? NEUTRAL_COLOR : clusterColor(truth[seriesId]);
}

export interface UnderhoodModel {
  lengths: number[];
  wc: number[];
  we: number[];
  product: number[];
  selectedIndex: number;
  argmaxIndex: number;
  heatmapOrder: number[];
}

export function underhoodModel(payload: UnderhoodPayload): UnderhoodModel {
  const scores = payload.length_scores;
  const product = scores.map((s) => s.product);
  let argmaxIndex = 0;
  product.forEach((p, i) => {
    if (p > product[argmaxIndex]) argmaxIndex = i;
  });
  // heatmap rows grouped by final label (stable within a label)
  const order = payload.final_labels
    .map((label, index) => ({ label, index }))
    .sort((a, b) => a.label - b.label || a.index - b.index)
    .map((x) => x.index);
  return {
    lengths: scores.map((s) => s.l),
    wc: scores.map((s) => s.wc),
    we: scores.map((s) => s.we),
    product,
    selectedIndex: scores.findIndex((s) => s.l === payload.selected_length),
    argmaxIndex,
    heatmapOrder: order,
  };
}

export interface OverlaySegment {
  seriesId: number;
  from: number;
  to: number;
  values: number[];
}

/** Windows of a node mapped onto their (possibly downsampled) source series. */
export function memberSegments(
  members: MemberRef[],
  series: SeriesPoints[],
): OverlaySegment[] {
  const byId = new Map(series.map((s) => [s.id, s]));
  const segments: OverlaySegment[] = [];
  for (const ref of members) {
    const s = byId.get(ref.series_id);
    if (s === undefined) continue;
    // displayed values may be thinned: map original indices proportionally
    const scale = s.values.length / s.n;
    const from = Math.floor(ref.start * scale);
    const to = Math.min(
      s.values.length,
      Math.ceil((ref.start + ref.length) * scale),
    );
    segments.push({ seriesId: ref.series_id, from, to, values: s.values.slice(from, to) });
  }
  return segments;
}
