import {
  forceCenter,
  forceCollide,
  forceLink,
  forceManyBody,
  forceSimulation,
  type SimulationLinkDatum,
  type SimulationNodeDatum,
} from "d3-force";

import type { GraphPayload, NodeDetail, SeriesPoints } from "./types";
import {
  clusterColor,
  graphRenderModel,
  memberSegments,
  type RenderedNode,
} from "./viewmodel";

const WIDTH = 760;
const HEIGHT = 560;

interface SimNode extends SimulationNodeDatum, Omit<RenderedNode, "x" | "y"> {}

/**
 * Force layout seeded from the embedding geometry: initial positions are the
 * nodes' projected coordinates, so the same run always settles into the same
 * picture (d3-force itself is deterministic for identical input).
 */
export function layoutPositions(payload: GraphPayload): Map<number, { x: number; y: number }> {
  const model = graphRenderModel(payload);
  const scale = 40;
  const nodes: SimNode[] = model.nodes.map((n) => ({
    ...n,
    x: WIDTH / 2 + n.x * scale,
    y: HEIGHT / 2 + n.y * scale,
  }));
  const links: SimulationLinkDatum<SimNode>[] = model.links.map((l) => ({
    source: l.source,
    target: l.target,
  }));
  const simulation = forceSimulation(nodes)
    .force("charge", forceManyBody().strength(-18))
    .force(
      "link",
      forceLink<SimNode, SimulationLinkDatum<SimNode>>(links)
        .id((d) => d.id)
        .distance(36)
        .strength(0.2),
    )
    .force("center", forceCenter(WIDTH / 2, HEIGHT / 2))
    .force("collide", forceCollide<SimNode>().radius((d) => d.px + 1))
    .stop();
  for (let i = 0; i < 200; i += 1) simulation.tick();
  return new Map(nodes.map((n) => [n.id, { x: n.x ?? 0, y: n.y ?? 0 }]));
}

function statBars(title: string, values: number[]): HTMLElement {
  const box = document.createElement("div");
  box.className = "stat-bars";
  const caption = document.createElement("div");
  caption.textContent = title;
  box.appendChild(caption);
  values.forEach((value, cluster) => {
    const row = document.createElement("div");
    row.className = "bar-row";
    const bar = document.createElement("span");
    bar.className = "bar";
    bar.style.width = `${Math.round(value * 120)}px`;
    bar.style.background = clusterColor(cluster);
    const text = document.createElement("span");
    text.textContent = ` c${cluster}: ${value.toFixed(2)}`;
    row.appendChild(bar);
    row.appendChild(text);
    box.appendChild(row);
  });
  return box;
}

export function renderNodeDetail(
  root: HTMLElement,
  detail: NodeDetail,
  series: SeriesPoints[],
): void {
  root.textContent = "";
  const head = document.createElement("h4");
  head.textContent = `node ${detail.id} — ${detail.members.length} windows of length ${detail.length}`;
  root.appendChild(head);
  root.appendChild(statBars("representativity per cluster", detail.representativity));
  root.appendChild(statBars("exclusivity per cluster", detail.exclusivity));

  // member windows highlighted on their source series
  const segments = memberSegments(detail.members, series);
  const shown = new Map<number, typeof segments>();
  for (const segment of segments) {
    const bucket = shown.get(segment.seriesId) ?? [];
    bucket.push(segment);
    shown.set(segment.seriesId, bucket);
  }
  const byId = new Map(series.map((s) => [s.id, s]));
  for (const [seriesId, bucket] of [...shown.entries()].slice(0, 6)) {
    const s = byId.get(seriesId);
    if (s === undefined) continue;
    const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
    const w = 420;
    const h = 46;
    svg.setAttribute("width", String(w));
    svg.setAttribute("height", String(h));
    const min = Math.min(...s.values);
    const span = Math.max(...s.values) - min || 1;
    const toXY = (v: number, i: number) =>
      `${((i / Math.max(1, s.values.length - 1)) * w).toFixed(1)},${(
        h - ((v - min) / span) * h
      ).toFixed(1)}`;
    const base = document.createElementNS("http://www.w3.org/2000/svg", "polyline");
    base.setAttribute("points", s.values.map(toXY).join(" "));
    base.setAttribute("fill", "none");
    base.setAttribute("stroke", "#ccc");
    svg.appendChild(base);
    for (const segment of bucket) {
      const mark = document.createElementNS("http://www.w3.org/2000/svg", "polyline");
      mark.setAttribute(
        "points",
        segment.values.map((v, i) => toXY(v, segment.from + i)).join(" "),
      );
      mark.setAttribute("fill", "none");
      mark.setAttribute("stroke", "#e15759");
      mark.setAttribute("stroke-width", "2");
      svg.appendChild(mark);
    }
    const label = document.createElement("div");
    label.className = "overlay-label";
    label.textContent = `series ${seriesId}`;
    root.appendChild(label);
    root.appendChild(svg);
  }
}

export function renderGraph(
  root: HTMLElement,
  payload: GraphPayload,
  selectedNode: number | null,
  onNodeClick: (nodeId: number) => void,
): void {
  root.textContent = "";
  const model = graphRenderModel(payload);
  const positions = layoutPositions(payload);

  const summary = document.createElement("div");
  summary.className = "graph-summary";
  summary.textContent =
    `length ${payload.length}: ${model.nodes.length} nodes, ` +
    `${model.links.length} edges, ${model.coloredCount} colored ` +
    `(lambda=${payload.lambda}, gamma=${payload.gamma})`;
  root.appendChild(summary);

  const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  svg.setAttribute("width", String(WIDTH));
  svg.setAttribute("height", String(HEIGHT));
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);

  for (const link of model.links) {
    const a = positions.get(link.source);
    const b = positions.get(link.target);
    if (a === undefined || b === undefined) continue;
    const line = document.createElementNS("http://www.w3.org/2000/svg", "line");
    line.setAttribute("x1", a.x.toFixed(1));
    line.setAttribute("y1", a.y.toFixed(1));
    line.setAttribute("x2", b.x.toFixed(1));
    line.setAttribute("y2", b.y.toFixed(1));
    line.setAttribute("stroke", link.stroke);
    line.setAttribute("stroke-width", String(Math.min(4, 0.5 + Math.log1p(link.weight))));
    line.setAttribute("opacity", "0.45");
    svg.appendChild(line);
  }
  for (const node of model.nodes) {
    const p = positions.get(node.id);
    if (p === undefined) continue;
    const circle = document.createElementNS("http://www.w3.org/2000/svg", "circle");
    circle.setAttribute("cx", p.x.toFixed(1));
    circle.setAttribute("cy", p.y.toFixed(1));
    circle.setAttribute("r", node.px.toFixed(1));
    circle.setAttribute("fill", node.fill);
    circle.setAttribute("stroke", node.id === selectedNode ? "#111" : "#fff");
    circle.setAttribute("stroke-width", node.id === selectedNode ? "2.5" : "1");
    circle.setAttribute("data-node", String(node.id));
    circle.style.cursor = "pointer";
    const tooltip = document.createElementNS("http://www.w3.org/2000/svg", "title");
    tooltip.textContent = `node ${node.id}: ${node.memberCount} windows, cluster ${node.cluster}`;
    circle.appendChild(tooltip);
    circle.addEventListener("click", () => onNodeClick(node.id));
    svg.appendChild(circle);
  }
  root.appendChild(svg);
}
