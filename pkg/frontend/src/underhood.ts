import type { UnderhoodPayload } from "./types";
import { clusterColor, underhoodModel } from "./viewmodel";

const CHART_W = 640;
const CHART_H = 240;
const PAD = 36;

function seriesPath(xs: number[], ys: number[], yMin: number, yMax: number): string {
  const xMin = xs[0];
  const xMax = xs[xs.length - 1] || 1;
  const span = yMax - yMin || 1;
  return xs
    .map((x, i) => {
      const px = PAD + ((x - xMin) / (xMax - xMin || 1)) * (CHART_W - 2 * PAD);
      const py = CHART_H - PAD - ((ys[i] - yMin) / span) * (CHART_H - 2 * PAD);
      return `${i === 0 ? "M" : "L"}${px.toFixed(1)},${py.toFixed(1)}`;
    })
    .join(" ");
}

/** Score curves per candidate length with the selected length marked. */
export function renderScoreChart(root: HTMLElement, payload: UnderhoodPayload): void {
  const model = underhoodModel(payload);
  const values = [...model.wc, ...model.we, ...model.product];
  const yMin = Math.min(0, ...values);
  const yMax = Math.max(1, ...values);

  const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  svg.setAttribute("width", String(CHART_W));
  svg.setAttribute("height", String(CHART_H));

  const curves: [string, number[], string][] = [
    ["consistency (wc)", model.wc, "#4e79a7"],
    ["interpretability (we)", model.we, "#59a14f"],
    ["product", model.product, "#e15759"],
  ];
  for (const [, ys, stroke] of curves) {
    const path = document.createElementNS("http://www.w3.org/2000/svg", "path");
    path.setAttribute("d", seriesPath(model.lengths, ys, yMin, yMax));
    path.setAttribute("fill", "none");
    path.setAttribute("stroke", stroke);
    path.setAttribute("stroke-width", "2");
    svg.appendChild(path);
  }

  // vertical marker at the selected length (the product argmax)
  const xMin = model.lengths[0];
  const xMax = model.lengths[model.lengths.length - 1] || 1;
  const selX =
    PAD +
    ((model.lengths[model.selectedIndex] - xMin) / (xMax - xMin || 1)) * (CHART_W - 2 * PAD);
  const marker = document.createElementNS("http://www.w3.org/2000/svg", "line");
  marker.setAttribute("x1", selX.toFixed(1));
  marker.setAttribute("x2", selX.toFixed(1));
  marker.setAttribute("y1", String(PAD / 2));
  marker.setAttribute("y2", String(CHART_H - PAD));
  marker.setAttribute("stroke", "#111");
  marker.setAttribute("stroke-dasharray", "4 3");
  marker.setAttribute("data-selected-length", String(payload.selected_length));
  svg.appendChild(marker);

  const legend = document.createElement("div");
  legend.className = "legend";
  legend.textContent =
    curves.map(([name]) => name).join(" / ") +
    ` — selected length ${payload.selected_length}`;
  root.appendChild(svg);
  root.appendChild(legend);
}

/** Consensus heatmap with rows/columns grouped by the final labels. */
export function renderConsensusHeatmap(root: HTMLElement, payload: UnderhoodPayload): void {
  const model = underhoodModel(payload);
  const n = payload.n_series;
  const cell = Math.max(2, Math.floor(320 / n));
  const canvas = document.createElement("canvas");
  canvas.width = n * cell + 60;
  canvas.height = n * cell;
  root.appendChild(canvas);
  const ctx = canvas.getContext("2d");
  if (ctx === null) return; // no 2-D context in non-browser DOMs
  for (let i = 0; i < n; i += 1) {
    for (let j = 0; j < n; j += 1) {
      const value = payload.consensus_matrix[model.heatmapOrder[i] * n + model.heatmapOrder[j]];
      const shade = Math.round(255 * (1 - value));
      ctx.fillStyle = `rgb(${shade},${shade},255)`;
      ctx.fillRect(j * cell, i * cell, cell, cell);
    }
  }
  // cluster key alongside the rows
  for (let i = 0; i < n; i += 1) {
    ctx.fillStyle = clusterColor(payload.final_labels[model.heatmapOrder[i]]);
    ctx.fillRect(n * cell + 6, i * cell, 10, cell);
  }
}

export function renderUnderhood(root: HTMLElement, payload: UnderhoodPayload): void {
  root.textContent = "";
  const chartBox = document.createElement("section");
  chartBox.className = "panel";
  const chartTitle = document.createElement("h3");
  chartTitle.textContent = "per-length scores";
  chartBox.appendChild(chartTitle);
  renderScoreChart(chartBox, payload);
  root.appendChild(chartBox);

  const heatBox = document.createElement("section");
  heatBox.className = "panel";
  const heatTitle = document.createElement("h3");
  heatTitle.textContent = "consensus matrix (rows ordered by final labels)";
  heatBox.appendChild(heatTitle);
  renderConsensusHeatmap(heatBox, payload);
  root.appendChild(heatBox);

  const shapes = document.createElement("section");
  shapes.className = "panel";
  const shapesTitle = document.createElement("h3");
  shapesTitle.textContent = "feature matrices";
  shapes.appendChild(shapesTitle);
  const list = document.createElement("ul");
  for (const shape of payload.feature_shapes) {
    const item = document.createElement("li");
    item.textContent =
      `length ${shape.length}: ${shape.rows} x ` +
      `(${shape.node_columns} node + ${shape.edge_columns} edge columns)`;
    list.appendChild(item);
  }
  shapes.appendChild(list);
  root.appendChild(shapes);
}
