import type { ClustersPayload } from "./types";
import { comparisonModel, seriesColor } from "./viewmodel";

const PANEL_W = 420;
const ROW_H = 42;
const PAD = 4;

function polyline(values: number[], width: number, height: number): string {
  const min = Math.min(...values);
  const max = Math.max(...values);
  const span = max - min || 1;
  return values
    .map((v, i) => {
      const x = (i / Math.max(1, values.length - 1)) * width;
      const y = height - ((v - min) / span) * height;
      return `${x.toFixed(1)},${y.toFixed(1)}`;
    })
    .join(" ");
}

/**
 * Side-by-side groupings of the same series under each labeling; line colors
 * always follow the true labels, so a mixed-color group is a visible miss.
 */
export function renderComparison(
  root: HTMLElement,
  payload: ClustersPayload,
  selectedSeries: number | null,
  onSelect: (seriesId: number | null) => void,
): void {
  root.textContent = "";
  const byId = new Map(payload.series.map((s) => [s.id, s]));
  for (const panel of comparisonModel(payload)) {
    const box = document.createElement("section");
    box.className = "panel";
    const title = document.createElement("h3");
    title.textContent =
      panel.ari === null ? panel.title : `${panel.title} — ARI ${panel.ari.toFixed(3)}`;
    box.appendChild(title);

    for (const [groupIdx, group] of panel.groups.entries()) {
      const groupBox = document.createElement("div");
      groupBox.className = "group";
      const label = document.createElement("div");
      label.className = "group-label";
      label.textContent = `cluster ${groupIdx} (${group.length})`;
      groupBox.appendChild(label);

      const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
      svg.setAttribute("width", String(PANEL_W));
      svg.setAttribute("height", String(group.length * ROW_H));
      for (const [row, seriesId] of group.entries()) {
        const series = byId.get(seriesId);
        if (series === undefined) continue;
        const line = document.createElementNS("http://www.w3.org/2000/svg", "polyline");
        line.setAttribute("points", polyline(series.values, PANEL_W - 2 * PAD, ROW_H - 2 * PAD));
        line.setAttribute(
          "transform",
          `translate(${PAD}, ${row * ROW_H + PAD})`,
        );
        line.setAttribute("fill", "none");
        line.setAttribute("stroke", seriesColor(seriesId, payload.labels.truth));
        line.setAttribute("stroke-width", seriesId === selectedSeries ? "2.8" : "1.1");
        line.setAttribute("opacity", selectedSeries === null || seriesId === selectedSeries ? "1" : "0.35");
        line.setAttribute("data-series", String(seriesId));
        line.style.cursor = "pointer";
        line.addEventListener("click", () =>
          onSelect(seriesId === selectedSeries ? null : seriesId),
        );
        svg.appendChild(line);
      }
      groupBox.appendChild(svg);
      box.appendChild(groupBox);
    }
    root.appendChild(box);
  }
}
