import { beforeEach, describe, expect, it } from "vitest";

import { renderComparison } from "../src/comparison";
import { renderGraph, renderNodeDetail } from "../src/graph";
import { Store } from "../src/state";
import type { ClustersPayload, GraphPayload, NodeDetail, UnderhoodPayload } from "../src/types";
import { renderUnderhood } from "../src/underhood";

import clustersFixture from "./fixtures/clusters.json";
import gamma00 from "./fixtures/graph_gamma00.json";
import nodeDetailFixture from "./fixtures/node_detail.json";
import underhoodFixture from "./fixtures/underhood.json";

const clusters = clustersFixture as unknown as ClustersPayload;
const graph = gamma00 as unknown as GraphPayload;
const underhood = underhoodFixture as unknown as UnderhoodPayload;
const nodeDetail = nodeDetailFixture as unknown as NodeDetail;

let root: HTMLElement;

beforeEach(() => {
  document.body.innerHTML = "<div id='root'></div>";
  root = document.getElementById("root")!;
});

describe("comparison frame", () => {
  it("renders one panel per grouping with its ARI", () => {
    renderComparison(root, clusters, null, () => {});
    const headers = [...root.querySelectorAll("h3")].map((h) => h.textContent ?? "");
    expect(headers).toHaveLength(3);
    const graphAri = clusters.metrics.graph!.ari;
    expect(headers[0]).toContain(`ARI ${graphAri.toFixed(3)}`);
    expect(root.querySelectorAll("polyline").length).toBeGreaterThan(0);
  });

  it("reports clicks on a series", () => {
    let clicked: number | null = null;
    renderComparison(root, clusters, null, (sid) => {
      clicked = sid;
    });
    const line = root.querySelector("polyline[data-series='0']") as SVGPolylineElement;
    line.dispatchEvent(new MouseEvent("click"));
    expect(clicked).toBe(0);
  });
});

describe("graph frame", () => {
  it("renders a circle per node, all colored at zero thresholds", () => {
    renderGraph(root, graph, null, () => {});
    const circles = root.querySelectorAll("circle");
    expect(circles.length).toBe(graph.nodes.length);
    const fills = new Set([...circles].map((c) => c.getAttribute("fill")));
    expect(fills.has("#c0c0c0")).toBe(false);
  });

  it("routes node clicks to the handler", () => {
    let clicked: number | null = null;
    renderGraph(root, graph, null, (nid) => {
      clicked = nid;
    });
    const target = root.querySelector(
      `circle[data-node='${graph.nodes[0].id}']`,
    ) as SVGCircleElement;
    target.dispatchEvent(new MouseEvent("click"));
    expect(clicked).toBe(graph.nodes[0].id);
  });

  it("renders node detail with stat bars and overlays", () => {
    renderNodeDetail(root, nodeDetail, clusters.series);
    expect(root.querySelector("h4")?.textContent).toContain(`node ${nodeDetail.id}`);
    expect(root.querySelectorAll(".stat-bars")).toHaveLength(2);
    expect(root.querySelectorAll("svg").length).toBeGreaterThan(0);
  });
});

describe("under-the-hood frame", () => {
  it("marks the selected length on the chart", () => {
    renderUnderhood(root, underhood);
    const marker = root.querySelector("[data-selected-length]");
    expect(marker?.getAttribute("data-selected-length")).toBe(
      String(underhood.selected_length),
    );
    expect(root.querySelectorAll("path").length).toBe(3);
    expect(root.querySelector("canvas")).not.toBeNull();
  });
});

describe("view state", () => {
  it("clamps thresholds and resets selections on run switch", () => {
    const store = new Store();
    store.update({ lambda: 1.7, gamma: -0.3 });
    expect(store.get().lambda).toBe(1);
    expect(store.get().gamma).toBe(0);
    store.update({ runId: "a", selectedNode: 5, selectedSeries: 2 });
    expect(store.get().selectedNode).toBe(5);
    store.update({ runId: "b" });
    expect(store.get().selectedNode).toBeNull();
    expect(store.get().selectedSeries).toBeNull();
  });

  it("notifies subscribers with fresh snapshots", () => {
    const store = new Store();
    const frames: string[] = [];
    store.subscribe((s) => frames.push(s.frame));
    store.setFrame("graph");
    store.setFrame("underhood");
    expect(frames).toEqual(["graph", "underhood"]);
  });
});
