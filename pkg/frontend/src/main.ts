import { ApiClient, debounce } from "./api";
import { renderComparison } from "./comparison";
import { renderGraph, renderNodeDetail } from "./graph";
import { Store } from "./state";
import type { ClustersPayload, FrameName } from "./types";
import { renderUnderhood } from "./underhood";

const API_BASE = import.meta.env?.VITE_API_BASE ?? "";

const api = new ApiClient(API_BASE);
const store = new Store();

const el = (id: string): HTMLElement => {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing #${id}`);
  return node;
};

function showError(message: string): void {
  const banner = el("error-banner");
  banner.textContent = `${message} — retry by switching runs or adjusting a slider`;
  banner.style.display = "block";
}

function clearError(): void {
  el("error-banner").style.display = "none";
}

let clustersCache: ClustersPayload | null = null;

async function refreshComparison(runId: string): Promise<void> {
  try {
    clustersCache = await api.clusters(runId);
    clearError();
    renderComparison(el("frame-comparison"), clustersCache, store.get().selectedSeries, (sid) =>
      store.update({ selectedSeries: sid }),
    );
  } catch (err) {
    showError(`comparison fetch failed: ${String(err)}`);
  }
}

async function refreshGraph(runId: string): Promise<void> {
  const { lambda, gamma, selectedNode } = store.get();
  try {
    const payload = await api.graph(runId, lambda, gamma);
    if (payload === null) return; // a newer request superseded this one
    clearError();
    renderGraph(el("graph-canvas"), payload, selectedNode, (nodeId) =>
      store.update({ selectedNode: nodeId }),
    );
  } catch (err) {
    showError(`graph fetch failed: ${String(err)}`); // previous render stays up
  }
}

async function refreshNodeDetail(runId: string, nodeId: number): Promise<void> {
  try {
    const detail = await api.node(runId, nodeId);
    renderNodeDetail(el("node-detail"), detail, clustersCache?.series ?? []);
  } catch (err) {
    showError(`node fetch failed: ${String(err)}`);
  }
}

async function refreshUnderhood(runId: string): Promise<void> {
  try {
    renderUnderhood(el("frame-underhood"), await api.underhood(runId));
    clearError();
  } catch (err) {
    showError(`diagnostics fetch failed: ${String(err)}`);
  }
}

function refreshAll(runId: string): void {
  void refreshComparison(runId);
  void refreshGraph(runId);
  void refreshUnderhood(runId);
}

const debouncedGraphRefresh = debounce((runId: string) => void refreshGraph(runId), 150);

function wireControls(): void {
  for (const frame of ["comparison", "graph", "underhood"] as FrameName[]) {
    el(`tab-${frame}`).addEventListener("click", () => store.setFrame(frame));
  }
  const lambdaSlider = el("lambda-slider") as HTMLInputElement;
  const gammaSlider = el("gamma-slider") as HTMLInputElement;
  lambdaSlider.addEventListener("input", () => {
    store.update({ lambda: Number(lambdaSlider.value) });
  });
  gammaSlider.addEventListener("input", () => {
    store.update({ gamma: Number(gammaSlider.value) });
  });
}

let lastRun: string | null = null;
let lastThresholds = "";
let lastNode: number | null = null;

store.subscribe((state) => {
  document.body.dataset.frame = state.frame;
  el("lambda-value").textContent = state.lambda.toFixed(2);
  el("gamma-value").textContent = state.gamma.toFixed(2);
  if (state.runId === null) return;

  if (state.runId !== lastRun) {
    lastRun = state.runId;
    lastThresholds = `${state.lambda}|${state.gamma}`;
    lastNode = null;
    el("node-detail").textContent = "";
    refreshAll(state.runId);
    return;
  }
  const thresholds = `${state.lambda}|${state.gamma}`;
  if (thresholds !== lastThresholds) {
    lastThresholds = thresholds;
    debouncedGraphRefresh(state.runId);
  }
  if (state.selectedNode !== lastNode) {
    lastNode = state.selectedNode;
    void refreshGraph(state.runId);
    if (state.selectedNode !== null) void refreshNodeDetail(state.runId, state.selectedNode);
  }
  if (clustersCache !== null) {
    renderComparison(el("frame-comparison"), clustersCache, state.selectedSeries, (sid) =>
      store.update({ selectedSeries: sid }),
    );
  }
});

async function boot(): Promise<void> {
  wireControls();
  try {
    const runs = await api.runs();
    const select = el("run-select") as HTMLSelectElement;
    select.textContent = "";
    for (const run of runs) {
      const option = document.createElement("option");
      option.value = run.id;
      const ari = run.ari === null ? "" : ` ARI ${run.ari.toFixed(2)}`;
      option.textContent = `${run.dataset} (k=${run.k}, n=${run.n_series})${ari}`;
      select.appendChild(option);
    }
    select.addEventListener("change", () => store.update({ runId: select.value }));
    if (runs.length > 0) store.update({ runId: runs[0].id });
  } catch (err) {
    showError(`cannot list runs: ${String(err)}`);
  }
}

void boot();
