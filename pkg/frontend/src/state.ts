import type { FrameName, ViewState } from "./types";

type Listener = (state: ViewState) => void;

const CLAMP = (x: number) => Math.min(1, Math.max(0, x));

/** Single source of truth for the UI; notifies subscribers on every change. */
export class Store {
  private state: ViewState = {
    runId: null,
    frame: "comparison",
    lambda: 0.8,
    gamma: 0.8,
    selectedNode: null,
    selectedSeries: null,
  };
  private listeners: Listener[] = [];

  get(): ViewState {
    return { ...this.state };
  }

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  update(patch: Partial<ViewState>): void {
    if (patch.lambda !== undefined) patch.lambda = CLAMP(patch.lambda);
    if (patch.gamma !== undefined) patch.gamma = CLAMP(patch.gamma);
    const previous = this.state;
    this.state = { ...previous, ...patch };
    // switching run invalidates selections unless the patch re-specifies them
    if (patch.runId !== undefined && patch.runId !== previous.runId) {
      if (patch.selectedNode === undefined) this.state.selectedNode = null;
      if (patch.selectedSeries === undefined) this.state.selectedSeries = null;
    }
    for (const listener of this.listeners) listener(this.get());
  }

  setFrame(frame: FrameName): void {
    this.update({ frame });
  }
}
