import type {
  ClustersPayload,
  GraphPayload,
  NodeDetail,
  RunSummary,
  UnderhoodPayload,
} from "./types";

/** Builds the query string for the graph endpoint (thresholds clamped client-side). */
export function graphUrl(base: string, runId: string, lambda: number, gamma: number): string {
  const params = new URLSearchParams({
    lambda: String(lambda),
    gamma: String(gamma),
  });
  return `${base}/api/runs/${encodeURIComponent(runId)}/graph?${params}`;
}

/**
 * Typed client over the explorer API. Graph fetches carry a sequence number
 * so a slow response for an old threshold can never overwrite a newer one.
 */
export class ApiClient {
  private graphSeq = 0;

  constructor(readonly base: string = "") {}

  private async get<T>(path: string): Promise<T> {
    const response = await fetch(this.base + path);
    if (!response.ok) {
      throw new Error(`${path}: HTTP ${response.status}`);
    }
    return (await response.json()) as T;
  }

  runs(): Promise<RunSummary[]> {
    return this.get("/api/runs");
  }

  /** Resolves to null when a newer graph request was issued meanwhile. */
  async graph(runId: string, lambda: number, gamma: number): Promise<GraphPayload | null> {
    const seq = ++this.graphSeq;
    const payload = await this.get<GraphPayload>(graphUrl("", runId, lambda, gamma));
    return seq === this.graphSeq ? payload : null;
  }

  node(runId: string, nodeId: number): Promise<NodeDetail> {
    return this.get(`/api/runs/${encodeURIComponent(runId)}/node/${nodeId}`);
  }

  clusters(runId: string): Promise<ClustersPayload> {
    return this.get(`/api/runs/${encodeURIComponent(runId)}/clusters`);
  }

  underhood(runId: string): Promise<UnderhoodPayload> {
    return this.get(`/api/runs/${encodeURIComponent(runId)}/underhood`);
  }
}

/** Trailing-edge debounce for slider input. */
export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  waitMs = 150,
): (...args: A) => void {
  let handle: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    clearTimeout(handle);
    handle = setTimeout(() => fn(...args), waitMs);
  };
}
