/**
 * Typed client for the analysis HTTP service.
 *
 * Each request belongs to a named group; issuing a new request in the
 * same group aborts the previous in-flight one, so rapid selection
 * changes never apply a stale response.
 */

import type {
  FlowDetailResponse,
  LassoResponse,
  OverviewResponse,
  PlayerMetricsResponse,
  RoleDetailResponse,
  SnapshotsResponse,
  StorylineResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

export class ApiClient {
  private aborters = new Map<string, AbortController>();

  constructor(private readonly baseUrl: string = "") {}

  overview(): Promise<OverviewResponse> {
    return this.request("overview", "/overview");
  }

  snapshots(): Promise<SnapshotsResponse> {
    return this.request("snapshots", "/snapshots");
  }

  roleDetail(snapshot: number, clusterId: string): Promise<RoleDetailResponse> {
    return this.request("role", `/snapshots/${snapshot}/roles/${encodeURIComponent(clusterId)}`);
  }

  flowDetail(flowId: string): Promise<FlowDetailResponse> {
    return this.request("flow", `/flows/${encodeURIComponent(flowId)}`);
  }

  lasso(flowId: string, pointIds: string[]): Promise<LassoResponse> {
    return this.request("lasso", `/flows/${encodeURIComponent(flowId)}/lasso`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ point_ids: pointIds }),
    });
  }

  storyline(player: string, snapshot?: number): Promise<StorylineResponse> {
    const query = snapshot === undefined ? "" : `?snapshot=${snapshot}`;
    return this.request("storyline", `/players/${encodeURIComponent(player)}/storyline${query}`);
  }

  playerMetrics(player: string): Promise<PlayerMetricsResponse> {
    return this.request("metrics", `/players/${encodeURIComponent(player)}/metrics`);
  }

  private async request<T>(group: string, path: string, init: RequestInit = {}): Promise<T> {
    this.aborters.get(group)?.abort();
    const controller = new AbortController();
    this.aborters.set(group, controller);
    const response = await fetch(this.baseUrl + path, { ...init, signal: controller.signal });
    if (!response.ok) {
      let detail = response.statusText;
      try {
        detail = ((await response.json()) as { detail?: string }).detail ?? detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }
}
