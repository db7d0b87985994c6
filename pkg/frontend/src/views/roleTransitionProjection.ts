/**
 * Role transition projection: two 2-D projection panels (players in the
 * flow's source and target snapshots) around a parallel-coordinates
 * panel of per-player metric values before and after the transition.
 *
 * A lasso over either panel posts the enclosed point ids back through
 * `onLasso`, which drives the event interaction view.
 */

import { clear, el, svg } from "../dom.js";
import type { FlowDetailResponse, ProjectedPoint } from "../types.js";

const PANEL = 200;

export class RoleTransitionProjectionView {
  private detail: FlowDetailResponse | null = null;

  constructor(
    private readonly container: HTMLElement,
    private readonly onLasso: (pointIds: string[]) => void,
  ) {
    this.container.classList.add("role-transition-projection");
  }

  render(detail: FlowDetailResponse | null): void {
    this.detail = detail;
    clear(this.container);
    if (!detail) return;
    this.container.appendChild(this.renderPanel("source-panel", detail.source_points));
    this.container.appendChild(this.renderParallelCoordinates(detail));
    this.container.appendChild(this.renderPanel("target-panel", detail.target_points));
  }

  /** Apply a lasso selection expressed as polygon-enclosed point ids. */
  applyLasso(pointIds: string[]): void {
    this.onLasso(pointIds);
  }

  /** Ids of every point in the rendered flow (both panels, deduplicated). */
  allPointIds(): string[] {
    if (!this.detail) return [];
    const ids = new Set<string>();
    for (const p of [...this.detail.source_points, ...this.detail.target_points]) ids.add(p.player);
    return [...ids];
  }

  private renderPanel(cls: string, points: ProjectedPoint[]): HTMLElement {
    const panel = el("div", { class: `projection-panel ${cls}` });
    const chart = svg("svg", { width: String(PANEL), height: String(PANEL), viewBox: `0 0 ${PANEL} ${PANEL}` });
    const xs = points.map((p) => p.x);
    const ys = points.map((p) => p.y);
    const toScreen = (v: number, lo: number, hi: number) =>
      hi > lo ? ((v - lo) / (hi - lo)) * (PANEL - 20) + 10 : PANEL / 2;
    const [xLo, xHi] = [Math.min(...xs, 0), Math.max(...xs, 0)];
    const [yLo, yHi] = [Math.min(...ys, 0), Math.max(...ys, 0)];
    for (const p of points) {
      chart.appendChild(
        svg("circle", {
          class: "projection-point",
          cx: String(toScreen(p.x, xLo, xHi)),
          cy: String(toScreen(p.y, yLo, yHi)),
          r: "3",
          "data-player": p.player,
          "data-timestamp": String(p.timestamp),
          "data-x": String(p.x),
          "data-y": String(p.y),
        }),
      );
    }
    panel.appendChild(chart);
    return panel;
  }

  private renderParallelCoordinates(detail: FlowDetailResponse): HTMLElement {
    const panel = el("div", { class: "parallel-coordinates" });
    const metrics = detail.axes.length > 0 ? Object.keys(detail.axes[0].source_values) : [];
    const chart = svg("svg", { width: "300", height: String(PANEL) });
    const lows: Record<string, number> = {};
    const highs: Record<string, number> = {};
    for (const m of metrics) {
      const vals = detail.axes.flatMap((a) => [a.source_values[m], a.target_values[m]]);
      lows[m] = Math.min(...vals);
      highs[m] = Math.max(...vals);
    }
    const axisX = (i: number) => (metrics.length > 1 ? (i / (metrics.length - 1)) * 280 + 10 : 150);
    const axisY = (m: string, v: number) =>
      highs[m] > lows[m] ? PANEL - 10 - ((v - lows[m]) / (highs[m] - lows[m])) * (PANEL - 20) : PANEL / 2;
    for (const axis of detail.axes) {
      for (const [cls, values] of [
        ["before", axis.source_values],
        ["after", axis.target_values],
      ] as const) {
        chart.appendChild(
          svg("polyline", {
            class: `pcp-line ${cls}${axis.transitioned ? " transitioned" : ""}`,
            points: metrics.map((m, i) => `${axisX(i)},${axisY(m, values[m])}`).join(" "),
            fill: "none",
            "data-player": axis.player,
            "data-phase": cls,
            "data-transitioned": String(axis.transitioned),
          }),
        );
      }
    }
    panel.appendChild(chart);
    return panel;
  }
}
