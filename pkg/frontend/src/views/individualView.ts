/**
 * Individual view: the focused player's role history as stacked period
 * bars, a storyline of shared-activity rounds with the player's curve
 * threaded through them, and per-timestamp metric statistics.
 */

import { colorFor } from "../color.js";
import { clear, el, svg } from "../dom.js";
import type { PlayerMetricsResponse, StorylineResponse } from "../types.js";

const STORY_WIDTH = 420;
const STORY_HEIGHT = 200;

export class IndividualView {
  constructor(private readonly container: HTMLElement) {
    this.container.classList.add("individual-view");
  }

  render(storyline: StorylineResponse | null, metrics: PlayerMetricsResponse | null): void {
    clear(this.container);
    if (!storyline && !metrics) return;
    const player = storyline?.player ?? metrics?.player ?? "";
    this.container.appendChild(el("div", { class: "player-name", "data-player": player }, player));
    if (storyline) {
      this.container.appendChild(this.renderPeriods(storyline));
      this.container.appendChild(this.renderStoryline(storyline));
    }
    if (metrics) this.container.appendChild(this.renderMetrics(metrics));
  }

  private renderPeriods(storyline: StorylineResponse): HTMLElement {
    const block = el("div", { class: "period-bars" });
    for (const period of storyline.periods) {
      const bar = el("div", {
        class: `period-bar${period.empty ? " empty" : ""}`,
        "data-period": String(period.period),
      });
      for (const [colorId, share] of Object.entries(period.shares)) {
        bar.appendChild(
          el("span", {
            class: "share",
            style: `background:${colorFor(colorId)};width:${(share * 100).toFixed(2)}%`,
            "data-color": colorId,
            "data-share": String(share),
          }),
        );
      }
      block.appendChild(bar);
    }
    return block;
  }

  private renderStoryline(storyline: StorylineResponse): SVGSVGElement {
    const chart = svg("svg", {
      class: "storyline",
      width: String(STORY_WIDTH),
      height: String(STORY_HEIGHT),
      "data-crossings": String(storyline.crossings),
    });
    const xs = storyline.rounds.map((r) => r.x);
    const ys = [...storyline.rounds.map((r) => r.y), ...storyline.slots.map((s) => s.y)];
    const xTo = (v: number) => scale(v, Math.min(...xs, 0), Math.max(...xs, 1), 20, STORY_WIDTH - 20);
    const yTo = (v: number) => scale(v, Math.min(...ys, 0), Math.max(...ys, 1), 20, STORY_HEIGHT - 20);
    const roundX = new Map(storyline.rounds.map((r) => [r.round_id, r.x]));
    for (const curve of storyline.curves) {
      chart.appendChild(
        svg("line", {
          class: "storyline-curve",
          x1: String(xTo(roundX.get(curve.from_round) ?? 0)),
          y1: String(yTo(curve.y0)),
          x2: String(xTo(roundX.get(curve.to_round) ?? 0)),
          y2: String(yTo(curve.y1)),
          "data-player": curve.player,
        }),
      );
    }
    for (const round of storyline.rounds) {
      chart.appendChild(
        svg("circle", {
          class: "storyline-round",
          cx: String(xTo(round.x)),
          cy: String(yTo(round.y)),
          r: String(3 + Math.sqrt(round.participants.length)),
          "data-round": String(round.round_id),
          "data-snapshot": String(round.snapshot),
          "data-participants": String(round.participants.length),
        }),
      );
    }
    return chart;
  }

  private renderMetrics(metrics: PlayerMetricsResponse): HTMLElement {
    const block = el("div", { class: "metric-statistics" });
    for (const [timestamp, values] of Object.entries(metrics.metrics)) {
      const roleColor = metrics.roles[timestamp];
      const row = el("div", {
        class: "metric-row",
        "data-timestamp": timestamp,
        ...(roleColor ? { "data-role": roleColor, style: `border-color:${colorFor(roleColor)}` } : {}),
      });
      for (const [metric, value] of Object.entries(values)) {
        row.appendChild(
          el("span", { class: "metric-value", "data-metric": metric, "data-value": String(value) }, `${metric}: ${value.toPrecision(4)}`),
        );
      }
      block.appendChild(row);
    }
    return block;
  }
}

function scale(v: number, lo: number, hi: number, outLo: number, outHi: number): number {
  return hi > lo ? ((v - lo) / (hi - lo)) * (outHi - outLo) + outLo : (outLo + outHi) / 2;
}
