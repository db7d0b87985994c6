/**
 * Event interaction view: one coxcomb glyph per lassoed player, placed
 * by the document embedding of that player's event sequence. Points are
 * drawn at low opacity by default so dense regions stay readable;
 * clicking a glyph focuses the player in the individual view.
 */

import { clear, el, svg } from "../dom.js";
import type { LassoResponse } from "../types.js";

const SIZE = 320;
const DEFAULT_OPACITY = "0.25";

export class EventInteractionView {
  constructor(
    private readonly container: HTMLElement,
    private readonly onPlayerClick: (player: string) => void,
  ) {
    this.container.classList.add("event-interaction-view");
  }

  render(lasso: LassoResponse | null): void {
    clear(this.container);
    if (!lasso || lasso.points.length === 0) return;
    const chart = svg("svg", {
      width: String(SIZE),
      height: String(SIZE),
      viewBox: `0 0 ${SIZE} ${SIZE}`,
      "data-flow-id": lasso.flow_id,
    });
    const xs = lasso.points.map((p) => p.x);
    const ys = lasso.points.map((p) => p.y);
    const toScreen = (v: number, lo: number, hi: number) =>
      hi > lo ? ((v - lo) / (hi - lo)) * (SIZE - 40) + 20 : SIZE / 2;
    const [xLo, xHi] = [Math.min(...xs), Math.max(...xs)];
    const [yLo, yHi] = [Math.min(...ys), Math.max(...ys)];
    for (const point of lasso.points) {
      const cx = toScreen(point.x, xLo, xHi);
      const cy = toScreen(point.y, yLo, yHi);
      const glyph = svg("g", {
        class: "sequence-glyph",
        opacity: DEFAULT_OPACITY,
        "data-player": point.player,
        "data-x": String(point.x),
        "data-y": String(point.y),
      });
      glyph.appendChild(svg("circle", { cx: String(cx), cy: String(cy), r: "2" }));
      const entries = Object.entries(point.coxcomb);
      const peak = Math.max(1, ...entries.map(([, count]) => count));
      const step = (2 * Math.PI) / Math.max(1, entries.length);
      entries.forEach(([event, count], i) => {
        const radius = 4 + (count / peak) * 10;
        const a0 = i * step - Math.PI / 2;
        const a1 = a0 + step;
        glyph.appendChild(
          svg("path", {
            class: "coxcomb-sector",
            d:
              `M ${cx} ${cy} L ${cx + radius * Math.cos(a0)} ${cy + radius * Math.sin(a0)} ` +
              `A ${radius} ${radius} 0 0 1 ${cx + radius * Math.cos(a1)} ${cy + radius * Math.sin(a1)} Z`,
            "data-event": event,
            "data-count": String(count),
          }),
        );
      });
      glyph.addEventListener("click", () => this.onPlayerClick(point.player));
      chart.appendChild(glyph);
    }
    this.container.appendChild(chart);
    this.container.appendChild(el("div", { class: "legend" }, `${lasso.points.length} players`));
  }
}
