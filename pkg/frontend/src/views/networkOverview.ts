/**
 * Network overview: one column per ingested timestamp showing network
 * size and churn, plus per-metric distribution histograms.
 */

import { clear, el, svg } from "../dom.js";
import type { OverviewResponse } from "../types.js";

export class NetworkOverviewView {
  constructor(private readonly container: HTMLElement) {
    this.container.classList.add("network-overview");
  }

  render(overview: OverviewResponse): void {
    clear(this.container);
    const columns = el("div", { class: "timestamp-columns" });
    for (const ts of overview.timestamps) {
      const col = el("div", {
        class: "timestamp-column",
        "data-timestamp": String(ts.index),
        "data-node-count": String(ts.node_count),
        "data-edge-count": String(ts.edge_count),
        "data-transition-pct": String(ts.transition_pct),
      });
      col.appendChild(el("div", { class: "label" }, `t${ts.index}`));
      col.appendChild(el("div", { class: "nodes" }, `${ts.node_count} players`));
      col.appendChild(el("div", { class: "edges" }, `${ts.edge_count} ties`));
      col.appendChild(el("div", { class: "churn" }, `${ts.transition_pct.toFixed(1)}% moved`));
      columns.appendChild(col);
    }
    this.container.appendChild(columns);

    const histograms = el("div", { class: "metric-histograms" });
    for (const [metric, hist] of Object.entries(overview.metric_histograms)) {
      const block = el("div", { class: "histogram", "data-metric": metric });
      block.appendChild(el("div", { class: "label" }, metric));
      const chart = svg("svg", { width: "120", height: "40", viewBox: "0 0 120 40" });
      const peak = Math.max(1, ...hist.counts);
      const barWidth = 120 / Math.max(1, hist.counts.length);
      hist.counts.forEach((count, i) => {
        const h = (count / peak) * 40;
        chart.appendChild(
          svg("rect", {
            x: String(i * barWidth),
            y: String(40 - h),
            width: String(barWidth),
            height: String(h),
            "data-count": String(count),
          }),
        );
      });
      block.appendChild(chart);
      histograms.appendChild(block);
    }
    this.container.appendChild(histograms);
  }
}
