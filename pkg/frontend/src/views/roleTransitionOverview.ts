/**
 * Role transition overview: snapshot columns of role glyphs linked by a
 * Sankey diagram whose band widths are proportional to player counts.
 *
 * Clicking a column header expands the snapshot, adding a radar of the
 * role's metric means and a planet-ring of arcs sized by each
 * interconversion ratio to every glyph in that column.
 */

import { colorFor } from "../color.js";
import { clear, el, radarPoints, svg } from "../dom.js";
import { layoutBands } from "../sankey.js";
import type { RoleGlyph, SnapshotsResponse } from "../types.js";

export interface RoleOverviewHandlers {
  onSnapshotClick(index: number): void;
  onFlowClick(flowId: string): void;
}

const COLUMN_HEIGHT = 400;

export class RoleTransitionOverviewView {
  constructor(
    private readonly container: HTMLElement,
    private readonly handlers: RoleOverviewHandlers,
  ) {
    this.container.classList.add("role-transition-overview");
  }

  render(data: SnapshotsResponse, expandedSnapshot: number | null, selectedFlow: string | null): void {
    clear(this.container);
    for (const snapshot of data.snapshots) {
      const expanded = snapshot.index === expandedSnapshot;
      const col = el("div", {
        class: `snapshot-column${expanded ? " expanded" : ""}`,
        "data-snapshot": String(snapshot.index),
      });
      const header = el("button", { class: "snapshot-header" }, `snapshot ${snapshot.index}`);
      header.addEventListener("click", () => this.handlers.onSnapshotClick(snapshot.index));
      col.appendChild(header);
      const totalSize = Math.max(
        1,
        snapshot.roles.reduce((acc, r) => acc + r.size, 0),
      );
      for (const role of snapshot.roles) {
        col.appendChild(this.renderGlyph(role, (role.size / totalSize) * COLUMN_HEIGHT, expanded));
      }
      this.container.appendChild(col);

      const outgoing = data.flows.filter((f) => f.from_t === snapshot.index);
      if (outgoing.length > 0) {
        this.container.appendChild(this.renderBands(snapshot.index, data, selectedFlow));
      }
    }
  }

  private renderGlyph(role: RoleGlyph, height: number, expanded: boolean): HTMLElement {
    const glyph = el("div", {
      class: "role-glyph",
      "data-cluster": role.cluster_id,
      "data-color": role.color_id,
      "data-size": String(role.size),
    });
    const bar = svg("svg", { width: "24", height: String(Math.max(1, height)) });
    bar.appendChild(
      svg("rect", {
        x: "0",
        y: "0",
        width: "24",
        height: String(Math.max(1, height)),
        fill: colorFor(role.color_id),
      }),
    );
    glyph.appendChild(bar);
    if (expanded) glyph.appendChild(this.renderExpanded(role));
    return glyph;
  }

  private renderExpanded(role: RoleGlyph): SVGSVGElement {
    const detail = svg("svg", { class: "glyph-detail", width: "80", height: "80", viewBox: "0 0 80 80" });
    const values = Object.values(role.metric_means);
    const peak = Math.max(1e-12, ...values.map(Math.abs));
    detail.appendChild(
      svg("polygon", {
        class: "radar",
        points: radarPoints(values.map((v) => Math.abs(v) / peak), 40, 40, 24),
        fill: colorFor(role.color_id),
        "fill-opacity": "0.5",
      }),
    );
    const ringRadius = 32;
    const circumference = 2 * Math.PI * ringRadius;
    let angle = 0;
    for (const arc of role.interconversion) {
      const sweep = arc.ratio * circumference;
      detail.appendChild(
        svg("circle", {
          class: "ring-arc",
          cx: "40",
          cy: "40",
          r: String(ringRadius),
          fill: "none",
          stroke: colorFor(arc.target_color),
          "stroke-width": "4",
          "stroke-dasharray": `${sweep} ${circumference - sweep}`,
          "stroke-dashoffset": String(-angle),
          "data-target-color": arc.target_color,
          "data-ratio": String(arc.ratio),
        }),
      );
      angle += sweep;
    }
    return detail;
  }

  private renderBands(fromIndex: number, data: SnapshotsResponse, selectedFlow: string | null): SVGSVGElement {
    const flows = data.flows.filter((f) => f.from_t === fromIndex);
    const bands = layoutBands(flows, COLUMN_HEIGHT);
    const chart = svg("svg", {
      class: "sankey",
      width: "60",
      height: String(COLUMN_HEIGHT),
      "data-from": String(fromIndex),
    });
    bands.forEach((band, i) => {
      const flow = flows[i];
      const path = svg("path", {
        class: `flow-band${flow.id === selectedFlow ? " selected" : ""}`,
        d:
          `M 0 ${band.sourceOffset} C 30 ${band.sourceOffset}, 30 ${band.targetOffset}, 60 ${band.targetOffset} ` +
          `L 60 ${band.targetOffset + band.width} C 30 ${band.targetOffset + band.width}, ` +
          `30 ${band.sourceOffset + band.width}, 0 ${band.sourceOffset + band.width} Z`,
        fill: colorFor(flow.source.split("@")[0] ?? flow.source),
        "fill-opacity": flow.id === selectedFlow ? "0.9" : "0.5",
        "data-flow-id": flow.id,
        "data-width": String(band.width),
        "data-player-count": String(flow.player_count),
        "data-kind": flow.kind,
      });
      path.addEventListener("click", () => this.handlers.onFlowClick(flow.id));
      chart.appendChild(path);
    });
    return chart;
  }
}
