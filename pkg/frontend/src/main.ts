/**
 * Application shell: wires the five linked views to the shared
 * selection state and the HTTP client. All analytics happen server
 * side; this layer only fetches payloads and hands them to views.
 */

import { ApiClient } from "./api.js";
import { SelectionState, type Selection } from "./state.js";
import type { SnapshotsResponse } from "./types.js";
import { EventInteractionView } from "./views/eventInteractionView.js";
import { IndividualView } from "./views/individualView.js";
import { NetworkOverviewView } from "./views/networkOverview.js";
import { RoleTransitionOverviewView } from "./views/roleTransitionOverview.js";
import { RoleTransitionProjectionView } from "./views/roleTransitionProjection.js";

export class App {
  readonly state = new SelectionState();
  readonly networkOverview: NetworkOverviewView;
  readonly roleOverview: RoleTransitionOverviewView;
  readonly projection: RoleTransitionProjectionView;
  readonly events: EventInteractionView;
  readonly individual: IndividualView;

  private snapshots: SnapshotsResponse | null = null;
  private pending: Promise<void> = Promise.resolve();

  constructor(
    root: HTMLElement,
    private readonly api: ApiClient,
  ) {
    const panel = (id: string): HTMLElement => {
      const node = document.createElement("div");
      node.id = id;
      root.appendChild(node);
      return node;
    };
    this.networkOverview = new NetworkOverviewView(panel("network-overview"));
    this.roleOverview = new RoleTransitionOverviewView(panel("role-transition-overview"), {
      onSnapshotClick: (index) => this.state.selectSnapshot(index),
      onFlowClick: (flowId) => this.state.selectFlow(flowId),
    });
    this.projection = new RoleTransitionProjectionView(panel("role-transition-projection"), (ids) =>
      this.state.setLasso(ids),
    );
    this.events = new EventInteractionView(panel("event-interaction-view"), (player) =>
      this.state.selectPlayer(player),
    );
    this.individual = new IndividualView(panel("individual-view"));
    this.state.subscribe((selection) => this.track(this.onSelection(selection)));
  }

  async init(): Promise<void> {
    const load = (async () => {
      const [overview, snapshots] = await Promise.all([this.api.overview(), this.api.snapshots()]);
      this.snapshots = snapshots;
      this.networkOverview.render(overview);
      this.roleOverview.render(snapshots, null, null);
    })();
    this.track(load);
    return load;
  }

  /** Resolves once every fetch triggered so far has been applied. */
  idle(): Promise<void> {
    return this.pending;
  }

  private track(task: Promise<void>): void {
    this.pending = this.pending.then(() => task).catch(() => undefined);
  }

  private async onSelection(selection: Selection): Promise<void> {
    if (this.snapshots) {
      this.roleOverview.render(this.snapshots, selection.snapshot, selection.flowId);
    }
    if (selection.flowId === null) {
      this.projection.render(null);
    } else {
      this.projection.render(await this.api.flowDetail(selection.flowId));
    }
    if (selection.flowId === null || selection.lasso.length === 0) {
      this.events.render(null);
    } else {
      this.events.render(await this.api.lasso(selection.flowId, selection.lasso));
    }
    if (selection.player === null) {
      this.individual.render(null, null);
    } else {
      const [storyline, metrics] = await Promise.all([
        this.api.storyline(selection.player, selection.snapshot ?? undefined),
        this.api.playerMetrics(selection.player),
      ]);
      this.individual.render(storyline, metrics);
    }
  }
}

export function mount(root: HTMLElement, baseUrl = ""): App {
  const app = new App(root, new ApiClient(baseUrl));
  void app.init();
  return app;
}
