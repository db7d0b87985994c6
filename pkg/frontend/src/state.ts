/**
 * Shared selection state driving the linked views.
 *
 * The selection forms a drill-down chain:
 *
 *   snapshot  ⇒  flow  ⇒  lassoed points  ⇒  player
 *
 * Selecting or clearing a level always clears everything below it, so a
 * child selection can never refer to a parent that is no longer active.
 */

export interface Selection {
  snapshot: number | null;
  flowId: string | null;
  lasso: string[];
  player: string | null;
}

export type SelectionListener = (selection: Selection) => void;

export class SelectionState {
  private current: Selection = { snapshot: null, flowId: null, lasso: [], player: null };
  private listeners: SelectionListener[] = [];

  /** Defensive copy of the current selection. */
  get selection(): Selection {
    return { ...this.current, lasso: [...this.current.lasso] };
  }

  subscribe(listener: SelectionListener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  selectSnapshot(index: number | null): void {
    this.current = { snapshot: index, flowId: null, lasso: [], player: null };
    this.emit();
  }

  selectFlow(flowId: string | null): void {
    this.current = { ...this.current, flowId, lasso: [], player: null };
    this.emit();
  }

  setLasso(pointIds: string[]): void {
    this.current = { ...this.current, lasso: [...pointIds], player: null };
    this.emit();
  }

  selectPlayer(player: string | null): void {
    this.current = { ...this.current, player };
    this.emit();
  }

  private emit(): void {
    const snapshot = this.selection;
    for (const listener of this.listeners) listener(snapshot);
  }
}
