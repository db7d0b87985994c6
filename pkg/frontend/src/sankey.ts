/**
 * Pure layout for the role-transition Sankey bands.
 *
 * Band widths are proportional to the number of players in each flow,
 * scaled so all bands between a pair of snapshot columns share the given
 * total height. Bands are stacked in input order on both ends.
 */

export interface FlowLike {
  id: string;
  player_count: number;
  source: string;
  target: string;
  from_t: number;
  to_t: number;
}

export interface FlowBand {
  id: string;
  width: number;
  /** Top edge of the band at the source column. */
  sourceOffset: number;
  /** Top edge of the band at the target column. */
  targetOffset: number;
}

/**
 * Lay out the flows between one pair of adjacent snapshot columns.
 *
 * Every band's width is `player_count / total * totalHeight`; offsets
 * stack bands grouped by source cluster on the left and by target
 * cluster on the right.
 */
export function layoutBands(flows: FlowLike[], totalHeight: number): FlowBand[] {
  const total = flows.reduce((acc, f) => acc + f.player_count, 0);
  if (total === 0) return flows.map((f) => ({ id: f.id, width: 0, sourceOffset: 0, targetOffset: 0 }));
  const scale = totalHeight / total;

  const bySource = groupOffsets(flows, (f) => f.source, scale);
  const byTarget = groupOffsets(flows, (f) => f.target, scale);

  return flows.map((f) => ({
    id: f.id,
    width: f.player_count * scale,
    sourceOffset: bySource.get(f.id) as number,
    targetOffset: byTarget.get(f.id) as number,
  }));
}

function groupOffsets(
  flows: FlowLike[],
  key: (f: FlowLike) => string,
  scale: number,
): Map<string, number> {
  const order: string[] = [];
  const groups = new Map<string, FlowLike[]>();
  for (const f of flows) {
    const k = key(f);
    if (!groups.has(k)) {
      groups.set(k, []);
      order.push(k);
    }
    (groups.get(k) as FlowLike[]).push(f);
  }
  const offsets = new Map<string, number>();
  let cursor = 0;
  for (const k of order) {
    for (const f of groups.get(k) as FlowLike[]) {
      offsets.set(f.id, cursor);
      cursor += f.player_count * scale;
    }
  }
  return offsets;
}
