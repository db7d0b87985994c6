/** Wire formats returned by the analysis HTTP service (schema version 1). */

export interface TimestampStats {
  index: number;
  node_count: number;
  edge_count: number;
  transition_pct: number;
}

export interface Histogram {
  min: number;
  max: number;
  counts: number[];
}

export interface OverviewResponse {
  version: string;
  timestamps: TimestampStats[];
  metric_histograms: Record<string, Histogram>;
}

export interface PlanetRingArc {
  target_color: string;
  ratio: number;
}

export interface RoleGlyph {
  cluster_id: string;
  color_id: string;
  size: number;
  metric_means: Record<string, number>;
  interconversion: PlanetRingArc[];
}

export interface SnapshotColumn {
  index: number;
  timestamp_indices: number[];
  partial: boolean;
  roles: RoleGlyph[];
}

export interface FlowSummary {
  id: string;
  index: number;
  kind: string;
  source: string;
  target: string;
  player_count: number;
  ratio: number;
  from_t: number;
  to_t: number;
}

export interface SnapshotsResponse {
  version: string;
  snapshots: SnapshotColumn[];
  flows: FlowSummary[];
}

export interface BoxStats {
  min: number;
  q1: number;
  median: number;
  q3: number;
  max: number;
}

export interface RoleDetailResponse {
  version: string;
  cluster_id: string;
  color_id: string;
  snapshot: number;
  size: number;
  members: [string, number][];
  metric_means: Record<string, number>;
  metric_histograms: Record<string, number[]>;
  time_distribution: Record<string, number>;
  time_stats: Record<string, number>;
  ingame_stats: Record<string, BoxStats>;
}

export interface ProjectedPoint {
  player: string;
  timestamp: number;
  x: number;
  y: number;
}

export interface PlayerMetricAxis {
  player: string;
  source_values: Record<string, number>;
  target_values: Record<string, number>;
  transitioned: boolean;
}

export interface FlowDetailResponse {
  version: string;
  flow: FlowSummary;
  source_points: ProjectedPoint[];
  target_points: ProjectedPoint[];
  axes: PlayerMetricAxis[];
}

export interface SequencePoint {
  player: string;
  x: number;
  y: number;
  coxcomb: Record<string, number>;
}

export interface LassoResponse {
  version: string;
  flow_id: string;
  points: SequencePoint[];
}

export interface Round {
  round_id: number;
  bucket: number;
  participants: string[];
  snapshot: number;
  x: number;
  y: number;
}

export interface Curve {
  player: string;
  from_round: number;
  to_round: number;
  y0: number;
  y1: number;
}

export interface Slot {
  player: string;
  round_id: number;
  y: number;
}

export interface Period {
  period: number;
  shares: Record<string, number>;
  empty: boolean;
}

export interface StorylineResponse {
  version: string;
  player: string;
  rounds: Round[];
  slots: Slot[];
  curves: Curve[];
  crossings: number;
  periods: Period[];
}

export interface PlayerMetricsResponse {
  version: string;
  player: string;
  metrics: Record<string, Record<string, number>>;
  ingame: Record<string, Record<string, number>>;
  roles: Record<string, string>;
}
