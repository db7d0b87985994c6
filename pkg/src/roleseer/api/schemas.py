"""Versioned JSON wire formats served to the exploration UI."""

from __future__ import annotations

from pydantic import BaseModel, Field

SCHEMA_VERSION = "1"


class TimestampStats(BaseModel):
    index: int
    node_count: int
    edge_count: int
    transition_pct: float


class Histogram(BaseModel):
    min: float
    max: float
    counts: list[int]


class OverviewResponse(BaseModel):
    version: str = SCHEMA_VERSION
    timestamps: list[TimestampStats]
    metric_histograms: dict[str, Histogram]


class PlanetRingArc(BaseModel):
    target_color: str
    ratio: float


class RoleGlyph(BaseModel):
    cluster_id: str
    color_id: str
    size: int
    metric_means: dict[str, float]
    interconversion: list[PlanetRingArc]


class SnapshotColumn(BaseModel):
    index: int
    timestamp_indices: list[int]
    partial: bool
    roles: list[RoleGlyph]


class FlowSummary(BaseModel):
    id: str
    index: int
    kind: str
    source: str
    target: str
    player_count: int
    ratio: float
    from_t: int
    to_t: int


class SnapshotsResponse(BaseModel):
    version: str = SCHEMA_VERSION
    snapshots: list[SnapshotColumn]
    flows: list[FlowSummary]


class BoxStats(BaseModel):
    min: float
    q1: float
    median: float
    q3: float
    max: float


class RoleDetailResponse(BaseModel):
    version: str = SCHEMA_VERSION
    cluster_id: str
    color_id: str
    snapshot: int
    size: int
    members: list[list] = Field(description="[player, timestamp] pairs")
    metric_means: dict[str, float]
    metric_histograms: dict[str, list[float]]
    time_distribution: dict[str, int]
    time_stats: dict[str, float]
    ingame_stats: dict[str, BoxStats]


class ProjectedPointModel(BaseModel):
    player: str
    timestamp: int
    x: float
    y: float


class PlayerMetricAxis(BaseModel):
    player: str
    source_values: dict[str, float]
    target_values: dict[str, float]
    transitioned: bool


class FlowDetailResponse(BaseModel):
    version: str = SCHEMA_VERSION
    flow: FlowSummary
    source_points: list[ProjectedPointModel]
    target_points: list[ProjectedPointModel]
    axes: list[PlayerMetricAxis]


class SequencePointModel(BaseModel):
    player: str
    x: float
    y: float
    coxcomb: dict[str, int]


class LassoRequest(BaseModel):
    point_ids: list[str]


class LassoResponse(BaseModel):
    version: str = SCHEMA_VERSION
    flow_id: str
    points: list[SequencePointModel]


class RoundModel(BaseModel):
    round_id: int
    bucket: int
    participants: list[str]
    snapshot: int
    x: float
    y: float


class CurveModel(BaseModel):
    player: str
    from_round: int
    to_round: int
    y0: float
    y1: float


class SlotModel(BaseModel):
    player: str
    round_id: int
    y: float


class PeriodModel(BaseModel):
    period: int
    shares: dict[str, float]
    empty: bool


class StorylineResponse(BaseModel):
    version: str = SCHEMA_VERSION
    player: str
    rounds: list[RoundModel]
    slots: list[SlotModel]
    curves: list[CurveModel]
    crossings: int
    periods: list[PeriodModel]


class PlayerMetricsResponse(BaseModel):
    version: str = SCHEMA_VERSION
    player: str
    metrics: dict[str, dict[str, float]]  # timestamp -> metric -> value
    ingame: dict[str, dict[str, float]]  # timestamp -> stat -> value
    roles: dict[str, str]  # timestamp -> color_id


class ErrorBody(BaseModel):
    detail: str
