"""Read-mostly HTTP API over an immutable pipeline store.

All analytics are precomputed by the CLI stages except flow-level event
embeddings and storylines, which are computed lazily and cached with a
single-flight lock per key.
"""

from __future__ import annotations

import threading
from pathlib import Path

import numpy as np
from fastapi import FastAPI, HTTPException, Query
from fastapi.staticfiles import StaticFiles

from .. import events_analysis, storyline
from ..ingest import parse_events
from ..store import Store
from . import schemas as S


class LazyCache:
    """At most one computation per key in flight; waiters reuse the result."""

    def __init__(self):
        self._results: dict = {}
        self._locks: dict = {}
        self._guard = threading.Lock()

    def get(self, key, compute):
        with self._guard:
            if key in self._results:
                return self._results[key]
            lock = self._locks.setdefault(key, threading.Lock())
        with lock:
            with self._guard:
                if key in self._results:
                    return self._results[key]
            value = compute()
            with self._guard:
                self._results[key] = value
            return value


def create_app(store_path: str, frontend_dir: str | None = None) -> FastAPI:
    store = Store(store_path)
    app = FastAPI(title="roleseer", version="0.1.0")
    cache = LazyCache()

    def read_or_404(rel: str):
        try:
            return store.read_json(rel)
        except FileNotFoundError:
            raise HTTPException(status_code=404, detail=f"store artifact missing: {rel}")

    def load_events():
        path = store.root / "events.jsonl"
        if not path.exists():
            raise HTTPException(status_code=404, detail="store has no events.jsonl")
        with path.open() as fh:
            return parse_events(fh).events

    def window_of(t: int) -> tuple[int, int]:
        data = read_or_404(f"timestamps/{t}.json")
        return tuple(data["window"])

    def snapshot_list():
        return read_or_404("snapshots.json")

    def flows_list():
        return read_or_404("flows.json")

    def flow_interval(flow: dict) -> tuple[int, int]:
        """Wall-clock span covered by a flow's source and target contexts."""
        if flow["kind"] == "interconversion":
            ts = [flow["from_t"], flow["to_t"]]
        else:
            snaps = snapshot_list()
            ts = (
                snaps[flow["from_t"]]["timestamp_indices"]
                + snaps[flow["to_t"]]["timestamp_indices"]
            )
        windows = [window_of(t) for t in ts]
        return min(w[0] for w in windows), max(w[1] for w in windows)

    @app.get("/overview", response_model=S.OverviewResponse)
    def overview():
        return read_or_404("overview.json")

    @app.get("/snapshots", response_model=S.SnapshotsResponse)
    def snapshots():
        snaps = snapshot_list()
        flows = flows_list()
        columns = []
        for snap in snaps:
            roles_doc = read_or_404(f"roles/{snap['index']}.json")
            color_of = {c["cluster_id"]: c["color_id"] for c in roles_doc["clusters"]}
            glyphs = []
            for c in roles_doc["clusters"]:
                arcs = [
                    S.PlanetRingArc(
                        target_color=color_of.get(f["target"], f["target"]),
                        ratio=f["ratio"],
                    )
                    for f in flows
                    if f["kind"] == "interconversion"
                    and f["source"] == c["cluster_id"]
                    and f["target"] != c["cluster_id"]
                ]
                glyphs.append(
                    S.RoleGlyph(
                        cluster_id=c["cluster_id"],
                        color_id=c["color_id"],
                        size=c["size"],
                        metric_means=c["metric_means"],
                        interconversion=arcs,
                    )
                )
            columns.append(
                S.SnapshotColumn(
                    index=snap["index"],
                    timestamp_indices=snap["timestamp_indices"],
                    partial=snap["partial"],
                    roles=glyphs,
                )
            )
        summaries = [
            S.FlowSummary(
                id=f["id"],
                index=i,
                kind=f["kind"],
                source=f["source"],
                target=f["target"],
                player_count=len(f["players"]),
                ratio=f["ratio"],
                from_t=f["from_t"],
                to_t=f["to_t"],
            )
            for i, f in enumerate(flows)
        ]
        return S.SnapshotsResponse(snapshots=columns, flows=summaries)

    def _find_cluster(s: int, c: str) -> dict:
        roles_doc = read_or_404(f"roles/{s}.json")
        for cluster in roles_doc["clusters"]:
            if cluster["cluster_id"] == c or cluster["color_id"] == c:
                return cluster
        raise HTTPException(status_code=404, detail=f"no role {c} in snapshot {s}")

    @app.get("/snapshots/{s}/roles/{c}", response_model=S.RoleDetailResponse)
    def role_detail(s: int, c: str):
        cluster = _find_cluster(s, c)
        # in-game stat quartiles over member instances
        stats: dict[str, S.BoxStats] = {}
        values: dict[str, list[float]] = {k: [] for k in ("cash", "grade", "intimacy_total", "combat_score")}
        for player, t in cluster["members"]:
            ingame = read_or_404(f"timestamps/{t}.json")["ingame"].get(player, {})
            for k in values:
                values[k].append(float(ingame.get(k, 0.0)))
        for k, vals in values.items():
            arr = np.array(vals) if vals else np.zeros(1)
            stats[k] = S.BoxStats(
                min=float(arr.min()),
                q1=float(np.percentile(arr, 25)),
                median=float(np.median(arr)),
                q3=float(np.percentile(arr, 75)),
                max=float(arr.max()),
            )
        return S.RoleDetailResponse(
            cluster_id=cluster["cluster_id"],
            color_id=cluster["color_id"],
            snapshot=s,
            size=cluster["size"],
            members=cluster["members"],
            metric_means=cluster["metric_means"],
            metric_histograms=cluster["metric_histograms"],
            time_distribution=cluster["time_distribution"],
            time_stats=cluster["time_stats"],
            ingame_stats=stats,
        )

    def _flow_by_ref(index: int | None = None, flow_id: str | None = None) -> tuple[int, dict]:
        flows = flows_list()
        if index is not None:
            if not 0 <= index < len(flows):
                raise HTTPException(status_code=404, detail=f"no flow #{index}")
            return index, flows[index]
        for i, f in enumerate(flows):
            if f["id"] == flow_id:
                return i, f
        raise HTTPException(status_code=404, detail=f"no flow {flow_id}")

    @app.get("/flows", response_model=S.FlowDetailResponse)
    def flow_detail(
        source: str = Query(alias="from"),
        target: str = Query(alias="to"),
        kind: str = "transition",
    ):
        flows = flows_list()
        match = next(
            (
                (i, f)
                for i, f in enumerate(flows)
                if f["source"] == source and f["target"] == target and f["kind"] == kind
            ),
            None,
        )
        if match is None:
            raise HTTPException(status_code=404, detail=f"no flow {source}->{target}")
        return _flow_detail(*match)

    @app.get("/flows/{index}", response_model=S.FlowDetailResponse)
    def flow_detail_by_index(index: int):
        return _flow_detail(*_flow_by_ref(index=index))

    def _members_of(cluster_id: str) -> list[list]:
        s = int(cluster_id.split("c")[0][1:])
        return _find_cluster(s, cluster_id)["members"]

    def _flow_detail(index: int, flow: dict) -> S.FlowDetailResponse:
        projection = {
            (p["player"], p["timestamp"]): p for p in read_or_404("projection.json")
        }

        def points_of(cluster_id: str):
            pts = []
            for player, t in _members_of(cluster_id):
                p = projection.get((player, t))
                if p:
                    pts.append(S.ProjectedPointModel(**p))
            return pts

        metric_rows: dict[int, dict] = {}

        def metrics_at(player: str, t: int) -> dict[str, float]:
            if t not in metric_rows:
                metric_rows[t] = read_or_404(f"metrics/{t}.json")
            return metric_rows[t].get(player, {})

        src_members = _members_of(flow["source"])
        dst_members = _members_of(flow["target"])
        src_last = {p: t for p, t in sorted(src_members, key=lambda m: m[1])}
        dst_last = {p: t for p, t in sorted(dst_members, key=lambda m: m[1])}
        axes = []
        for player in sorted(flow["players"]):
            if player not in src_last or player not in dst_last:
                continue
            axes.append(
                S.PlayerMetricAxis(
                    player=player,
                    source_values=metrics_at(player, src_last[player]),
                    target_values=metrics_at(player, dst_last[player]),
                    transitioned=True,
                )
            )
        summary = S.FlowSummary(
            id=flow["id"],
            index=index,
            kind=flow["kind"],
            source=flow["source"],
            target=flow["target"],
            player_count=len(flow["players"]),
            ratio=flow["ratio"],
            from_t=flow["from_t"],
            to_t=flow["to_t"],
        )
        return S.FlowDetailResponse(
            flow=summary,
            source_points=points_of(flow["source"]),
            target_points=points_of(flow["target"]),
            axes=axes,
        )

    def _flow_sequence_points(index: int) -> dict[str, S.SequencePointModel]:
        _, flow = _flow_by_ref(index=index)
        lo, hi = flow_interval(flow)
        events = [e for e in load_events() if lo <= e.occurred_at < hi]
        seqs = []
        counts = {}
        for player in sorted(flow["players"]):
            mine = [e.event_type for e in events if e.actor == player or e.target == player]
            seq = events_analysis.compress(player, mine)
            seqs.append(seq)
            counts[player] = seq.counts
        vectors = events_analysis.embed_sequences(seqs, seed=index)
        points = events_analysis.project_sequences(vectors, counts, seed=index)
        return {
            p.player: S.SequencePointModel(player=p.player, x=p.x, y=p.y, coxcomb=p.coxcomb)
            for p in points
        }

    @app.post("/flows/{index}/lasso", response_model=S.LassoResponse)
    def lasso(index: int, req: S.LassoRequest):
        _, flow = _flow_by_ref(index=index)
        points = cache.get(("lasso", index), lambda: _flow_sequence_points(index))
        selected = [points[p] for p in req.point_ids if p in points]
        return S.LassoResponse(flow_id=flow["id"], points=selected)

    @app.get("/players/{player}/storyline", response_model=S.StorylineResponse)
    def player_storyline(player: str, snapshot: int = 0, span_snapshots: int = 2):
        snaps = snapshot_list()
        if not 0 <= snapshot < len(snaps):
            raise HTTPException(status_code=404, detail=f"no snapshot {snapshot}")
        ts = []
        for s in range(snapshot, min(snapshot + span_snapshots, len(snaps))):
            ts.extend(snaps[s]["timestamp_indices"])
        windows = [window_of(t) for t in ts]
        span = (min(w[0] for w in windows), max(w[1] for w in windows))

        def snapshot_of_ts(ts_val: int) -> int:
            for s in range(snapshot, min(snapshot + span_snapshots, len(snaps))):
                for t in snaps[s]["timestamp_indices"]:
                    lo, hi = window_of(t)
                    if lo <= ts_val < hi:
                        return s
            return snapshot

        def compute():
            events = load_events()
            try:
                rounds = storyline.build_rounds(
                    player, events, span=span, snapshot_of_ts=snapshot_of_ts
                )
            except KeyError:
                raise HTTPException(status_code=404, detail=f"player {player} not in data")
            lay = storyline.layout(rounds)
            periods = events_analysis.period_distributions(player, events, span=span)
            return lay, periods

        lay, periods = cache.get(("storyline", player, snapshot, span_snapshots), compute)
        return S.StorylineResponse(
            player=player,
            rounds=[
                S.RoundModel(
                    round_id=r.round_id,
                    bucket=r.bucket,
                    participants=r.participants,
                    snapshot=r.snapshot,
                    x=lay.round_x[r.round_id],
                    y=lay.round_y[r.round_id],
                )
                for r in lay.rounds
            ],
            slots=[
                S.SlotModel(player=p, round_id=rid, y=y)
                for (p, rid), y in sorted(lay.slots.items())
            ],
            curves=[S.CurveModel(**c) for c in lay.curves],
            crossings=lay.crossings,
            periods=[
                S.PeriodModel(period=p.period, shares=p.shares, empty=p.empty)
                for p in periods
            ],
        )

    @app.get("/players/{player}/metrics", response_model=S.PlayerMetricsResponse)
    def player_metrics(player: str):
        n = store.manifest().get("stages", {}).get("ingest", {}).get("n_timestamps")
        if n is None:
            raise HTTPException(status_code=404, detail="store not ingested")
        metrics = {}
        ingame = {}
        for t in range(n):
            rows = read_or_404(f"metrics/{t}.json")
            if player in rows:
                metrics[str(t)] = rows[player]
                ingame[str(t)] = read_or_404(f"timestamps/{t}.json")["ingame"][player]
        if not metrics:
            raise HTTPException(status_code=404, detail=f"player {player} not in data")
        assignments = read_or_404("assignments.json") if store.has("assignments.json") else {}
        roles = {
            key.split("@")[1]: color
            for key, color in assignments.items()
            if key.split("@")[0] == player
        }
        return S.PlayerMetricsResponse(player=player, metrics=metrics, ingame=ingame, roles=roles)

    @app.get("/schemas")
    def schemas_index():
        models = {
            "overview": S.OverviewResponse,
            "snapshots": S.SnapshotsResponse,
            "role_detail": S.RoleDetailResponse,
            "flow_detail": S.FlowDetailResponse,
            "lasso": S.LassoResponse,
            "storyline": S.StorylineResponse,
            "player_metrics": S.PlayerMetricsResponse,
        }
        return {name: model.model_json_schema() for name, model in models.items()}

    if frontend_dir and Path(frontend_dir).is_dir():
        app.mount("/app", StaticFiles(directory=frontend_dir, html=True), name="frontend")

    return app
