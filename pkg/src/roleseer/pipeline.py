"""Batch pipeline stages over a store: ingest -> metrics -> embed -> align -> roles -> eval.

Each stage is idempotent for a given config hash and refuses to run before
its predecessors.
"""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from . import alignment, graph_metrics, synth
from .embedding import EmbeddingParams, embed_graph
from .ingest import (
    Snapshot,
    TimestampGraph,
    build_timestamp_graphs,
    group_snapshots,
    parse_events,
    parse_status,
)
from .roles import (
    RoleCluster,
    build_role_clusters,
    cluster_xmeans,
    compute_flows,
    evaluate_clustering,
    match_role_identities,
    project_tsne,
    time_distribution_report,
)
from .store import Store, config_hash

logger = logging.getLogger(__name__)

METRIC_NAMES = list(graph_metrics.METRIC_NAMES)


# --- loading helpers -----------------------------------------------------

def load_graphs(store: Store) -> list[TimestampGraph]:
    manifest = store.manifest()
    n = manifest["stages"]["ingest"]["n_timestamps"]
    graphs = []
    for t in range(n):
        data = store.read_json(f"timestamps/{t}.json")
        graphs.append(
            TimestampGraph(
                index=t,
                window=tuple(data["window"]),
                nodes=set(data["nodes"]),
                edges={(a, b): w for a, b, w in data["edges"]},
                ingame_metrics=data["ingame"],
            )
        )
    return graphs


def load_snapshots(store: Store) -> list[Snapshot]:
    return [
        Snapshot(s["index"], s["timestamp_indices"], s["partial"])
        for s in store.read_json("snapshots.json")
    ]


def load_metric_values(store: Store) -> dict[tuple[str, int], dict[str, float]]:
    out: dict[tuple[str, int], dict[str, float]] = {}
    n = store.manifest()["stages"]["ingest"]["n_timestamps"]
    for t in range(n):
        rows = store.read_json(f"metrics/{t}.json")
        for player, row in rows.items():
            out[(player, t)] = row
    return out


def load_embeddings(store: Store, method: str, aligned: bool = False) -> list[dict[str, np.ndarray]]:
    kind = "aligned" if aligned else "embeddings"
    n = store.manifest()["stages"]["ingest"]["n_timestamps"]
    spaces = []
    for t in range(n):
        rel = f"{kind}/{method}/{t}.bin"
        if not store.has(rel):
            spaces.append({})
            continue
        matrix, players = store.read_matrix(rel)
        spaces.append({p: matrix[i] for i, p in enumerate(players)})
    return spaces


def _write_spaces(store: Store, kind: str, method: str, spaces: list[dict[str, np.ndarray]], dims: int) -> None:
    for t, space in enumerate(spaces):
        players = sorted(space)
        if not players:
            continue
        matrix = np.array([space[p] for p in players]) if players else np.zeros((0, dims))
        store.write_matrix(f"{kind}/{method}/{t}.bin", matrix, players)


# --- stages ---------------------------------------------------------------

def run_ingest(
    store: Store,
    events_path: str,
    status_path: str | None = None,
    window_hours: float = 6,
    snapshot_size: int = 3,
    fmt: str = "jsonl",
) -> int:
    cfg = {
        "stage": "ingest",
        "window_hours": window_hours,
        "snapshot_size": snapshot_size,
        "events_sha": config_hash(Path(events_path).read_text()),
    }
    h = config_hash(cfg)
    if store.stage_hash("ingest") == h:
        logger.info("ingest: cache hit (%s)", h)
        return store.manifest()["stages"]["ingest"]["n_timestamps"]

    with open(events_path) as fh:
        result = parse_events(fh, fmt=fmt)
    statuses = None
    if status_path:
        with open(status_path) as fh:
            statuses = parse_status(fh)
    graphs = build_timestamp_graphs(result.events, window_hours, statuses=statuses)
    snapshots = group_snapshots(graphs, snapshot_size)

    store.root.mkdir(parents=True, exist_ok=True)
    raw = Path(events_path).read_text()
    (store.root / "events.jsonl").write_text(raw)
    for g in graphs:
        store.write_json(
            f"timestamps/{g.index}.json",
            {
                "window": list(g.window),
                "nodes": sorted(g.nodes),
                "edges": [[a, b, w] for (a, b), w in sorted(g.edges.items())],
                "ingame": {p: g.ingame_metrics[p] for p in sorted(g.ingame_metrics)},
            },
        )
    store.write_json(
        "snapshots.json",
        [
            {"index": s.index, "timestamp_indices": s.timestamp_indices, "partial": s.partial}
            for s in snapshots
        ],
    )
    store.mark_stage(
        "ingest",
        h,
        {
            "n_timestamps": len(graphs),
            "n_snapshots": len(snapshots),
            "n_events": len(result.events),
            "n_skipped": result.n_skipped,
            "window_hours": window_hours,
            "snapshot_size": snapshot_size,
        },
    )
    return len(graphs)


def run_metrics(store: Store, seed: int = 0) -> None:
    store.require_stage("ingest")
    cfg = {"stage": "metrics", "seed": seed, "ingest": store.stage_hash("ingest")}
    h = config_hash(cfg)
    if store.stage_hash("metrics") == h:
        logger.info("metrics: cache hit")
        return
    graphs = load_graphs(store)
    rows_by_t = {}
    for g in graphs:
        rows = graph_metrics.compute_all(g, seed=seed)
        rows_by_t[g.index] = rows
        store.write_json(f"metrics/{g.index}.json", {p: rows[p] for p in sorted(rows)})
    store.mark_stage("metrics", h, {"seed": seed})


def run_embed(
    store: Store,
    method: str = "struc2vec",
    params: EmbeddingParams | None = None,
    seed: int = 0,
) -> None:
    store.require_stage("ingest")
    params = params or EmbeddingParams()
    cfg = {
        "stage": "embed",
        "method": method,
        "seed": seed,
        "params": params.to_dict(),
        "ingest": store.stage_hash("ingest"),
    }
    h = config_hash(cfg)
    stage = f"embed:{method}"
    if store.stage_hash(stage) == h:
        logger.info("%s: cache hit", stage)
        return
    graphs = load_graphs(store)
    spaces = []
    prev: dict | None = None
    for g in graphs:
        space, losses = embed_graph(
            g, method=method, params=params, seed=seed + g.index, warm_start=prev
        )
        logger.info("embedded t=%d (%d nodes, %s)", g.index, len(space), method)
        spaces.append(space)
        prev = space
    _write_spaces(store, "embeddings", method, spaces, params.dims)
    store.write_json(
        f"embeddings/{method}/meta.json",
        {"method": method, "seed": seed, "params": params.to_dict()},
    )
    store.mark_stage(stage, h, {"seed": seed})


def run_align(store: Store, method: str = "struc2vec", seed: int = 0) -> None:
    store.require_stage(f"embed:{method}")
    cfg = {
        "stage": "align",
        "method": method,
        "seed": seed,
        "embed": store.stage_hash(f"embed:{method}"),
    }
    h = config_hash(cfg)
    stage = f"align:{method}"
    if store.stage_hash(stage) == h:
        logger.info("%s: cache hit", stage)
        return
    spaces = load_embeddings(store, method)
    aligned, relations, breaks = alignment.align_chain(spaces, seed=seed)
    dims = next((len(next(iter(s.values()))) for s in spaces if s), 0)
    _write_spaces(store, "aligned", method, aligned, dims)
    for rel in relations:
        store.write_json(
            f"alignment/{method}/{rel.from_t}_{rel.to_t}.json",
            {
                "r": [float(x) for x in rel.translation],
                "residual_before": rel.residual_before,
                "residual_after": rel.residual_after,
                "anchor_count": len(rel.anchors),
            },
        )
    store.mark_stage(stage, h, {"breaks": breaks})


def run_roles(
    store: Store,
    method: str = "struc2vec",
    seed: int = 0,
    tau: float = 0.3,
    k_min: int = 2,
    k_max: int = 16,
    perplexity: float = 30.0,
) -> None:
    store.require_stage(f"align:{method}")
    store.require_stage("metrics")
    cfg = {
        "stage": "roles",
        "method": method,
        "seed": seed,
        "tau": tau,
        "k": [k_min, k_max],
        "perplexity": perplexity,
        "align": store.stage_hash(f"align:{method}"),
        "metrics": store.stage_hash("metrics"),
    }
    h = config_hash(cfg)
    if store.stage_hash("roles") == h:
        logger.info("roles: cache hit")
        return

    graphs = load_graphs(store)
    snapshots = load_snapshots(store)
    metric_values = load_metric_values(store)
    spaces = load_embeddings(store, method, aligned=True)
    embeddings = {
        (p, t): vec for t, space in enumerate(spaces) for p, vec in space.items()
    }
    points = project_tsne(embeddings, perplexity=perplexity, seed=seed)
    store.write_json(
        "projection.json",
        [{"player": p.player, "timestamp": p.timestamp, "x": p.x, "y": p.y} for p in points],
    )

    by_snapshot: list[list[RoleCluster]] = []
    for snap in snapshots:
        snap_points = [p for p in points if p.timestamp in snap.timestamp_indices]
        if len(snap_points) < k_min:
            by_snapshot.append([])
            continue
        coords = np.array([[p.x, p.y] for p in snap_points])
        labels = cluster_xmeans(coords, k_min=k_min, k_max=k_max, seed=seed)
        by_snapshot.append(build_role_clusters(snap.index, snap_points, labels, metric_values))
    match_role_identities(by_snapshot, tau=tau)

    flows = compute_flows(by_snapshot, snapshots)
    store.write_json(
        "flows.json",
        [
            {
                "id": f.flow_id,
                "kind": f.kind,
                "source": f.source_cluster,
                "target": f.target_cluster,
                "players": sorted(f.players),
                "ratio": f.ratio,
                "from_t": f.from_t,
                "to_t": f.to_t,
            }
            for f in flows
        ],
    )

    assignments: dict[str, str] = {}
    for clusters in by_snapshot:
        for c in clusters:
            for player, t in c.members:
                assignments[f"{player}@{t}"] = c.color_id
    store.write_json("assignments.json", assignments)

    for snap, clusters in zip(snapshots, by_snapshot):
        tdist = time_distribution_report(
            {i: sorted(c.members) for i, c in enumerate(clusters)}
        )
        store.write_json(
            f"roles/{snap.index}.json",
            {
                "snapshot": snap.index,
                "clusters": [
                    {
                        "cluster_id": c.cluster_id,
                        "color_id": c.color_id,
                        "size": c.size,
                        "members": sorted([list(m) for m in c.members]),
                        "metric_means": c.metric_means,
                        "metric_histograms": c.metric_histograms,
                        "time_distribution": {str(k): v for k, v in sorted(c.time_distribution.items())},
                        "time_stats": tdist[i],
                    }
                    for i, c in enumerate(clusters)
                ],
            },
        )

    # network overview needs role assignments for transition percentages
    role_by_key = {
        (player_t.split("@")[0], int(player_t.split("@")[1])): color
        for player_t, color in assignments.items()
    }
    rows_by_t = {
        g.index: store.read_json(f"metrics/{g.index}.json") for g in graphs
    }
    overview = graph_metrics.compute_overview(graphs, rows_by_t, role_by_key)
    store.write_json(
        "overview.json",
        {"timestamps": overview.timestamps, "metric_histograms": overview.metric_histograms},
    )
    store.mark_stage("roles", h, {"tau": tau, "method": method})


def _clusters_as_eval_input(clusters: list[RoleCluster]) -> dict[int, list[tuple[str, int]]]:
    return {i: sorted(c.members) for i, c in enumerate(clusters)}


def _evaluate_method(
    store: Store,
    method: str,
    seed: int,
    k_min: int,
    k_max: int,
    perplexity: float,
) -> dict:
    """Project + cluster a method's aligned embeddings and score per snapshot."""
    snapshots = load_snapshots(store)
    metric_values = load_metric_values(store)
    spaces = load_embeddings(store, method, aligned=True)
    embeddings = {(p, t): v for t, space in enumerate(spaces) for p, v in space.items()}
    points = project_tsne(embeddings, perplexity=perplexity, seed=seed)

    inter: dict[str, list[float]] = {m: [] for m in METRIC_NAMES}
    intra: dict[str, list[float]] = {m: [] for m in METRIC_NAMES}
    entropies: list[float] = []
    for snap in snapshots:
        snap_points = [p for p in points if p.timestamp in snap.timestamp_indices]
        if len(snap_points) < max(k_min, 2):
            continue
        coords = np.array([[p.x, p.y] for p in snap_points])
        labels = cluster_xmeans(coords, k_min=k_min, k_max=k_max, seed=seed)
        clusters = build_role_clusters(snap.index, snap_points, labels, metric_values)
        report = evaluate_clustering(
            _clusters_as_eval_input(clusters), metric_values, METRIC_NAMES
        )
        for m in METRIC_NAMES:
            inter[m].append(report.inter_cluster[m])
            intra[m].append(report.intra_cluster[m])
        tstats = time_distribution_report(_clusters_as_eval_input(clusters))
        entropies.extend(st["entropy"] for st in tstats.values())
    return {
        "inter_cluster": {m: float(np.mean(v)) if v else 0.0 for m, v in inter.items()},
        "intra_cluster": {m: float(np.mean(v)) if v else 0.0 for m, v in intra.items()},
        "mean_time_entropy": float(np.mean(entropies)) if entropies else 0.0,
    }


def _per_timestamp_baseline_entropy(
    store: Store, method: str, seed: int, k_min: int, k_max: int, perplexity: float
) -> float:
    """Timestamp-local clustering baseline: clusters cannot mix timestamps."""
    spaces = load_embeddings(store, method, aligned=False)
    entropies: list[float] = []
    for t, space in enumerate(spaces):
        if len(space) < max(k_min, 2):
            continue
        embeddings = {(p, t): v for p, v in space.items()}
        points = project_tsne(embeddings, perplexity=perplexity, seed=seed)
        coords = np.array([[p.x, p.y] for p in points])
        labels = cluster_xmeans(coords, k_min=k_min, k_max=k_max, seed=seed)
        clusters: dict[int, list[tuple[str, int]]] = {}
        for p, lab in zip(points, labels):
            clusters.setdefault(int(lab), []).append((p.player, p.timestamp))
        tstats = time_distribution_report(clusters)
        entropies.extend(st["entropy"] for st in tstats.values())
    return float(np.mean(entropies)) if entropies else 0.0


def run_eval(
    store: Store,
    seed: int = 0,
    params: EmbeddingParams | None = None,
    k_min: int = 2,
    k_max: int = 16,
    perplexity: float = 30.0,
) -> dict:
    """Compare the structural method against the proximity baseline."""
    params = params or EmbeddingParams()
    for method in ("struc2vec", "deepwalk"):
        run_embed(store, method=method, params=params, seed=seed)
        run_align(store, method=method, seed=seed)
    store.require_stage("metrics")

    cfg = {
        "stage": "eval",
        "seed": seed,
        "k": [k_min, k_max],
        "perplexity": perplexity,
        "align_s": store.stage_hash("align:struc2vec"),
        "align_d": store.stage_hash("align:deepwalk"),
        "metrics": store.stage_hash("metrics"),
    }
    h = config_hash(cfg)
    if store.stage_hash("eval") == h and store.has("evaluation.json"):
        return store.read_json("evaluation.json")

    result = {
        "struc2vec_align": _evaluate_method(store, "struc2vec", seed, k_min, k_max, perplexity),
        "deepwalk_align": _evaluate_method(store, "deepwalk", seed, k_min, k_max, perplexity),
        "per_timestamp_baseline": {
            "mean_time_entropy": _per_timestamp_baseline_entropy(
                store, "struc2vec", seed, k_min, k_max, perplexity
            )
        },
    }
    store.write_json("evaluation.json", result)
    store.mark_stage("eval", h)
    return result


def run_synth(
    out_dir: str,
    players: int = 60,
    days: float = 2.25,
    seed: int = 7,
    scenario_file: str | None = None,
) -> tuple[str, str]:
    if scenario_file:
        import json as _json

        raw = _json.loads(Path(scenario_file).read_text())
        scenario = synth.Scenario(**raw)
    else:
        scenario = synth.default_scenario(players=players, days=days, seed=seed)
    return synth.write_scenario(scenario, out_dir)
