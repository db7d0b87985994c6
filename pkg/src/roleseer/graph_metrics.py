"""Per-node graph metrics for the network overview and role evaluation.

Six metrics per node and timestamp: degree, pagerank, betweenness, leverage
centrality, within-module degree (z-score), and closeness. All of them are
computed on the unweighted topology; intimacy weights are reported separately
as in-game statistics.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import networkx as nx

from .ingest import TimestampGraph

METRIC_NAMES = (
    "degree",
    "pagerank",
    "betweenness",
    "leverage_centrality",
    "within_module_degree",
    "closeness",
)


def _to_nx(g: TimestampGraph) -> nx.Graph:
    gx = nx.Graph()
    gx.add_nodes_from(sorted(g.nodes))
    gx.add_edges_from(sorted(g.edges))
    return gx


def degree(g: TimestampGraph) -> dict[str, float]:
    adj = g.adjacency()
    return {v: float(len(adj[v])) for v in g.nodes}


def pagerank(
    g: TimestampGraph,
    damping: float = 0.85,
    tol: float = 1e-9,
    max_iter: int = 200,
) -> dict[str, float]:
    """Power iteration; mass of degree-0 nodes is redistributed uniformly.

    Use `pagerank_full` to also get the convergence flag; on non-convergence
    the last iterate is returned.
    """
    values, _ = pagerank_full(g, damping, tol, max_iter)
    return values


def pagerank_full(
    g: TimestampGraph,
    damping: float = 0.85,
    tol: float = 1e-9,
    max_iter: int = 200,
) -> tuple[dict[str, float], bool]:
    nodes = sorted(g.nodes)
    n = len(nodes)
    if n == 0:
        return {}, True
    idx = {v: i for i, v in enumerate(nodes)}
    adj = g.adjacency()
    neigh = [[idx[u] for u in adj[v]] for v in nodes]
    deg = [len(ns) for ns in neigh]

    pr = [1.0 / n] * n
    converged = False
    for _ in range(max_iter):
        dangling = sum(pr[i] for i in range(n) if deg[i] == 0)
        base = (1.0 - damping) / n + damping * dangling / n
        new = [base] * n
        for i in range(n):
            if deg[i]:
                share = damping * pr[i] / deg[i]
                for j in neigh[i]:
                    new[j] += share
        err = sum(abs(new[i] - pr[i]) for i in range(n))
        pr = new
        if err < tol:
            converged = True
            break
    return {v: pr[idx[v]] for v in nodes}, converged


def betweenness(g: TimestampGraph) -> dict[str, float]:
    """Unnormalized Brandes betweenness, each unordered pair counted once."""
    gx = _to_nx(g)
    return {v: float(c) for v, c in nx.betweenness_centrality(gx, normalized=False).items()}


def closeness(g: TimestampGraph) -> dict[str, float]:
    """Per-component closeness scaled by component reach (Wasserman-Faust)."""
    gx = _to_nx(g)
    return {v: float(c) for v, c in nx.closeness_centrality(gx, wf_improved=True).items()}


def leverage_centrality(g: TimestampGraph) -> dict[str, float]:
    adj = g.adjacency()
    deg = {v: len(adj[v]) for v in g.nodes}
    out = {}
    for v in g.nodes:
        dv = deg[v]
        if dv == 0:
            out[v] = 0.0
            continue
        out[v] = sum((dv - deg[u]) / (dv + deg[u]) for u in adj[v]) / dv
    return out


def detect_communities(g: TimestampGraph, seed: int = 0) -> list[set[str]]:
    """Seeded label propagation; connected components guide nothing else."""
    gx = _to_nx(g)
    if gx.number_of_nodes() == 0:
        return []
    return [set(c) for c in nx.community.asyn_lpa_communities(gx, seed=seed)]


def within_module_degree(g: TimestampGraph, seed: int = 0,
                         communities: list[set[str]] | None = None) -> dict[str, float]:
    """z-score of a node's intra-community degree relative to its community."""
    if communities is None:
        communities = detect_communities(g, seed=seed)
    adj = g.adjacency()
    out: dict[str, float] = {}
    for comm in communities:
        within = {v: sum(1 for u in adj[v] if u in comm) for v in comm}
        vals = list(within.values())
        n = len(vals)
        if n <= 1:
            for v in comm:
                out[v] = 0.0
            continue
        mean = sum(vals) / n
        var = sum((x - mean) ** 2 for x in vals) / n
        if var == 0.0:
            for v in comm:
                out[v] = 0.0
            continue
        std = math.sqrt(var)
        for v in comm:
            out[v] = (within[v] - mean) / std
    return out


def compute_all(g: TimestampGraph, seed: int = 0) -> dict[str, dict[str, float]]:
    """All six metrics for one graph, keyed player -> metric name -> value."""
    cols = {
        "degree": degree(g),
        "pagerank": pagerank(g),
        "betweenness": betweenness(g),
        "leverage_centrality": leverage_centrality(g),
        "within_module_degree": within_module_degree(g, seed=seed),
        "closeness": closeness(g),
    }
    return {v: {name: cols[name][v] for name in METRIC_NAMES} for v in g.nodes}


@dataclass
class OverviewStats:
    timestamps: list[dict] = field(default_factory=list)  # node/edge counts, transition_pct
    metric_histograms: dict[str, dict] = field(default_factory=dict)


def histogram(values: list[float], bins: int = 20) -> dict:
    if not values:
        return {"min": 0.0, "max": 0.0, "counts": [0] * bins}
    lo, hi = min(values), max(values)
    counts = [0] * bins
    if hi == lo:
        counts[0] = len(values)
    else:
        width = (hi - lo) / bins
        for x in values:
            i = min(int((x - lo) / width), bins - 1)
            counts[i] += 1
    return {"min": float(lo), "max": float(hi), "counts": counts}


def compute_overview(
    graphs: list[TimestampGraph],
    metric_rows: dict[int, dict[str, dict[str, float]]],
    role_assignments: dict[tuple[str, int], int] | None = None,
) -> OverviewStats:
    """Per-timestamp counts and transition percentages, plus metric histograms.

    transition_pct at timestamp t counts players whose cluster differs from
    their cluster at t-1 (among players assigned at both), over active players.
    """
    role_assignments = role_assignments or {}
    stats = OverviewStats()
    for g in graphs:
        changed = 0
        if g.index > 0:
            for p in g.nodes:
                prev = role_assignments.get((p, g.index - 1))
                cur = role_assignments.get((p, g.index))
                if prev is not None and cur is not None and prev != cur:
                    changed += 1
        n_active = len(g.nodes)
        stats.timestamps.append(
            {
                "index": g.index,
                "node_count": n_active,
                "edge_count": len(g.edges),
                "transition_pct": 100.0 * changed / n_active if n_active else 0.0,
            }
        )
    for name in METRIC_NAMES:
        pooled = [
            row[name]
            for t, rows in sorted(metric_rows.items())
            for _, row in sorted(rows.items())
        ]
        stats.metric_histograms[name] = histogram(pooled)
    return stats


def bfs_distances(adj: dict[str, set[str]], source: str) -> dict[str, int]:
    dist = {source: 0}
    q = deque([source])
    while q:
        v = q.popleft()
        for u in adj[v]:
            if u not in dist:
                dist[u] = dist[v] + 1
                q.append(u)
    return dist
