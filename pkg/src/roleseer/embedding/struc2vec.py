"""Structure-preserving node embedding machinery.

Per-node hop rings of degrees are compared with dynamic time warping to get
multiscale structural distances; these induce a multilayer weighted context
graph over which biased random walks produce a corpus for skip-gram training.
Nodes with similar local topology end up with similar walk contexts even when
they are far apart or disconnected.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from ..ingest import TimestampGraph


@njit(cache=True)
def _dtw_cost(degs_a, cnts_a, degs_b, cnts_b):
    """DTW between compressed degree sequences.

    Elementwise cost max/min - 1 (a zero degree is penalized by the larger
    degree), scaled by the larger run length of the two compressed entries.
    """
    n, m = len(degs_a), len(degs_b)
    dp = np.full((n + 1, m + 1), np.inf)
    dp[0, 0] = 0.0
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            a = degs_a[i - 1]
            b = degs_b[j - 1]
            hi = a if a > b else b
            lo = b if a > b else a
            if lo == 0:
                c = float(hi)
            else:
                c = hi / lo - 1.0
            reps = cnts_a[i - 1] if cnts_a[i - 1] > cnts_b[j - 1] else cnts_b[j - 1]
            c *= reps
            best = dp[i - 1, j]
            if dp[i, j - 1] < best:
                best = dp[i, j - 1]
            if dp[i - 1, j - 1] < best:
                best = dp[i - 1, j - 1]
            dp[i, j] = c + best
    return dp[n, m]


def _adjacency_index(g: TimestampGraph) -> tuple[list[str], list[list[int]]]:
    nodes = sorted(g.nodes)
    idx = {v: i for i, v in enumerate(nodes)}
    adj: list[list[int]] = [[] for _ in nodes]
    for a, b in g.edges:
        adj[idx[a]].append(idx[b])
        adj[idx[b]].append(idx[a])
    for lst in adj:
        lst.sort()
    return nodes, adj


def _rings(adj: list[list[int]], v: int, k_max: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Compressed sorted degree sequence of each hop ring around v."""
    degs = [len(ns) for ns in adj]
    dist = {v: 0}
    frontier = deque([v])
    rings: list[list[int]] = [[] for _ in range(k_max + 1)]
    rings[0] = [degs[v]]
    while frontier:
        u = frontier.popleft()
        if dist[u] == k_max:
            continue
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                rings[dist[w]].append(degs[w])
                frontier.append(w)
    out = []
    for ring in rings:
        if not ring:
            out.append((np.empty(0, dtype=np.float64), np.empty(0, dtype=np.float64)))
            continue
        vals, counts = np.unique(np.array(ring, dtype=np.float64), return_counts=True)
        out.append((vals, counts.astype(np.float64)))
    return out


def ordered_degree_sequence(g: TimestampGraph, v: str, k: int) -> list[int]:
    """Sorted degrees of the nodes at exactly hop distance k from v."""
    if k < 0:
        raise ValueError("k must be >= 0")
    nodes, adj = _adjacency_index(g)
    idx = nodes.index(v)
    rings = _rings(adj, idx, k)
    vals, counts = rings[k]
    seq: list[int] = []
    for d, c in zip(vals, counts):
        seq.extend([int(d)] * int(c))
    return seq


def _graph_diameter(adj: list[list[int]]) -> int:
    diam = 0
    for v in range(len(adj)):
        dist = {v: 0}
        q = deque([v])
        while q:
            u = q.popleft()
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    q.append(w)
        if dist:
            diam = max(diam, max(dist.values()))
    return diam


def _candidate_pairs(
    adj: list[list[int]], n: int, pivot_threshold: int, seed: int
) -> list[tuple[int, int]]:
    if n <= pivot_threshold:
        return [(i, j) for i in range(n) for j in range(i + 1, n)]
    # Large graphs: compare only degree-comparable nodes plus random pivots.
    rng = random.Random(seed)
    degs = [len(ns) for ns in adj]
    order = sorted(range(n), key=lambda i: degs[i])
    n_pivots = max(1, int(math.log2(n)))
    pivots = rng.sample(range(n), n_pivots)
    pairs: set[tuple[int, int]] = set()
    for pos, i in enumerate(order):
        for j in order[pos + 1 :]:
            lo, hi = min(degs[i], degs[j]), max(degs[i], degs[j])
            if hi > 2 * max(lo, 1):
                break
            pairs.add((i, j) if i < j else (j, i))
        for p in pivots:
            if p != i:
                pairs.add((i, p) if i < p else (p, i))
    return sorted(pairs)


def structural_distances(
    g: TimestampGraph,
    k_max: int | None = None,
    pivot_threshold: int = 2000,
    seed: int = 0,
) -> tuple[list[str], list[dict[tuple[int, int], float]]]:
    """Pairwise multiscale distances f_k, cumulative over hop rings.

    Returns the node order and one pair->f_k map per layer k; a pair stops
    appearing at the first k where either ring is empty.
    """
    nodes, adj = _adjacency_index(g)
    n = len(nodes)
    if n == 0:
        return nodes, []
    if k_max is None:
        k_max = 5
    k_max = min(k_max, max(_graph_diameter(adj), 0))
    rings = [_rings(adj, v, k_max) for v in range(n)]
    layers: list[dict[tuple[int, int], float]] = [dict() for _ in range(k_max + 1)]
    for i, j in _candidate_pairs(adj, n, pivot_threshold, seed):
        f = 0.0
        for k in range(k_max + 1):
            da, ca = rings[i][k]
            db, cb = rings[j][k]
            if len(da) == 0 or len(db) == 0:
                break
            f += _dtw_cost(da, ca, db, cb)
            layers[k][(i, j)] = f
    return nodes, layers


def structural_distance(g: TimestampGraph, u: str, v: str, k_max: int) -> list[float]:
    """f_k(u, v) for k = 0..k_max (truncated where a ring runs empty)."""
    nodes, adj = _adjacency_index(g)
    if u not in nodes or v not in nodes:
        raise KeyError(f"unknown node in pair ({u}, {v})")
    iu, iv = nodes.index(u), nodes.index(v)
    ra = _rings(adj, iu, k_max)
    rb = _rings(adj, iv, k_max)
    out: list[float] = []
    f = 0.0
    for k in range(k_max + 1):
        da, ca = ra[k]
        db, cb = rb[k]
        if len(da) == 0 or len(db) == 0:
            break
        f += _dtw_cost(da, ca, db, cb)
        out.append(f)
    return out


@dataclass
class LayerGraph:
    # per node: neighbor indices, sampling CDF over exp(-f_k) weights
    neighbors: list[np.ndarray]
    cdf: list[np.ndarray]
    up_weight: np.ndarray  # log(Gamma_k(u) + e)


@dataclass
class StructuralContext:
    nodes: list[str]
    layers: list[LayerGraph] = field(default_factory=list)

    @property
    def n_layers(self) -> int:
        return len(self.layers)


def build_context_graph(
    nodes: list[str], layers: list[dict[tuple[int, int], float]]
) -> StructuralContext:
    """Multilayer context graph: layer-k edge weight exp(-f_k).

    The upward inter-layer weight from (u, k) is log(Gamma_k(u) + e) where
    Gamma_k(u) counts u's layer-k edges weighing above the layer average;
    the downward weight is 1.
    """
    n = len(nodes)
    ctx = StructuralContext(nodes=nodes)
    for pair_f in layers:
        nbrs: list[list[int]] = [[] for _ in range(n)]
        wgts: list[list[float]] = [[] for _ in range(n)]
        total = 0.0
        for (i, j), f in pair_f.items():
            w = math.exp(-f)
            nbrs[i].append(j)
            wgts[i].append(w)
            nbrs[j].append(i)
            wgts[j].append(w)
            total += w
        avg = total / len(pair_f) if pair_f else 0.0
        neighbors = []
        cdfs = []
        up = np.zeros(n)
        for v in range(n):
            arr = np.array(nbrs[v], dtype=np.int64)
            w = np.array(wgts[v], dtype=np.float64)
            neighbors.append(arr)
            cdfs.append(np.cumsum(w))
            gamma = int(np.sum(w > avg)) if len(w) else 0
            up[v] = math.log(gamma + math.e)
        ctx.layers.append(LayerGraph(neighbors, cdfs, up))
    return ctx


@dataclass
class WalkCorpus:
    nodes: list[str]
    walks: list[list[int]]  # node indices into `nodes`
    walks_per_node: int
    walk_length: int
    seed: int


def generate_walks(
    ctx: StructuralContext,
    walks_per_node: int = 10,
    walk_length: int = 80,
    q_stay: float = 0.3,
    seed: int = 0,
) -> WalkCorpus:
    """Layer-biased random walks over the structural context graph.

    Each step stays within the current layer with probability 1 - q_stay
    (moving to a neighbor proportionally to edge weight) and otherwise moves
    up or down a layer proportionally to the inter-layer weights. The current
    node is appended at every step, so all walks have exactly walk_length
    tokens.
    """
    rng = random.Random(seed)
    walks: list[list[int]] = []
    n_layers = ctx.n_layers
    if n_layers == 0 or not ctx.nodes:
        return WalkCorpus(ctx.nodes, [], walks_per_node, walk_length, seed)
    for _ in range(walks_per_node):
        for start in range(len(ctx.nodes)):
            v = start
            layer = 0
            walk = [v]
            while len(walk) < walk_length:
                lg = ctx.layers[layer]
                has_nbrs = len(lg.neighbors[v]) > 0
                if has_nbrs and rng.random() >= q_stay:
                    cdf = lg.cdf[v]
                    x = rng.random() * cdf[-1]
                    v = int(lg.neighbors[v][int(np.searchsorted(cdf, x))])
                else:
                    # move between layers; clamp at the stack boundaries and
                    # never enter a layer where the node is edgeless
                    can_up = layer + 1 < n_layers and len(ctx.layers[layer + 1].neighbors[v]) > 0
                    up_w = lg.up_weight[v] if can_up else 0.0
                    down_w = 1.0 if layer > 0 else 0.0
                    tot = up_w + down_w
                    if tot > 0 and rng.random() * tot < up_w:
                        layer += 1
                    elif down_w > 0:
                        layer -= 1
                walk.append(v)
            walks.append(walk)
    return WalkCorpus(ctx.nodes, walks, walks_per_node, walk_length, seed)
