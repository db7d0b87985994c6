"""Per-timestamp embedding front doors: structural and proximity baselines."""

from __future__ import annotations

import logging
import random

import numpy as np

from ..ingest import TimestampGraph
from .params import EmbeddingParams
from .skipgram import node_init_vectors, train_skipgram
from .struc2vec import WalkCorpus, build_context_graph, generate_walks, structural_distances

logger = logging.getLogger(__name__)


def deepwalk_walks(
    g: TimestampGraph,
    walks_per_node: int = 10,
    walk_length: int = 80,
    seed: int = 0,
) -> WalkCorpus:
    """Uniform random walks on the raw topology (proximity baseline)."""
    nodes = sorted(g.nodes)
    idx = {v: i for i, v in enumerate(nodes)}
    adj: list[list[int]] = [[] for _ in nodes]
    for a, b in g.edges:
        adj[idx[a]].append(idx[b])
        adj[idx[b]].append(idx[a])
    for lst in adj:
        lst.sort()
    rng = random.Random(seed)
    walks = []
    for _ in range(walks_per_node):
        for start in range(len(nodes)):
            v = start
            walk = [v]
            while len(walk) < walk_length:
                if adj[v]:
                    v = adj[v][rng.randrange(len(adj[v]))]
                walk.append(v)
            walks.append(walk)
    return WalkCorpus(nodes, walks, walks_per_node, walk_length, seed)


def embed_graph(
    g: TimestampGraph,
    method: str = "struc2vec",
    params: EmbeddingParams | None = None,
    seed: int = 0,
    warm_start: dict[str, np.ndarray] | None = None,
) -> tuple[dict[str, np.ndarray], list[float]]:
    """Embed one timestamp graph; returns (player -> vector, epoch losses).

    `warm_start` supplies starting vectors for nodes trained in an earlier
    graph; nodes without one start at their name-derived position. Chaining
    graphs this way keeps successive vector spaces in comparable orientations,
    which a translation-only alignment cannot recover on its own.
    """
    params = params or EmbeddingParams()
    if not g.nodes:
        return {}, []
    if method == "struc2vec":
        nodes, layers = structural_distances(
            g, k_max=params.k_max, pivot_threshold=params.pivot_threshold, seed=seed
        )
        ctx = build_context_graph(nodes, layers)
        corpus = generate_walks(
            ctx,
            walks_per_node=params.walks_per_node,
            walk_length=params.walk_length,
            q_stay=params.q_stay,
            seed=seed,
        )
    elif method == "deepwalk":
        corpus = deepwalk_walks(
            g,
            walks_per_node=params.walks_per_node,
            walk_length=params.walk_length,
            seed=seed,
        )
    else:
        raise ValueError(f"unknown embedding method {method!r}")

    vectors, losses = train_skipgram(
        corpus.walks,
        vocab_size=len(corpus.nodes),
        dims=params.dims,
        window=params.window,
        negatives=params.negatives,
        epochs=params.epochs,
        lr=params.lr,
        lr_min=params.lr_min,
        seed=seed,
        init=_initial_vectors(list(corpus.nodes), params.dims, seed, warm_start),
    )
    if losses:
        logger.debug("t=%d %s losses: %s", g.index, method, losses)
    return {v: vectors[i] for i, v in enumerate(corpus.nodes)}, losses


def _initial_vectors(
    names: list[str],
    dims: int,
    seed: int,
    warm_start: dict[str, np.ndarray] | None,
) -> np.ndarray:
    init = node_init_vectors(names, dims, seed)
    if warm_start:
        for i, name in enumerate(names):
            vec = warm_start.get(name)
            if vec is not None:
                init[i] = vec
    return init
