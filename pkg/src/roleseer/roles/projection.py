"""2D projection of aligned embeddings for clustering and display."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.decomposition import PCA
from sklearn.manifold import TSNE


@dataclass(frozen=True)
class ProjectedPoint:
    player: str
    timestamp: int
    x: float
    y: float


def project_vectors(
    vectors: np.ndarray,
    perplexity: float = 30.0,
    iters: int = 1000,
    seed: int = 0,
    exact_limit: int = 2000,
) -> np.ndarray:
    """t-SNE to 2D; exact method up to exact_limit points, Barnes-Hut above.

    Fewer than 5 points fall back to the first two principal directions, and
    a degenerate input (all rows identical) collapses to the origin.
    """
    n = len(vectors)
    if n == 0:
        return np.zeros((0, 2))
    vectors = np.asarray(vectors, dtype=np.float64)
    if np.allclose(vectors, vectors[0]):
        return np.zeros((n, 2))
    if n < 5:
        pca = PCA(n_components=2, random_state=seed)
        out = np.zeros((n, 2))
        out[:, : min(2, vectors.shape[1])] = pca.fit_transform(vectors)[:, :2]
        return out
    perplexity = min(perplexity, (n - 1) / 3)
    method = "exact" if n <= exact_limit else "barnes_hut"
    tsne = TSNE(
        n_components=2,
        perplexity=perplexity,
        max_iter=max(iters, 250),
        random_state=seed,
        init="random",
        method=method,
        angle=0.5,
    )
    return tsne.fit_transform(vectors).astype(np.float64)


def project_tsne(
    embeddings: dict[tuple[str, int], np.ndarray],
    perplexity: float = 30.0,
    iters: int = 1000,
    seed: int = 0,
) -> list[ProjectedPoint]:
    keys = sorted(embeddings)
    if not keys:
        return []
    mat = np.array([embeddings[k] for k in keys])
    coords = project_vectors(mat, perplexity=perplexity, iters=iters, seed=seed)
    return [
        ProjectedPoint(player, t, float(x), float(y))
        for (player, t), (x, y) in zip(keys, coords)
    ]
