"""Cluster-count estimation by recursive 2-way splits scored with BIC."""

from __future__ import annotations

import logging

import numpy as np
from sklearn.cluster import KMeans

logger = logging.getLogger(__name__)


def _bic(points: np.ndarray, labels: np.ndarray, centers: np.ndarray) -> float:
    """BIC of a spherical-Gaussian k-means model (Pelleg & Moore form)."""
    n, d = points.shape
    k = len(centers)
    if n <= k:
        return -np.inf
    sq = 0.0
    sizes = np.zeros(k)
    for j in range(k):
        mask = labels == j
        sizes[j] = mask.sum()
        if sizes[j]:
            sq += float(((points[mask] - centers[j]) ** 2).sum())
    variance = sq / (d * (n - k))
    if variance <= 0:
        variance = 1e-12
    loglik = 0.0
    for j in range(k):
        nj = sizes[j]
        if nj <= 0:
            continue
        loglik += (
            nj * np.log(max(nj, 1e-12))
            - nj * np.log(n)
            - nj * d / 2 * np.log(2 * np.pi * variance)
            - (nj - 1) * d / 2
        )
    n_params = k * (d + 1)
    return loglik - n_params / 2 * np.log(n)


def _best_split(sub: np.ndarray, seed: int):
    """Best 2-way split of a cluster by BIC, or (None, None, -inf).

    Tries k-means++ and, additionally, a split seeded at the point farthest
    from the cluster mean: the SSE optimum of plain 2-means slices a large
    cloud in half, which misses small outlying blobs entirely.
    """
    center = sub.mean(axis=0)
    far = sub[np.argmax(((sub - center) ** 2).sum(axis=1))]
    candidates = [
        KMeans(n_clusters=2, init="k-means++", n_init=10, random_state=seed),
        KMeans(n_clusters=2, init=np.vstack([center, far]), n_init=1),
    ]
    best = (None, None, -np.inf)
    for km in candidates:
        labels = km.fit_predict(sub)
        if len(np.unique(labels)) < 2:
            continue
        bic = _bic(sub, labels, km.cluster_centers_)
        if bic > best[2]:
            best = (labels, km.cluster_centers_, bic)
    return best


def cluster_xmeans(
    points: np.ndarray,
    k_min: int = 2,
    k_max: int = 16,
    seed: int = 0,
) -> np.ndarray:
    """Assign every point a cluster label; k chosen in [k_min, k_max] by BIC.

    Starts from k-means++ at k_min and recursively accepts 2-way splits that
    improve the local BIC. All-identical inputs yield a single flagged cluster.
    """
    points = np.asarray(points, dtype=np.float64)
    n = len(points)
    if n < k_min:
        raise ValueError(f"need at least k_min={k_min} points, got {n}")
    if np.allclose(points, points[0]):
        logger.warning("all points identical; single cluster")
        return np.zeros(n, dtype=np.int64)

    km = KMeans(n_clusters=k_min, init="k-means++", n_init=10, random_state=seed)
    labels = km.fit_predict(points)
    centers = list(km.cluster_centers_)

    changed = True
    while changed and len(centers) < k_max:
        changed = False
        for j in range(len(centers)):
            mask = labels == j
            sub = points[mask]
            if len(sub) < 4 or np.allclose(sub, sub[0]):
                continue
            parent_bic = _bic(sub, np.zeros(len(sub), dtype=np.int64), sub.mean(axis=0)[None, :])
            sub_labels, sub_centers, child_bic = _best_split(sub, seed + j + 1)
            if sub_labels is None:
                continue
            if child_bic > parent_bic and len(centers) < k_max:
                new_id = len(centers)
                idx = np.where(mask)[0]
                labels[idx[sub_labels == 1]] = new_id
                centers[j] = sub_centers[0]
                centers.append(sub_centers[1])
                changed = True
                if len(centers) >= k_max:
                    break
    # compact label ids to 0..k-1 in order of first occurrence
    remap: dict[int, int] = {}
    out = np.empty(n, dtype=np.int64)
    for i, lab in enumerate(labels):
        if lab not in remap:
            remap[lab] = len(remap)
        out[i] = remap[lab]
    return out
