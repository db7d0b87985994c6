"""Clustering quality measures.

Inter-cluster score: mean KL divergence between per-cluster histograms of a
metric, over ordered cluster pairs (larger = clusters differ more).
Intra-cluster score: mean within-cluster variance of the metric (smaller =
clusters are tighter). Metrics are min-max normalized over the pooled
population before histogramming.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

N_BINS = 20
EPS = 1e-9


@dataclass
class EvaluationReport:
    method: str = ""
    inter_cluster: dict[str, float] = field(default_factory=dict)
    intra_cluster: dict[str, float] = field(default_factory=dict)


def minmax_normalize(values: np.ndarray) -> np.ndarray:
    lo = values.min()
    hi = values.max()
    if hi == lo:
        return np.zeros_like(values)
    return (values - lo) / (hi - lo)


def hist_normalized(values: np.ndarray, bins: int = N_BINS) -> np.ndarray:
    """Histogram of values in [0, 1], epsilon-smoothed and renormalized."""
    counts, _ = np.histogram(values, bins=bins, range=(0.0, 1.0))
    h = counts.astype(np.float64) + EPS
    return h / h.sum()


def kl_divergence(p: np.ndarray, q: np.ndarray) -> float:
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    mask = p > 0
    return float(np.sum(p[mask] * np.log(p[mask] / q[mask])))


def js_divergence(p: np.ndarray, q: np.ndarray) -> float:
    """Symmetric divergence in [0, ln 2]; inputs must be same-length pmfs."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise ValueError(f"bin mismatch: {p.shape} vs {q.shape}")
    for name, v in (("p", p), ("q", q)):
        if abs(v.sum() - 1.0) > 1e-9:
            raise ValueError(f"{name} does not sum to 1")
    m = (p + q) / 2
    def _kl(a, b):
        mask = a > 0
        return float(np.sum(a[mask] * np.log(a[mask] / b[mask])))
    return 0.5 * _kl(p, m) + 0.5 * _kl(q, m)


def normalized_histograms(
    clusters: dict[int, list], metric_values: dict, metric_names: list[str],
    bins: int = N_BINS,
) -> dict[int, dict[str, np.ndarray]]:
    """Per-cluster, per-metric smoothed histograms over the pooled min-max range."""
    out: dict[int, dict[str, np.ndarray]] = {c: {} for c in clusters}
    for name in metric_names:
        pooled_keys = [k for members in clusters.values() for k in members]
        pooled = np.array([metric_values[k][name] for k in pooled_keys])
        normed = minmax_normalize(pooled)
        by_key = dict(zip(pooled_keys, normed))
        for c, members in clusters.items():
            vals = np.array([by_key[k] for k in members])
            out[c][name] = hist_normalized(vals, bins=bins)
    return out


def evaluate_clustering(
    clusters: dict[int, list],
    metric_values: dict,
    metric_names: list[str],
    method: str = "",
    bins: int = N_BINS,
) -> EvaluationReport:
    """Inter/intra cluster scores per metric for one clustering."""
    report = EvaluationReport(method=method)
    hists = normalized_histograms(clusters, metric_values, metric_names, bins=bins)
    cluster_ids = sorted(clusters)
    for name in metric_names:
        pooled_keys = [k for members in clusters.values() for k in members]
        pooled = np.array([metric_values[k][name] for k in pooled_keys])
        normed = dict(zip(pooled_keys, minmax_normalize(pooled)))

        if len(cluster_ids) >= 2:
            kls = [
                kl_divergence(hists[p][name], hists[q][name])
                for p in cluster_ids
                for q in cluster_ids
                if p != q
            ]
            report.inter_cluster[name] = float(np.mean(kls))
        else:
            report.inter_cluster[name] = 0.0

        variances = []
        for c in cluster_ids:
            vals = np.array([normed[k] for k in clusters[c]])
            variances.append(float(vals.var()) if len(vals) > 1 else 0.0)
        report.intra_cluster[name] = float(np.mean(variances))
    return report


def timestamp_entropy(timestamps: list[int]) -> float:
    n = len(timestamps)
    if n == 0:
        return 0.0
    counts: dict[int, int] = {}
    for t in timestamps:
        counts[t] = counts.get(t, 0) + 1
    return -sum((c / n) * math.log(c / n) for c in counts.values())


def time_distribution_report(clusters: dict[int, list[tuple[str, int]]]) -> dict[int, dict]:
    """Boxplot stats and entropy of member timestamps per cluster."""
    out = {}
    for c, members in clusters.items():
        ts = sorted(t for _, t in members)
        arr = np.array(ts, dtype=np.float64)
        out[c] = {
            "min": float(arr.min()),
            "q1": float(np.percentile(arr, 25)),
            "median": float(np.median(arr)),
            "q3": float(np.percentile(arr, 75)),
            "max": float(arr.max()),
            "entropy": timestamp_entropy(ts),
        }
    return out
