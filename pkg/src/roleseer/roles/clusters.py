"""Role cluster records: membership plus displayable summaries."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..graph_metrics import METRIC_NAMES
from .evaluation import hist_normalized, minmax_normalize
from .projection import ProjectedPoint


@dataclass
class RoleCluster:
    cluster_id: str
    snapshot: int
    members: set[tuple[str, int]]
    metric_means: dict[str, float] = field(default_factory=dict)
    metric_histograms: dict[str, list[float]] = field(default_factory=dict)
    time_distribution: dict[int, int] = field(default_factory=dict)
    color_id: str = ""

    @property
    def size(self) -> int:
        return len(self.members)


def build_role_clusters(
    snapshot: int,
    points: list[ProjectedPoint],
    labels,
    metric_values: dict[tuple[str, int], dict[str, float]],
) -> list[RoleCluster]:
    """Assemble clusters for one snapshot from a point labelling.

    Metric summaries (radar means and 20-bin histograms) use min-max
    normalization over this snapshot's pooled population.
    """
    keys = [(p.player, p.timestamp) for p in points]
    normed: dict[str, dict[tuple[str, int], float]] = {}
    for name in METRIC_NAMES:
        pooled = np.array([metric_values[k][name] for k in keys])
        normed[name] = dict(zip(keys, minmax_normalize(pooled)))

    by_label: dict[int, list[tuple[str, int]]] = {}
    for key, lab in zip(keys, labels):
        by_label.setdefault(int(lab), []).append(key)

    clusters = []
    for lab in sorted(by_label):
        members = by_label[lab]
        tdist: dict[int, int] = {}
        for _, t in members:
            tdist[t] = tdist.get(t, 0) + 1
        cluster = RoleCluster(
            cluster_id=f"s{snapshot}c{lab}",
            snapshot=snapshot,
            members=set(members),
            time_distribution=tdist,
        )
        for name in METRIC_NAMES:
            vals = np.array([normed[name][k] for k in members])
            cluster.metric_means[name] = float(vals.mean())
            cluster.metric_histograms[name] = [float(x) for x in hist_normalized(vals)]
        clusters.append(cluster)
    return clusters
