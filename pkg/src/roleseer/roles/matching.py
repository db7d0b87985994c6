"""Role identity matching across snapshots.

Each cluster inherits the color of its most similar predecessor (lowest mean
JS divergence over the six metric histograms) when that divergence is at most
tau; otherwise it mints a new color. A predecessor color is inherited by at
most one successor, resolved greedily by ascending JS with ties broken toward
the larger successor cluster.
"""

from __future__ import annotations

import numpy as np

from ..graph_metrics import METRIC_NAMES
from .evaluation import js_divergence
from .clusters import RoleCluster


def _mean_js(a: RoleCluster, b: RoleCluster) -> float:
    return float(
        np.mean(
            [
                js_divergence(np.array(a.metric_histograms[m]), np.array(b.metric_histograms[m]))
                for m in METRIC_NAMES
            ]
        )
    )


def match_role_identities(
    clusters_by_snapshot: list[list[RoleCluster]],
    tau: float = 0.3,
) -> None:
    """Assign color_id in place across the snapshot sequence."""
    next_color = 0

    def mint() -> str:
        nonlocal next_color
        c = f"role-{next_color}"
        next_color += 1
        return c

    if not clusters_by_snapshot:
        return
    for cluster in clusters_by_snapshot[0]:
        cluster.color_id = mint()

    for s in range(1, len(clusters_by_snapshot)):
        prev = clusters_by_snapshot[s - 1]
        cur = clusters_by_snapshot[s]
        candidates = sorted(
            (
                (_mean_js(ci, cj), -ci.size, i, j)
                for i, ci in enumerate(cur)
                for j, cj in enumerate(prev)
            ),
        )
        taken_prev: set[int] = set()
        assigned: set[int] = set()
        for js, _, i, j in candidates:
            if js > tau:
                break
            if i in assigned or j in taken_prev:
                continue
            cur[i].color_id = prev[j].color_id
            assigned.add(i)
            taken_prev.add(j)
        for i, ci in enumerate(cur):
            if i not in assigned:
                ci.color_id = mint()
