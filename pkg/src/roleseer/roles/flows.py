"""Player movement between role clusters.

Interconversion flows connect consecutive timestamps inside one snapshot;
transition flows connect consecutive snapshots, where a player's snapshot
role is the cluster at their last active timestamp within that snapshot.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..ingest import Snapshot
from .clusters import RoleCluster


@dataclass
class TransitionFlow:
    kind: str  # "interconversion" | "transition"
    source_cluster: str
    target_cluster: str
    players: set[str] = field(default_factory=set)
    ratio: float = 0.0
    from_t: int = -1
    to_t: int = -1

    @property
    def flow_id(self) -> str:
        return f"{self.kind}:{self.source_cluster}->{self.target_cluster}:{self.from_t}-{self.to_t}"


def cluster_of(clusters: list[RoleCluster], player: str, timestamp: int) -> RoleCluster | None:
    for c in clusters:
        if (player, timestamp) in c.members:
            return c
    return None


def snapshot_role(
    clusters: list[RoleCluster], snapshot: Snapshot, player: str
) -> RoleCluster | None:
    """Role at the player's last active timestamp of the snapshot."""
    for t in reversed(snapshot.timestamp_indices):
        c = cluster_of(clusters, player, t)
        if c is not None:
            return c
    return None


def compute_flows(
    clusters_by_snapshot: list[list[RoleCluster]],
    snapshots: list[Snapshot],
) -> list[TransitionFlow]:
    flows: list[TransitionFlow] = []

    # interconversion: consecutive timestamps within each snapshot
    for snap, clusters in zip(snapshots, clusters_by_snapshot):
        membership: dict[tuple[str, int], RoleCluster] = {}
        for c in clusters:
            for key in c.members:
                membership[key] = c
        for a, b in zip(snap.timestamp_indices, snap.timestamp_indices[1:]):
            grouped: dict[tuple[str, str], set[str]] = {}
            for (player, t), src in membership.items():
                if t != a:
                    continue
                dst = membership.get((player, b))
                if dst is None:
                    continue
                grouped.setdefault((src.cluster_id, dst.cluster_id), set()).add(player)
            # ratio denominator: distinct players holding the source role
            src_players = {c.cluster_id: len({p for p, _ in c.members}) for c in clusters}
            for (src_id, dst_id), players in sorted(grouped.items()):
                flows.append(
                    TransitionFlow(
                        "interconversion", src_id, dst_id, players,
                        ratio=len(players) / src_players[src_id], from_t=a, to_t=b,
                    )
                )

    # transition: consecutive snapshots
    for s in range(len(snapshots) - 1):
        cur, nxt = clusters_by_snapshot[s], clusters_by_snapshot[s + 1]
        players_cur = {p for c in cur for p, _ in c.members}
        players_nxt = {p for c in nxt for p, _ in c.members}
        grouped: dict[tuple[str, str], set[str]] = {}
        for player in players_cur & players_nxt:
            src = snapshot_role(cur, snapshots[s], player)
            dst = snapshot_role(nxt, snapshots[s + 1], player)
            if src is None or dst is None:
                continue
            grouped.setdefault((src.cluster_id, dst.cluster_id), set()).add(player)
        src_players = {c.cluster_id: len({p for p, _ in c.members}) for c in cur}
        for (src_id, dst_id), players in sorted(grouped.items()):
            flows.append(
                TransitionFlow(
                    "transition", src_id, dst_id, players,
                    ratio=len(players) / src_players[src_id],
                    from_t=s, to_t=s + 1,
                )
            )
    return flows
