"""Synthetic interaction-log generator with planted roles.

Communities of players with scripted structural archetypes per snapshot:
hubs (interact with everyone in the community), bridges (link two
communities), peripheries (interact with their hub and an occasional
neighbor), and isolates (solo events only, so they stay active but
edgeless). Event counts per pair per hour are Poisson; everything is
deterministic under the scenario seed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .ingest import SECONDS_PER_HOUR, VARIABLE_EVENTS

ARCHETYPES = ("hub", "bridge", "periphery", "isolate")

# event-type mix per archetype (weights, normalized when sampling)
EVENT_MIX = {
    "hub": {"Chatting": 4, "Carbon": 3, "Task": 2, "KillingMonster": 1},
    "bridge": {"Chatting": 3, "Carbon": 4, "Fighting": 1, "Task": 2},
    "periphery": {"KillingMonster": 4, "Battle": 2, "Chatting": 1, "UsingProps": 1},
    "isolate": {"KillingMonster": 6, "Task": 2, "UsingProps": 2},
}


@dataclass
class Scenario:
    player_count: int
    duration_days: float
    seed: int
    communities: list[list[str]]
    # player -> list of archetypes, one per snapshot
    scripts: dict[str, list[str]]
    snapshot_hours: int = 18
    window_hours: int = 6
    pair_rate: float = 0.5  # base events per active pair per hour
    solo_rate: float = 2.0  # solo events per hour for every player
    # rate multiplier for the peripheral chain; high values make every chain
    # edge near-certain per window, giving peripherals uniform local structure
    chain_mult: float = 0.3

    @property
    def n_snapshots(self) -> int:
        return max(1, int(self.duration_days * 24 // self.snapshot_hours))


def default_scenario(
    players: int = 60,
    days: float = 2.25,
    seed: int = 7,
    community_size: int = 20,
    bridges: bool = True,
    transitions: list[tuple[str, int, str]] | None = None,
) -> Scenario:
    """Community structure with one hub per community, a bridge per adjacent
    community pair, one isolate per community, and peripheral members.

    `transitions` entries (player, snapshot, new_archetype) rewrite the
    player's script from that snapshot on.
    """
    ids = [f"p{i:04d}" for i in range(players)]
    communities = [ids[i : i + community_size] for i in range(0, players, community_size)]
    n_snapshots = max(1, int(days * 24 // 18))
    scripts: dict[str, list[str]] = {}
    for ci, comm in enumerate(communities):
        for pos, p in enumerate(comm):
            if pos == 0:
                role = "hub"
            elif pos == 1 and bridges and ci + 1 < len(communities):
                role = "bridge"
            elif pos == len(comm) - 1:
                role = "isolate"
            else:
                role = "periphery"
            scripts[p] = [role] * n_snapshots
    for player, snap, role in transitions or []:
        for s in range(snap, n_snapshots):
            scripts[player][s] = role
    return Scenario(players, days, seed, communities, scripts)


def _community_of(scenario: Scenario, player: str) -> int:
    for i, comm in enumerate(scenario.communities):
        if player in comm:
            return i
    raise KeyError(player)


def _active_pairs(scenario: Scenario, snap: int) -> list[tuple[str, str, float]]:
    """Pairs that interact during a snapshot, with rate multipliers."""
    pairs: dict[tuple[str, str], float] = {}

    def add(a: str, b: str, mult: float) -> None:
        key = (a, b) if a < b else (b, a)
        pairs[key] = max(pairs.get(key, 0.0), mult)

    role = {p: scenario.scripts[p][min(snap, len(scenario.scripts[p]) - 1)]
            for p in scenario.scripts}
    for ci, comm in enumerate(scenario.communities):
        hubs = [p for p in comm if role[p] == "hub"]
        sociable = [p for p in comm if role[p] not in ("isolate",)]
        for h in hubs:
            for p in sociable:
                if p != h:
                    add(h, p, 1.0)
        # sparse peripheral chain keeps the community connected beyond the hub
        periph = [p for p in comm if role[p] == "periphery"]
        for a, b in zip(periph, periph[1:]):
            add(a, b, scenario.chain_mult)
        for p in comm:
            if role[p] == "bridge" and ci + 1 < len(scenario.communities):
                other = scenario.communities[ci + 1]
                for q in other[: max(2, len(other) // 5)]:
                    add(p, q, 0.8)
    return [(a, b, m) for (a, b), m in sorted(pairs.items())]


def generate(scenario: Scenario) -> tuple[list[dict], dict]:
    """Emit event records (sorted by time) and the ground-truth role table."""
    rng = np.random.default_rng(scenario.seed)
    total_hours = int(scenario.duration_days * 24)
    records: list[dict] = []

    event_names = {role: sorted(mix) for role, mix in EVENT_MIX.items()}
    event_probs = {
        role: np.array([EVENT_MIX[role][e] for e in event_names[role]], dtype=float)
        for role in EVENT_MIX
    }
    for role in event_probs:
        event_probs[role] = event_probs[role] / event_probs[role].sum()

    def sample_events(actor: str, target: str | None, role: str, hour: int, count: int):
        if count <= 0:
            return
        names = event_names[role]
        picks = rng.choice(len(names), size=count, p=event_probs[role])
        offsets = np.sort(rng.integers(0, SECONDS_PER_HOUR, size=count))
        for pick, off in zip(picks, offsets):
            ev = names[int(pick)]
            value = float(rng.integers(1, 51)) if ev in VARIABLE_EVENTS else None
            records.append(
                {
                    "ts": hour * SECONDS_PER_HOUR + int(off),
                    "actor": actor,
                    "target": target,
                    "event": ev,
                    "value": value,
                }
            )

    def role_at(p: str, s: int) -> str:
        script = scenario.scripts[p]
        return script[min(s, len(script) - 1)]

    for hour in range(total_hours):
        snap = hour // scenario.snapshot_hours
        for a, b, mult in _active_pairs(scenario, snap):
            count = int(rng.poisson(scenario.pair_rate * mult))
            sample_events(a, b, role_at(a, snap), hour, count)
        for p in sorted(scenario.scripts):
            count = int(rng.poisson(scenario.solo_rate))
            sample_events(p, None, role_at(p, snap), hour, count)

    records.sort(key=lambda r: (r["ts"], r["actor"], r["target"] or ""))

    windows_per_snapshot = scenario.snapshot_hours // scenario.window_hours
    n_windows = total_hours // scenario.window_hours
    truth = {
        "seed": scenario.seed,
        "players": sorted(scenario.scripts),
        "roles_by_timestamp": {
            str(t): {
                p: role_at(p, t // windows_per_snapshot) for p in sorted(scenario.scripts)
            }
            for t in range(n_windows)
        },
        "transitions": [
            {"player": p, "snapshot": s, "from": script[s - 1], "to": script[s]}
            for p, script in sorted(scenario.scripts.items())
            for s in range(1, len(script))
            if script[s] != script[s - 1]
        ],
    }
    return records, truth


def write_scenario(scenario: Scenario, out_dir) -> tuple[str, str]:
    """Write events.jsonl and truth.json; returns the two paths."""
    from pathlib import Path

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    records, truth = generate(scenario)
    events_path = out / "events.jsonl"
    with events_path.open("w") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
    truth_path = out / "truth.json"
    truth_path.write_text(json.dumps(truth, indent=2, sort_keys=True))
    return str(events_path), str(truth_path)
