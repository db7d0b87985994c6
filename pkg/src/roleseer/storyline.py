"""Narrative layout for the individual interaction view.

Interaction rounds (non-empty 10-minute buckets of ego-incident events) run
along x in order of appearance. Player lines are threaded through the rounds
they join; vertical placement seeds each player at appearance-order * space,
then barycenter sweeps reorder players within rounds to cut crossings. A
sweep result is kept only if it does not increase the crossing count. Round
y is the median of its participants' slots, and whole rounds are pushed
apart in y by density so the busiest rounds do not stack.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ingest import InteractionEvent


@dataclass
class InteractionRound:
    round_id: int
    bucket: int
    participants: list[str]  # ego first, then alters by appearance
    snapshot: int = 0


@dataclass
class StorylineLayout:
    rounds: list[InteractionRound]
    round_x: dict[int, float] = field(default_factory=dict)
    round_y: dict[int, float] = field(default_factory=dict)
    slots: dict[tuple[str, int], float] = field(default_factory=dict)  # (player, round_id) -> y
    curves: list[dict] = field(default_factory=list)
    crossings: int = 0


def build_rounds(
    ego: str,
    events: list[InteractionEvent],
    bucket_minutes: int = 10,
    span: tuple[int, int] | None = None,
    snapshot_of_ts=None,
) -> list[InteractionRound]:
    """One round per non-empty bucket of the ego's events within span."""
    mine = [
        e
        for e in events
        if (e.actor == ego or e.target == ego)
        and (span is None or span[0] <= e.occurred_at < span[1])
    ]
    if not any(e.actor == ego or e.target == ego for e in events):
        raise KeyError(f"ego {ego!r} absent from event data")
    if not mine:
        return []
    width = bucket_minutes * 60
    start = span[0] if span else mine[0].occurred_at
    buckets: dict[int, list[str]] = {}
    for e in mine:
        b = (e.occurred_at - start) // width
        other = e.target if e.actor == ego else e.actor
        buckets.setdefault(b, [])
        if other is not None and other not in buckets[b]:
            buckets[b].append(other)
    rounds = []
    for rid, b in enumerate(sorted(buckets)):
        ts = start + b * width
        snap = snapshot_of_ts(ts) if snapshot_of_ts else 0
        rounds.append(InteractionRound(rid, int(b), [ego] + buckets[b], snapshot=snap))
    return rounds


def initial_slots(players_in_order: list[str], space: float) -> dict[str, float]:
    """k-th appearing player sits at k * space."""
    return {p: i * space for i, p in enumerate(players_in_order)}


def count_crossings(rounds: list[InteractionRound], order: dict[int, list[str]]) -> int:
    """Pairs of shared players whose relative order flips between consecutive rounds."""
    total = 0
    for a, b in zip(rounds, rounds[1:]):
        pos_a = {p: i for i, p in enumerate(order[a.round_id])}
        pos_b = {p: i for i, p in enumerate(order[b.round_id])}
        shared = [p for p in order[a.round_id] if p in pos_b]
        for i in range(len(shared)):
            for j in range(i + 1, len(shared)):
                p, q = shared[i], shared[j]
                if (pos_a[p] - pos_a[q]) * (pos_b[p] - pos_b[q]) < 0:
                    total += 1
    return total


def _median(values: list[float]) -> float:
    s = sorted(values)
    n = len(s)
    return s[n // 2] if n % 2 else (s[n // 2 - 1] + s[n // 2]) / 2


def layout(
    rounds: list[InteractionRound],
    space: float = 30.0,
    sweeps: int = 4,
) -> StorylineLayout:
    if not rounds:
        return StorylineLayout([])

    appearance: list[str] = []
    for r in rounds:
        for p in r.participants:
            if p not in appearance:
                appearance.append(p)
    seed = initial_slots(appearance, space)

    # per-round participant order, seeded by global slot order
    order: dict[int, list[str]] = {
        r.round_id: sorted(r.participants, key=lambda p: seed[p]) for r in rounds
    }
    best = {rid: list(ps) for rid, ps in order.items()}
    best_crossings = count_crossings(rounds, best)

    for sweep in range(sweeps):
        seq = rounds if sweep % 2 == 0 else list(reversed(rounds))
        for prev, cur in zip(seq, seq[1:]):
            ref = {p: i for i, p in enumerate(order[prev.round_id])}
            cur_order = order[cur.round_id]
            keyed = {p: ref.get(p, cur_order.index(p)) for p in cur_order}
            order[cur.round_id] = sorted(cur_order, key=lambda p: (keyed[p], cur_order.index(p)))
        c = count_crossings(rounds, order)
        if c <= best_crossings:
            best = {rid: list(ps) for rid, ps in order.items()}
            best_crossings = c
        else:
            order = {rid: list(ps) for rid, ps in best.items()}

    # density repulsion: the busiest rounds get base offsets farthest apart
    by_density = sorted(rounds, key=lambda r: (-len(r.participants), r.round_id))
    amplitude = space * max(len(r.participants) for r in rounds)
    base: dict[int, float] = {}
    for rank, r in enumerate(by_density):
        direction = 1 if rank % 2 == 0 else -1
        base[r.round_id] = direction * amplitude * (len(by_density) - rank) / len(by_density)

    out = StorylineLayout(rounds, crossings=best_crossings)
    for r in rounds:
        out.round_x[r.round_id] = float(r.round_id)
        ys = []
        for i, p in enumerate(best[r.round_id]):
            y = base[r.round_id] + i * space
            out.slots[(p, r.round_id)] = y
            ys.append(y)
        out.round_y[r.round_id] = _median(ys)

    for a, b in zip(rounds, rounds[1:]):
        for p in a.participants:
            if p in b.participants:
                out.curves.append(
                    {
                        "player": p,
                        "from_round": a.round_id,
                        "to_round": b.round_id,
                        "y0": out.slots[(p, a.round_id)],
                        "y1": out.slots[(p, b.round_id)],
                    }
                )
    return out
