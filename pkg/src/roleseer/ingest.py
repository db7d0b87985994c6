"""Interaction-log ingestion: events -> intimacy accumulation -> timestamp graphs.

Edge weights are pairwise "intimacy" scores accumulated per interaction,
subject to per-event-type weekly caps. The dynamic network is a sequence of
fixed-length time windows; a player appears in a window's graph only if they
emitted or received at least one event inside it, but accumulated intimacy
persists across windows.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from collections import defaultdict
from dataclasses import dataclass, field

logger = logging.getLogger(__name__)

EVENT_TYPES = (
    "KillingMonster",
    "KillingPlayer",
    "Task",
    "UsingProps",
    "Fighting",
    "Chatting",
    "Carbon",
    "Battle",
)

# Events whose per-interaction intimacy delta varies and is carried on the
# event record itself.
VARIABLE_EVENTS = frozenset({"Task", "UsingProps", "Carbon"})

SECONDS_PER_HOUR = 3600
SECONDS_PER_WEEK = 7 * 24 * SECONDS_PER_HOUR
# Epoch second 0 is a Thursday; the Monday before it is -3 days. Weekly caps
# roll over at Monday 00:00 UTC by default.
MONDAY_ANCHOR = -3 * 24 * SECONDS_PER_HOUR


class IngestError(Exception):
    pass


@dataclass(frozen=True)
class InteractionEvent:
    occurred_at: int
    actor: str
    target: str | None
    event_type: str
    value: float = 0.0


@dataclass(frozen=True)
class IntimacyRule:
    event_type: str
    per_event_delta: float | None  # None => variable, taken from event.value
    weekly_bound: float | None  # None => unbounded


DEFAULT_RULES = {
    "KillingMonster": IntimacyRule("KillingMonster", 1.0, 1500.0),
    "KillingPlayer": IntimacyRule("KillingPlayer", 1.0, 300.0),
    "Task": IntimacyRule("Task", None, 100.0),
    "UsingProps": IntimacyRule("UsingProps", None, 5000.0),
    "Fighting": IntimacyRule("Fighting", 25.0, 350.0),
    "Chatting": IntimacyRule("Chatting", 2.0, 210.0),
    "Carbon": IntimacyRule("Carbon", None, None),
    "Battle": IntimacyRule("Battle", 120.0, None),
}


@dataclass
class TimestampGraph:
    index: int
    window: tuple[int, int]  # [start, end) epoch seconds
    nodes: set[str]
    edges: dict[tuple[str, str], float]  # key (a, b) with a < b
    ingame_metrics: dict[str, dict[str, float]] = field(default_factory=dict)

    def adjacency(self) -> dict[str, set[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.nodes}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj


@dataclass
class Snapshot:
    index: int
    timestamp_indices: list[int]
    partial: bool = False


@dataclass
class ParseResult:
    events: list[InteractionEvent]
    skipped: list[tuple[int, str]] = field(default_factory=list)

    @property
    def n_skipped(self) -> int:
        return len(self.skipped)


def edge_key(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a < b else (b, a)


def _coerce_event(rec: dict) -> InteractionEvent:
    ts = int(rec["ts"])
    actor = str(rec["actor"])
    target = rec.get("target")
    target = None if target in (None, "") else str(target)
    event = str(rec["event"])
    if event not in EVENT_TYPES:
        raise ValueError(f"unknown event type {event!r}")
    if target is not None and actor == target:
        raise ValueError("actor equals target")
    raw_value = rec.get("value")
    value = 0.0 if raw_value in (None, "") else float(raw_value)
    if value < 0:
        raise ValueError("negative event value")
    return InteractionEvent(ts, actor, target, event, value)


def parse_events(stream, fmt: str = "jsonl") -> ParseResult:
    """Parse an event log; malformed records are skipped and counted.

    More than 10% malformed records aborts with the offending line numbers.
    """
    if isinstance(stream, (bytes, bytearray)):
        stream = io.BytesIO(stream)
    if hasattr(stream, "read") and "b" in getattr(stream, "mode", "b"):
        data = stream.read()
        if isinstance(data, bytes):
            try:
                stream = io.StringIO(data.decode("utf-8"))
            except UnicodeDecodeError as exc:
                raise IngestError(f"undecodable input: {exc}") from exc
        else:
            stream = io.StringIO(data)

    events: list[InteractionEvent] = []
    skipped: list[tuple[int, str]] = []
    total = 0
    if fmt == "jsonl":
        for lineno, line in enumerate(stream, start=1):
            line = line.strip()
            if not line:
                continue
            total += 1
            try:
                events.append(_coerce_event(json.loads(line)))
            except (ValueError, KeyError, TypeError) as exc:
                skipped.append((lineno, str(exc)))
    elif fmt == "csv":
        reader = csv.DictReader(stream)
        for lineno, row in enumerate(reader, start=2):
            total += 1
            try:
                events.append(_coerce_event(row))
            except (ValueError, KeyError, TypeError) as exc:
                skipped.append((lineno, str(exc)))
    else:
        raise IngestError(f"unsupported format {fmt!r}")

    if total and len(skipped) > 0.10 * total:
        lines = ", ".join(str(n) for n, _ in skipped[:20])
        raise IngestError(
            f"{len(skipped)}/{total} malformed records (lines {lines}...)"
        )
    if skipped:
        logger.warning("skipped %d malformed records", len(skipped))
    events.sort(key=lambda e: e.occurred_at)
    return ParseResult(events, skipped)


def parse_status(stream) -> dict[str, list[tuple[int, dict[str, float]]]]:
    """Parse companion player-status records, sorted by time per player."""
    out: dict[str, list[tuple[int, dict[str, float]]]] = defaultdict(list)
    for line in stream:
        line = line.strip()
        if not line:
            continue
        rec = json.loads(line)
        out[str(rec["player"])].append(
            (
                int(rec["ts"]),
                {
                    "cash": float(rec.get("cash", 0.0)),
                    "grade": float(rec.get("grade", 0.0)),
                    "combat": float(rec.get("combat", 0.0)),
                },
            )
        )
    for rows in out.values():
        rows.sort(key=lambda r: r[0])
    return dict(out)


def week_index(ts: int, anchor: int = MONDAY_ANCHOR) -> int:
    return (ts - anchor) // SECONDS_PER_WEEK


def intimacy_delta(
    event: InteractionEvent,
    rules: dict[str, IntimacyRule],
    accumulated_this_week: float,
) -> float:
    """Applied intimacy increment, clipped to remaining weekly headroom."""
    rule = rules[event.event_type]
    if event.value < 0:
        raise ValueError("negative event value")
    delta = event.value if rule.per_event_delta is None else rule.per_event_delta
    if rule.weekly_bound is None:
        return delta
    headroom = max(0.0, rule.weekly_bound - accumulated_this_week)
    return min(delta, headroom)


class IntimacyAccumulator:
    """Sequential intimacy accumulation with per-(pair, type, week) caps."""

    def __init__(self, rules: dict[str, IntimacyRule] | None = None,
                 week_anchor: int = MONDAY_ANCHOR):
        self.rules = rules or DEFAULT_RULES
        self.week_anchor = week_anchor
        self.totals: dict[tuple[str, str], float] = defaultdict(float)
        self._weekly: dict[tuple[tuple[str, str], str, int], float] = defaultdict(float)
        self.applied_sum = 0.0

    def apply(self, event: InteractionEvent) -> float:
        if event.target is None:
            return 0.0
        key = edge_key(event.actor, event.target)
        wk = week_index(event.occurred_at, self.week_anchor)
        wkey = (key, event.event_type, wk)
        delta = intimacy_delta(event, self.rules, self._weekly[wkey])
        self._weekly[wkey] += delta
        self.totals[key] += delta
        self.applied_sum += delta
        return delta


def build_timestamp_graphs(
    events: list[InteractionEvent],
    window_hours: float = 6,
    rules: dict[str, IntimacyRule] | None = None,
    statuses: dict[str, list[tuple[int, dict[str, float]]]] | None = None,
    week_anchor: int = MONDAY_ANCHOR,
) -> list[TimestampGraph]:
    """One graph per window from first to last event.

    Edge weight is the total accumulated intimacy of the pair at window end;
    an edge is emitted only when both endpoints were active in the window.
    """
    if window_hours <= 0:
        raise ValueError("window_hours must be positive")
    if not events:
        return []

    window_sec = int(window_hours * SECONDS_PER_HOUR)
    t0 = events[0].occurred_at
    last = events[-1].occurred_at
    n_windows = (last - t0) // window_sec + 1

    acc = IntimacyAccumulator(rules, week_anchor)
    graphs: list[TimestampGraph] = []
    ei = 0
    statuses = statuses or {}
    for w in range(n_windows):
        start = t0 + w * window_sec
        end = start + window_sec
        active: set[str] = set()
        while ei < len(events) and events[ei].occurred_at < end:
            ev = events[ei]
            acc.apply(ev)
            active.add(ev.actor)
            if ev.target is not None:
                active.add(ev.target)
            ei += 1
        edges = {
            pair: wgt
            for pair, wgt in acc.totals.items()
            if wgt > 0 and pair[0] in active and pair[1] in active
        }
        ingame = {}
        for player in active:
            row = {"cash": 0.0, "grade": 0.0, "combat": 0.0}
            for ts, vals in statuses.get(player, ()):
                if ts < end:
                    row = vals
                else:
                    break
            total = sum(wgt for pair, wgt in acc.totals.items() if player in pair)
            ingame[player] = {
                "cash": row["cash"],
                "grade": row["grade"],
                "intimacy_total": total,
                "combat_score": row["combat"],
            }
        graphs.append(TimestampGraph(w, (start, end), active, edges, ingame))
    return graphs


def group_snapshots(graphs: list[TimestampGraph], n_per_snapshot: int = 3) -> list[Snapshot]:
    if n_per_snapshot < 1:
        raise ValueError("n_per_snapshot must be >= 1")
    snaps = []
    for i in range(0, len(graphs), n_per_snapshot):
        indices = [g.index for g in graphs[i : i + n_per_snapshot]]
        snaps.append(Snapshot(len(snaps), indices, partial=len(indices) < n_per_snapshot))
    return snaps
