import io
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from roleseer.ingest import (
    DEFAULT_RULES,
    MONDAY_ANCHOR,
    SECONDS_PER_WEEK,
    IngestError,
    InteractionEvent,
    IntimacyAccumulator,
    build_timestamp_graphs,
    group_snapshots,
    intimacy_delta,
    parse_events,
    parse_status,
    week_index,
)

H = 3600


def jsonl(records):
    return io.StringIO("\n".join(json.dumps(r) for r in records))


def ev(ts, actor, target, event, value=0.0):
    return InteractionEvent(ts, actor, target, event, value)


class TestParseEvents:
    def test_empty_stream(self):
        assert parse_events(io.StringIO("")).events == []

    def test_single_battle_record(self):
        res = parse_events(jsonl([{"ts": 0, "actor": "p1", "target": "p2", "event": "Battle"}]))
        assert len(res.events) == 1
        acc = IntimacyAccumulator()
        assert acc.apply(res.events[0]) == 120.0

    def test_actor_equals_target_skipped(self):
        res = parse_events(
            jsonl(
                [
                    {"ts": 0, "actor": "p1", "target": "p1", "event": "Chatting"},
                    {"ts": 1, "actor": "p1", "target": "p2", "event": "Chatting"},
                    {"ts": 2, "actor": "p1", "target": "p2", "event": "Chatting"},
                    {"ts": 3, "actor": "p1", "target": "p2", "event": "Chatting"},
                    {"ts": 4, "actor": "p1", "target": "p2", "event": "Chatting"},
                    {"ts": 5, "actor": "p1", "target": "p2", "event": "Chatting"},
                    {"ts": 6, "actor": "p1", "target": "p2", "event": "Chatting"},
                    {"ts": 7, "actor": "p1", "target": "p2", "event": "Chatting"},
                    {"ts": 8, "actor": "p1", "target": "p2", "event": "Chatting"},
                    {"ts": 9, "actor": "p1", "target": "p2", "event": "Chatting"},
                ]
            )
        )
        assert len(res.events) == 9
        assert res.n_skipped == 1
        assert res.skipped[0][0] == 1

    def test_too_many_malformed_aborts_with_line_numbers(self):
        bad = [{"ts": i, "actor": "p1", "target": "p1", "event": "Chatting"} for i in range(3)]
        good = [{"ts": i, "actor": "p1", "target": "p2", "event": "Chatting"} for i in range(5)]
        with pytest.raises(IngestError, match=r"lines 1, 2, 3"):
            parse_events(jsonl(bad + good))

    def test_events_sorted_by_time(self):
        res = parse_events(
            jsonl(
                [
                    {"ts": 50, "actor": "a", "target": "b", "event": "Chatting"},
                    {"ts": 10, "actor": "a", "target": "b", "event": "Chatting"},
                ]
            )
        )
        assert [e.occurred_at for e in res.events] == [10, 50]

    def test_unknown_event_type_skipped(self):
        records = [{"ts": i, "actor": "a", "target": "b", "event": "Chatting"} for i in range(20)]
        records.append({"ts": 99, "actor": "a", "target": "b", "event": "Dancing"})
        res = parse_events(jsonl(records))
        assert res.n_skipped == 1

    def test_csv_format(self):
        csv_text = "ts,actor,target,event,value\n0,p1,p2,Task,7\n1,p1,,KillingMonster,\n"
        res = parse_events(io.StringIO(csv_text), fmt="csv")
        assert len(res.events) == 2
        assert res.events[0].value == 7.0
        assert res.events[1].target is None

    def test_bytes_input(self):
        raw = json.dumps({"ts": 0, "actor": "a", "target": "b", "event": "Fighting"}).encode()
        assert len(parse_events(raw).events) == 1

    def test_unsupported_format(self):
        with pytest.raises(IngestError):
            parse_events(io.StringIO(""), fmt="xml")


class TestParseStatus:
    def test_rows_sorted_per_player(self):
        stream = jsonl(
            [
                {"ts": 100, "player": "p1", "cash": 5, "grade": 2, "combat": 9},
                {"ts": 10, "player": "p1", "cash": 1},
            ]
        )
        out = parse_status(stream)
        assert [ts for ts, _ in out["p1"]] == [10, 100]
        assert out["p1"][1][1] == {"cash": 5.0, "grade": 2.0, "combat": 9.0}


class TestIntimacyDelta:
    def test_fighting_from_zero(self):
        assert intimacy_delta(ev(0, "a", "b", "Fighting"), DEFAULT_RULES, 0.0) == 25.0

    def test_chatting_clipped_near_bound(self):
        # min(2, 210 - 209) = 1
        assert intimacy_delta(ev(0, "a", "b", "Chatting"), DEFAULT_RULES, 209.0) == 1.0

    def test_battle_unbounded(self):
        assert intimacy_delta(ev(0, "a", "b", "Battle"), DEFAULT_RULES, 1e6) == 120.0

    def test_variable_events_use_value(self):
        assert intimacy_delta(ev(0, "a", "b", "Task", 33.0), DEFAULT_RULES, 0.0) == 33.0
        assert intimacy_delta(ev(0, "a", "b", "UsingProps", 7.0), DEFAULT_RULES, 0.0) == 7.0
        assert intimacy_delta(ev(0, "a", "b", "Carbon", 500.0), DEFAULT_RULES, 0.0) == 500.0

    def test_negative_value_rejected(self):
        with pytest.raises(ValueError):
            intimacy_delta(ev(0, "a", "b", "Task", -1.0), DEFAULT_RULES, 0.0)

    def test_default_rule_constants(self):
        expected = {
            "KillingMonster": (1.0, 1500.0),
            "KillingPlayer": (1.0, 300.0),
            "Task": (None, 100.0),
            "UsingProps": (None, 5000.0),
            "Fighting": (25.0, 350.0),
            "Chatting": (2.0, 210.0),
            "Carbon": (None, None),
            "Battle": (120.0, None),
        }
        assert {
            k: (r.per_event_delta, r.weekly_bound) for k, r in DEFAULT_RULES.items()
        } == expected

    def test_week_index_rolls_on_monday(self):
        # epoch 0 is a Thursday; the next Monday is at +3 days
        monday = MONDAY_ANCHOR + SECONDS_PER_WEEK
        assert week_index(monday - 1) == 0
        assert week_index(monday) == 1


class TestBuildTimestampGraphs:
    def test_five_chats_one_window(self):
        events = [ev(i * 60, "p1", "p2", "Chatting") for i in range(5)]
        graphs = build_timestamp_graphs(events)
        assert len(graphs) == 1
        assert graphs[0].edges == {("p1", "p2"): 10.0}

    def test_intimacy_restored_after_inactive_window(self):
        events = [
            ev(0, "p1", "p2", "Fighting"),
            ev(6 * H + 5, "p3", "p4", "Chatting"),  # p1/p2 idle in window 1
            ev(12 * H + 5, "p1", "p2", "Chatting"),
        ]
        graphs = build_timestamp_graphs(events)
        assert len(graphs) == 3
        assert ("p1", "p2") not in graphs[1].edges
        assert "p1" not in graphs[1].nodes
        # weight resumes at 25 + 2, not from zero
        assert graphs[2].edges[("p1", "p2")] == 27.0

    def test_empty_window_kept(self):
        events = [ev(0, "a", "b", "Chatting"), ev(13 * H, "a", "b", "Chatting")]
        graphs = build_timestamp_graphs(events)
        assert len(graphs) == 3
        assert graphs[1].nodes == set()
        assert graphs[1].edges == {}
        assert [g.index for g in graphs] == [0, 1, 2]

    def test_edge_needs_both_endpoints_active(self):
        events = [
            ev(0, "p1", "p2", "Fighting"),
            # window 1: only p1 active (solo event)
            ev(6 * H + 5, "p1", None, "KillingMonster"),
        ]
        graphs = build_timestamp_graphs(events)
        assert graphs[1].nodes == {"p1"}
        assert graphs[1].edges == {}

    def test_solo_event_makes_player_active(self):
        graphs = build_timestamp_graphs([ev(0, "p1", None, "KillingMonster")])
        assert graphs[0].nodes == {"p1"}

    def test_nonpositive_window_rejected(self):
        with pytest.raises(ValueError):
            build_timestamp_graphs([ev(0, "a", "b", "Chatting")], window_hours=0)

    def test_ingame_metrics_from_latest_status(self):
        statuses = {
            "p1": [(0, {"cash": 1.0, "grade": 1.0, "combat": 1.0}),
                   (7 * H, {"cash": 2.0, "grade": 2.0, "combat": 2.0})]
        }
        events = [ev(0, "p1", "p2", "Fighting"), ev(6 * H + 5, "p1", "p2", "Fighting")]
        graphs = build_timestamp_graphs(events, statuses=statuses)
        assert graphs[0].ingame_metrics["p1"]["cash"] == 1.0
        assert graphs[1].ingame_metrics["p1"]["cash"] == 2.0
        assert graphs[1].ingame_metrics["p1"]["intimacy_total"] == 50.0


class TestGroupSnapshots:
    def test_six_graphs_two_snapshots(self):
        graphs = build_timestamp_graphs(
            [ev(0, "a", "b", "Chatting"), ev(35 * H, "a", "b", "Chatting")]
        )
        assert len(graphs) == 6
        snaps = group_snapshots(graphs)
        assert len(snaps) == 2
        assert not any(s.partial for s in snaps)
        assert snaps[1].timestamp_indices == [3, 4, 5]

    def test_trailing_partial_flagged(self):
        graphs = build_timestamp_graphs(
            [ev(0, "a", "b", "Chatting"), ev(37 * H, "a", "b", "Chatting")]
        )
        assert len(graphs) == 7
        snaps = group_snapshots(graphs)
        assert len(snaps) == 3
        assert snaps[2].partial
        assert snaps[2].timestamp_indices == [6]

    def test_empty(self):
        assert group_snapshots([]) == []

    def test_invalid_group_size(self):
        with pytest.raises(ValueError):
            group_snapshots([], n_per_snapshot=0)


events_strategy = st.lists(
    st.tuples(
        st.integers(min_value=0, max_value=30 * 24 * H),
        st.sampled_from(["p1", "p2", "p3", "p4"]),
        st.sampled_from(["p1", "p2", "p3", "p4", None]),
        st.sampled_from(sorted(DEFAULT_RULES)),
        st.floats(min_value=0.0, max_value=200.0, allow_nan=False),
    ),
    max_size=60,
)


def _as_events(raw):
    out = []
    for ts, actor, target, etype, value in raw:
        if target == actor:
            continue
        out.append(InteractionEvent(ts, actor, target, etype, value))
    out.sort(key=lambda e: e.occurred_at)
    return out


@settings(max_examples=60, deadline=None)
@given(events_strategy)
def test_weekly_caps_never_exceeded(raw):
    events = _as_events(raw)
    acc = IntimacyAccumulator()
    applied = {}
    for e in events:
        delta = acc.apply(e)
        if e.target is None:
            assert delta == 0.0
            continue
        key = (tuple(sorted((e.actor, e.target))), e.event_type, week_index(e.occurred_at))
        applied[key] = applied.get(key, 0.0) + delta
    for (_, etype, _), total in applied.items():
        bound = DEFAULT_RULES[etype].weekly_bound
        if bound is not None:
            assert total <= bound + 1e-9


@settings(max_examples=60, deadline=None)
@given(events_strategy)
def test_conservation_and_monotonicity(raw):
    events = _as_events(raw)
    if not events:
        return
    graphs = build_timestamp_graphs(events)

    # conservation: applied deltas sum to the final pair totals
    acc = IntimacyAccumulator()
    for e in events:
        acc.apply(e)
    assert abs(acc.applied_sum - sum(acc.totals.values())) < 1e-9

    # monotone weights: an edge never shrinks across windows
    last_weight = {}
    for g in graphs:
        for pair, w in g.edges.items():
            assert w >= last_weight.get(pair, 0.0) - 1e-12
            last_weight[pair] = w

    # endpoints of every edge are active nodes
    for g in graphs:
        for a, b in g.edges:
            assert a in g.nodes and b in g.nodes
            assert a < b


@settings(max_examples=30, deadline=None)
@given(events_strategy)
def test_replay_determinism(raw):
    events = _as_events(raw)
    if not events:
        return
    g1 = build_timestamp_graphs(events)
    g2 = build_timestamp_graphs(events)
    assert len(g1) == len(g2)
    for a, b in zip(g1, g2):
        assert a.nodes == b.nodes
        assert a.edges == b.edges
