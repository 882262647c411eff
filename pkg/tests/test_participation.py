"""Event log append-only semantics and the four-state classifier."""

from __future__ import annotations

import json
import random
from datetime import datetime, timedelta, timezone

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from remixhub.errors import EmptyWindow, TimestampRegression, UnknownUser
from remixhub.participation import (
    ACTIVE_KINDS,
    EVENT_KINDS,
    PRODUCTION_KINDS,
    EventLog,
    EventRecord,
    ParticipationState,
    classify,
    classify_events,
    community_stats,
)

UTC = timezone.utc
START = datetime(2026, 1, 1, tzinfo=UTC)
END = datetime(2026, 2, 1, tzinfo=UTC)


def ts(moment: datetime) -> str:
    return moment.strftime("%Y-%m-%dT%H:%M:%SZ")


def log_with(entries):
    log = EventLog()
    for actor, kind, offset_minutes in entries:
        log.append(actor, kind, None, ts(START + timedelta(minutes=offset_minutes)))
    return log


# ---------------------------------------------------------------------------
# record_event
# ---------------------------------------------------------------------------

def test_event_ids_start_at_one_and_increase():
    log = log_with([("alice", "view", 0), ("alice", "tag", 1)])
    assert [e.event_id for e in log.events] == [1, 2]
    assert log.events[0].at <= log.events[1].at


def test_event_log_rejects_time_regression():
    log = log_with([("alice", "view", 10)])
    with pytest.raises(TimestampRegression):
        log.append("alice", "view", None, ts(START))


def test_event_log_rejects_unknown_kind():
    log = EventLog()
    with pytest.raises(ValueError):
        log.append("alice", "sneeze", None, ts(START))


def test_export_and_rebuild_round_trip():
    log = log_with([("alice", "upload", 0), ("bob", "tag", 5), ("bob", "rate", 6)])
    exported = log.export_ndjson()
    lines = exported.strip().split("\n")
    assert len(lines) == 3
    rebuilt = EventLog()
    rebuilt.load(EventRecord.from_doc(json.loads(line)) for line in lines)
    assert rebuilt.events == log.events
    # documents are canonical: keys sorted, no spaces
    for line in lines:
        assert line == json.dumps(json.loads(line), sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# classify
# ---------------------------------------------------------------------------

USERS = frozenset({"alice", "bob"})


def test_zero_events_is_passive_consumption():
    state = classify(EventLog(), USERS, "alice", START, END)
    assert state is ParticipationState.PASSIVE_CONSUMPTION


def test_tag_only_user_is_active_consumption():
    log = log_with([("alice", "tag", 1)])
    assert classify(log, USERS, "alice", START, END) is ParticipationState.ACTIVE_CONSUMPTION


def test_upload_only_user_is_passive_production():
    log = log_with([("alice", "upload", 1)])
    assert classify(log, USERS, "alice", START, END) is ParticipationState.PASSIVE_PRODUCTION


def test_upload_plus_comment_is_active_production():
    log = log_with([("alice", "upload", 1), ("alice", "comment", 2)])
    assert classify(log, USERS, "alice", START, END) is ParticipationState.ACTIVE_PRODUCTION


def test_views_and_downloads_stay_passive():
    log = log_with([("alice", "view", 1), ("alice", "download", 2),
                    ("alice", "view", 3), ("alice", "download", 4)])
    assert classify(log, USERS, "alice", START, END) is ParticipationState.PASSIVE_CONSUMPTION


def test_classify_window_boundaries_are_half_open():
    log = EventLog()
    log.append("alice", "tag", None, ts(START))          # inclusive start
    log.append("bob", "tag", None, ts(END))              # exclusive end
    assert classify(log, USERS, "alice", START, END) is ParticipationState.ACTIVE_CONSUMPTION
    assert classify(log, USERS, "bob", START, END) is ParticipationState.PASSIVE_CONSUMPTION
    assert classify(log, USERS, "bob", END, END + timedelta(days=1)) \
        is ParticipationState.ACTIVE_CONSUMPTION


def test_classify_errors():
    log = EventLog()
    with pytest.raises(UnknownUser):
        classify(log, USERS, "nobody", START, END)
    with pytest.raises(EmptyWindow):
        classify(log, USERS, "alice", END, START)
    with pytest.raises(EmptyWindow):
        classify(log, USERS, "alice", START, START)


# ---------------------------------------------------------------------------
# community_stats
# ---------------------------------------------------------------------------

def test_stats_no_users():
    stats = community_stats(EventLog(), [], START, END)
    assert stats["total_users"] == 0
    assert all(v == 0 for v in stats["counts"].values())


def test_stats_one_user_per_state():
    log = log_with([
        ("consumer_active", "tag", 1),
        ("producer_passive", "upload", 2),
        ("producer_active", "upload", 3),
        ("producer_active", "rate", 4),
    ])
    users = ["consumer_passive", "consumer_active", "producer_passive", "producer_active"]
    stats = community_stats(log, users, START, END)
    assert stats["counts"] == {
        "passive_consumption": 1,
        "active_consumption": 1,
        "passive_production": 1,
        "active_production": 1,
    }
    assert stats["total_users"] == 4


def brute_force_state(events, user, start, end):
    """Independent per-user scan with its own truth table."""
    uploaded = any(
        e.actor == user and e.kind == "upload"
        and start <= datetime.strptime(e.at, "%Y-%m-%dT%H:%M:%SZ").replace(tzinfo=UTC) < end
        for e in events
    )
    social = any(
        e.actor == user and e.kind in ("tag", "comment", "rate", "friend", "gallery_add")
        and start <= datetime.strptime(e.at, "%Y-%m-%dT%H:%M:%SZ").replace(tzinfo=UTC) < end
        for e in events
    )
    if uploaded and social:
        return "active_production"
    if uploaded:
        return "passive_production"
    if social:
        return "active_consumption"
    return "passive_consumption"


def test_stats_match_brute_force_on_random_logs():
    rng = random.Random(42)
    users = [f"user_{i}" for i in range(100)]
    log = EventLog()
    minute = 0
    for _ in range(2000):
        minute += rng.randint(0, 3)
        log.append(rng.choice(users), rng.choice(EVENT_KINDS), None,
                   ts(START + timedelta(minutes=minute)))
    window_start = START + timedelta(minutes=500)
    window_end = START + timedelta(minutes=1500)
    stats = community_stats(log, users, window_start, window_end)
    expected = {s.value: 0 for s in ParticipationState}
    for user in users:
        expected[brute_force_state(log.events, user, window_start, window_end)] += 1
    assert stats["counts"] == expected
    assert sum(stats["counts"].values()) == 100


# ---------------------------------------------------------------------------
# monotone escalation property
# ---------------------------------------------------------------------------

_RANK = {
    ParticipationState.PASSIVE_CONSUMPTION: (0, 0),
    ParticipationState.ACTIVE_CONSUMPTION: (0, 1),
    ParticipationState.PASSIVE_PRODUCTION: (1, 0),
    ParticipationState.ACTIVE_PRODUCTION: (1, 1),
}


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.tuples(st.sampled_from(list(EVENT_KINDS)), st.integers(0, 999)), max_size=30),
    st.sampled_from(sorted(ACTIVE_KINDS | PRODUCTION_KINDS)),
    st.integers(0, 999),
)
def test_escalation_never_demotes(base_events, extra_kind, extra_minute):
    events = [
        EventRecord(event_id=i + 1, actor="alice", kind=kind, at=ts(START + timedelta(minutes=m)))
        for i, (kind, m) in enumerate(base_events)
    ]
    window_end = START + timedelta(minutes=1000)
    before = classify_events(events, "alice", START, window_end)
    extra = EventRecord(event_id=len(events) + 1, actor="alice", kind=extra_kind,
                        at=ts(START + timedelta(minutes=extra_minute)))
    after = classify_events(events + [extra], "alice", START, window_end)
    prod_before, act_before = _RANK[before]
    prod_after, act_after = _RANK[after]
    assert prod_after >= prod_before
    assert act_after >= act_before
