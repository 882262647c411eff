"""Append-only activity log and the four-state participation classifier.

Members sit somewhere on a 2x2 grid: did they produce anything (upload)
in the window, and did they engage socially (tag, comment, rate, friend,
gallery_add)? Views and downloads alone are passive consumption, the
floor state for everyone including users with no events at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime
from enum import Enum
from typing import Callable, Iterable, Optional, Union

from .canonical import canonical_dumps
from .container import parse_timestamp
from .errors import EmptyWindow, TimestampRegression, UnknownUser

EVENT_KINDS = (
    "view",
    "download",
    "upload",
    "tag",
    "comment",
    "rate",
    "friend",
    "gallery_add",
)

PRODUCTION_KINDS = frozenset({"upload"})
ACTIVE_KINDS = frozenset({"tag", "comment", "rate", "friend", "gallery_add"})


class ParticipationState(str, Enum):
    PASSIVE_CONSUMPTION = "passive_consumption"
    ACTIVE_CONSUMPTION = "active_consumption"
    PASSIVE_PRODUCTION = "passive_production"
    ACTIVE_PRODUCTION = "active_production"


_STATE_GRID = {
    (False, False): ParticipationState.PASSIVE_CONSUMPTION,
    (False, True): ParticipationState.ACTIVE_CONSUMPTION,
    (True, False): ParticipationState.PASSIVE_PRODUCTION,
    (True, True): ParticipationState.ACTIVE_PRODUCTION,
}


@dataclass(frozen=True)
class EventRecord:
    """One community action, never mutated after it is appended."""

    event_id: int
    actor: str
    kind: str
    at: str
    subject: Union[int, str, None] = None

    def to_doc(self) -> dict:
        return {
            "actor": self.actor,
            "at": self.at,
            "event_id": self.event_id,
            "kind": self.kind,
            "subject": self.subject,
        }

    @staticmethod
    def from_doc(doc: dict) -> "EventRecord":
        return EventRecord(
            event_id=doc["event_id"],
            actor=doc["actor"],
            kind=doc["kind"],
            at=doc["at"],
            subject=doc["subject"],
        )


class EventLog:
    """Append-only, id-ordered event sequence with derived counters."""

    def __init__(self):
        self.events: list[EventRecord] = []
        self._last_at: Optional[datetime] = None

    def __len__(self) -> int:
        return len(self.events)

    def append(self, actor: str, kind: str, subject: Union[int, str, None], at: str) -> EventRecord:
        if kind not in EVENT_KINDS:
            raise ValueError(f"unknown event kind {kind!r}")
        moment = parse_timestamp(at)
        if self._last_at is not None and moment < self._last_at:
            raise TimestampRegression(
                f"event at {at} precedes the previous event"
            )
        record = EventRecord(
            event_id=len(self.events) + 1,
            actor=actor,
            kind=kind,
            at=at,
            subject=subject,
        )
        self.events.append(record)
        self._last_at = moment
        return record

    def load(self, records: Iterable[EventRecord]) -> None:
        """Restore the log from persisted records, re-checking ordering."""
        for record in sorted(records, key=lambda r: r.event_id):
            expected = len(self.events) + 1
            if record.event_id != expected:
                raise ValueError(f"event log gap: expected id {expected}, got {record.event_id}")
            moment = parse_timestamp(record.at)
            if self._last_at is not None and moment < self._last_at:
                raise TimestampRegression(f"event {record.event_id} breaks time ordering")
            self.events.append(record)
            self._last_at = moment

    def count_for_project(self, kind: str, project_id: int) -> int:
        return sum(1 for e in self.events if e.kind == kind and e.subject == project_id)

    def export_ndjson(self) -> str:
        """Newline-delimited canonical documents, one per event, in id order."""
        return "".join(canonical_dumps(e.to_doc()) + "\n" for e in self.events)


def classify_events(events: Iterable[EventRecord], actor: str,
                    start: datetime, end: datetime) -> ParticipationState:
    """Pure classification over an event sequence for one actor."""
    produced = False
    active = False
    for event in events:
        if event.actor != actor:
            continue
        at = parse_timestamp(event.at)
        if not (start <= at < end):
            continue
        if event.kind in PRODUCTION_KINDS:
            produced = True
        elif event.kind in ACTIVE_KINDS:
            active = True
        if produced and active:
            break
    return _STATE_GRID[(produced, active)]


def classify(log: EventLog, usernames: frozenset[str] | set[str], user: str,
             start: datetime, end: datetime) -> ParticipationState:
    """Participation state of one user over [start, end).

    Exactly one state per (user, window): production means at least one
    upload in the window, active means at least one social-metadata
    action; everything else is passive consumption.
    """
    if user not in usernames:
        raise UnknownUser(f"no user {user!r}")
    if start >= end:
        raise EmptyWindow(f"window [{start}, {end}) is empty")
    return classify_events(log.events, user, start, end)


def community_stats(log: EventLog, usernames: Iterable[str],
                    start: datetime, end: datetime) -> dict:
    """Partition every registered user into the four states.

    Counts always sum to the number of users; users with no events in the
    window land in passive consumption.
    """
    if start >= end:
        raise EmptyWindow(f"window [{start}, {end}) is empty")
    names = sorted(usernames)
    counts = {state.value: 0 for state in ParticipationState}
    for name in names:
        state = classify_events(log.events, name, start, end)
        counts[state.value] += 1
    return {"counts": counts, "total_users": len(names)}
