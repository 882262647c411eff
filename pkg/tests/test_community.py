"""Users, social actions, project summaries, and front-page rankings."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from remixhub.community import Community, format_mean
from remixhub.container import serialize_project
from remixhub.errors import (
    DuplicateUsername,
    EmptyText,
    Forbidden,
    InvalidLabel,
    InvalidUsername,
    NotFound,
    SelfFriend,
    StarsOutOfRange,
    TextTooLong,
    UnknownUser,
)

from conftest import T0, cat_project, make_project, random_project

TS = "2026-02-01T00:00:00Z"


@pytest.fixture
def community():
    c = Community()
    for name in ("alice", "bob", "carol"):
        c.create_user(name, TS)
    return c


# ---------------------------------------------------------------------------
# users
# ---------------------------------------------------------------------------

def test_create_user_and_duplicate(community):
    user = community.create_user("dave", TS)
    assert user.username == "dave"
    assert user.token
    with pytest.raises(DuplicateUsername):
        community.create_user("dave", TS)


@pytest.mark.parametrize("bad", ["Al!ce", "UPPER", "", "a" * 33, "sp ace"])
def test_create_user_invalid_names(community, bad):
    with pytest.raises(InvalidUsername):
        community.create_user(bad, TS)


def test_tokens_are_unique(community):
    tokens = {u.token for u in community.users.values()}
    assert len(tokens) == len(community.users)


# ---------------------------------------------------------------------------
# friendship
# ---------------------------------------------------------------------------

def test_add_friend_directed(community):
    community.add_friend("alice", "bob", TS)
    assert community.followers_of("bob") == ["alice"]
    assert community.friends_of("alice") == ["bob"]
    assert community.friends_of("bob") == []  # nothing implied in reverse


def test_add_friend_self_rejected(community):
    with pytest.raises(SelfFriend):
        community.add_friend("alice", "alice", TS)


def test_add_friend_idempotent(community):
    _, created1 = community.add_friend("alice", "bob", TS)
    _, created2 = community.add_friend("alice", "bob", TS)
    assert created1 and not created2
    assert len(community.friends) == 1


def test_add_friend_unknown_user(community):
    with pytest.raises(UnknownUser):
        community.add_friend("alice", "nobody", TS)


# ---------------------------------------------------------------------------
# tags / comments / ratings / galleries (hub-level, with event accounting)
# ---------------------------------------------------------------------------

def test_tag_listed_and_dedup(hub):
    hub.create_user("alice")
    pid = hub.upload_project(serialize_project(cat_project()), "alice")["project_id"]
    hub.tag_project(pid, "alice", "game")
    hub.tag_project(pid, "alice", "game")
    assert hub.project_summary(pid)["tags"] == ["game"]
    assert sum(1 for e in hub.events.events if e.kind == "tag") == 1


def test_tag_label_rules(hub):
    hub.create_user("alice")
    pid = hub.upload_project(serialize_project(cat_project()), "alice")["project_id"]
    with pytest.raises(InvalidLabel):
        hub.tag_project(pid, "alice", "x" * 25)
    with pytest.raises(InvalidLabel):
        hub.tag_project(pid, "alice", "UpperCase")
    with pytest.raises(NotFound):
        hub.tag_project(999, "alice", "game")


def test_comments_chronological_and_rules(hub):
    hub.create_user("alice")
    hub.create_user("bob")
    pid = hub.upload_project(serialize_project(cat_project()), "alice")["project_id"]
    hub.comment_project(pid, "alice", "first!")
    hub.comment_project(pid, "bob", "nice game!")
    texts = [c["text"] for c in hub.project_summary(pid)["comments"]]
    assert texts == ["first!", "nice game!"]
    with pytest.raises(EmptyText):
        hub.comment_project(pid, "bob", "   \n\t ")
    with pytest.raises(TextTooLong):
        hub.comment_project(pid, "bob", "x" * 2001)


def test_rating_upsert_semantics(hub):
    hub.create_user("alice")
    hub.create_user("bob")
    pid = hub.upload_project(serialize_project(cat_project()), "alice")["project_id"]
    hub.rate_project(pid, "alice", 3)
    hub.rate_project(pid, "bob", 5)
    assert hub.project_summary(pid)["rating_mean"] == "4.00"
    hub.rate_project(pid, "bob", 2)
    hub.rate_project(pid, "bob", 4)
    summary = hub.project_summary(pid)
    assert summary["rating_count"] == 2
    assert summary["rating_mean"] == "3.50"  # {3, 4}, not {3, 2, 4, 5}
    with pytest.raises(StarsOutOfRange):
        hub.rate_project(pid, "bob", 0)
    with pytest.raises(StarsOutOfRange):
        hub.rate_project(pid, "bob", 6)


def test_format_mean_two_decimals():
    assert format_mean(Fraction(4, 1)) == "4.00"
    assert format_mean(Fraction(11, 3)) == "3.67"
    assert format_mean(Fraction(7, 2)) == "3.50"


def test_gallery_order_dedup_permissions(hub):
    hub.create_user("alice")
    hub.create_user("bob")
    pids = []
    for i in range(3):
        project = random_project(random.Random(i + 1))
        pids.append(hub.upload_project(serialize_project(project), "alice")["project_id"])
    gallery = hub.create_gallery("favorites", "alice")
    gid = gallery["gallery_id"]
    for pid in (pids[1], pids[0], pids[2]):
        hub.add_to_gallery(gid, pid, "alice")
    assert hub.community.galleries[gid].projects == [pids[1], pids[0], pids[2]]
    hub.add_to_gallery(gid, pids[1], "alice")
    assert hub.community.galleries[gid].projects == [pids[1], pids[0], pids[2]]
    with pytest.raises(Forbidden):
        hub.add_to_gallery(gid, pids[0], "bob")
    assert {"gallery_id": gid, "name": "favorites"} in hub.project_summary(pids[0])["galleries"]


def test_every_mutation_logs_exactly_one_event(hub):
    hub.create_user("alice")
    hub.create_user("bob")
    pid = hub.upload_project(serialize_project(cat_project()), "alice")["project_id"]
    baseline = len(hub.events.events)
    hub.tag_project(pid, "bob", "fun")
    hub.comment_project(pid, "bob", "hello")
    hub.rate_project(pid, "bob", 4)
    hub.add_friend("bob", "alice")
    gid = hub.create_gallery("mine", "bob")["gallery_id"]
    hub.add_to_gallery(gid, pid, "bob")
    kinds = [e.kind for e in hub.events.events[baseline:]]
    assert kinds == ["tag", "comment", "rate", "friend", "gallery_add"]


# ---------------------------------------------------------------------------
# project_summary
# ---------------------------------------------------------------------------

SUMMARY_FIELDS = {
    "author", "based_on", "comments", "download_count", "galleries",
    "rating_count", "rating_mean", "remix_count", "reuses", "tags",
    "title", "uploaded_at", "view_count",
}


def test_fresh_project_summary_shape(hub):
    hub.create_user("alice")
    pid = hub.upload_project(serialize_project(cat_project()), "alice")["project_id"]
    summary = hub.project_summary(pid)
    assert set(summary) == SUMMARY_FIELDS - {"rating_mean"}
    assert summary["rating_count"] == 0
    assert "rating_mean" not in summary
    assert summary["remix_count"] == 0
    assert summary["based_on"] is None
    assert summary["view_count"] == 0


def test_summary_counts_match_event_log_scan(hub):
    hub.create_user("alice")
    hub.create_user("bob")
    pid = hub.upload_project(serialize_project(cat_project()), "alice")["project_id"]
    for _ in range(3):
        hub.fetch_project_file(pid, "bob")
    hub.record_view(pid, "bob")
    hub.record_view(pid, "alice")
    summary = hub.project_summary(pid)
    downloads = sum(1 for e in hub.events.events
                    if e.kind == "download" and e.subject == pid)
    views = sum(1 for e in hub.events.events if e.kind == "view" and e.subject == pid)
    assert summary["download_count"] == downloads == 3
    assert summary["view_count"] == views == 2


def test_summary_not_found(hub):
    with pytest.raises(NotFound):
        hub.project_summary(1)


# ---------------------------------------------------------------------------
# front_page
# ---------------------------------------------------------------------------

def test_front_page_empty_platform(hub):
    page = hub.front_page()
    assert page == {"featured": [], "most_remixed": [], "newest": [], "top_rated": []}


def brute_force_front_page(hub, limit):
    """Recompute every list by repeated best-element extraction."""
    from remixhub.container import parse_timestamp

    def pick_order(rows, keyfn):
        remaining = list(rows)
        out = []
        while remaining:
            best = remaining[0]
            for m in remaining[1:]:
                km, kb = keyfn(m), keyfn(best)
                if km > kb or (km == kb and m.project_id < best.project_id):
                    best = m
            remaining.remove(best)
            out.append(best.project_id)
        return out[:limit]

    metas = list(hub.projects.values())
    rated = [m for m in metas if hub.community.rating_count(m.project_id) > 0]
    return {
        "featured": pick_order([m for m in metas if m.featured],
                               lambda m: parse_timestamp(m.uploaded_at)),
        "most_remixed": pick_order(metas, lambda m: hub.graph.remix_count(m.project_id)),
        "newest": pick_order(metas, lambda m: parse_timestamp(m.uploaded_at)),
        "top_rated": pick_order(rated, lambda m: hub.community.rating_mean(m.project_id)),
    }


def test_front_page_matches_brute_force(hub, rng):
    users = ["alice", "bob", "carol", "dora"]
    for name in users:
        hub.create_user(name)
    hub.create_user("admin", is_admin=True)
    pids = []
    for i in range(30):
        project = random_project(rng)
        result = hub.upload_project(serialize_project(project), rng.choice(users))
        if "duplicate_of" not in result:
            pids.append(result["project_id"])
    for pid in pids:
        for name in users:
            if rng.random() < 0.5:
                hub.rate_project(pid, name, rng.randint(1, 5))
        if rng.random() < 0.2:
            hub.feature_project(pid, "admin")
    page = hub.front_page(10)
    expected = brute_force_front_page(hub, 10)
    got = {k: [row["project_id"] for row in v] for k, v in page.items()}
    assert got == expected


def test_front_page_tie_breaks_ascending_id(hub):
    hub.create_user("alice")
    hub.create_user("bob")
    ids = []
    for seed in (11, 22):
        project = random_project(random.Random(seed))
        ids.append(hub.upload_project(serialize_project(project), "alice")["project_id"])
    for pid in ids:
        hub.rate_project(pid, "alice", 4)
        hub.rate_project(pid, "bob", 2)
    top = [row["project_id"] for row in hub.front_page()["top_rated"]]
    assert top == sorted(ids)
    remixed = [row["project_id"] for row in hub.front_page()["most_remixed"]]
    assert remixed == sorted(ids)


def test_front_page_rerun_identical(hub):
    hub.create_user("alice")
    hub.upload_project(serialize_project(cat_project()), "alice")
    assert hub.front_page() == hub.front_page()
