"""Shared fixtures: project builders and seeded random corpora."""

from __future__ import annotations

import random
import string

import pytest

from remixhub.container import (
    Asset,
    Block,
    Project,
    ProvenanceRecord,
    Script,
    Sprite,
    make_asset,
    normalize_project,
)

T0 = "2026-01-01T00:00:00Z"
SERVER = "unit-test"


def created_record(author="alice", ts=T0):
    return ProvenanceRecord(seq=0, action="created", actor=author, timestamp=ts, server=SERVER)


def make_project(title="Untitled", author="alice", sprites=(), assets=None, provenance=None):
    return Project(
        title=title,
        author=author,
        stage=Sprite("stage"),
        sprites=tuple(sprites),
        assets=dict(assets or {}),
        provenance=tuple(provenance) if provenance is not None else (created_record(author),),
    )


def cat_script():
    """The canonical fixture: move the cat when the right arrow is pressed."""
    return Script((
        Block("whenKeyPressed", ("right arrow",), Script((Block("move", ("10",)),))),
    ))


def cat_project(author="alice", title="Cat"):
    png = make_asset("image", "image/png", b"\x89PNG not really a cat")
    cat = Sprite("cat", costumes=(png.id,), scripts=(cat_script(),))
    return make_project(title=title, author=author, sprites=(cat,), assets={png.id: png})


# ---------------------------------------------------------------------------
# randomized corpora
# ---------------------------------------------------------------------------

OPS = ["move", "turn", "say", "playSound", "whenKeyPressed", "whenClicked",
       "repeat", "ifTouching", "setCostume", "broadcast"]
WORDS = ["cat", "dog", "star", "ball", "maze", "song", "pixel", "cloud",
         "robot", "fish", "árbol", "круг", "音楽"]
TITLE_BITS = ["Adventure", "Remix", "Game", "Story", "Dance", "Quest", "Lab", "🌟", "Über"]


def random_arg(rng: random.Random) -> str:
    choice = rng.random()
    if choice < 0.4:
        return str(rng.randint(-100, 100))
    if choice < 0.6:
        return f"{rng.randint(0, 99)}.{rng.randint(0, 999)}"
    return rng.choice(WORDS)


def random_block(rng: random.Random, depth=0) -> Block:
    body = None
    if depth < 2 and rng.random() < 0.3:
        body = Script(tuple(random_block(rng, depth + 1) for _ in range(rng.randint(1, 3))))
    return Block(
        op=rng.choice(OPS),
        args=tuple(random_arg(rng) for _ in range(rng.randint(0, 3))),
        body=body,
    )


def random_script(rng: random.Random) -> Script:
    return Script(tuple(random_block(rng) for _ in range(rng.randint(1, 4))))


def random_asset(rng: random.Random) -> Asset:
    kind = rng.choice(["image", "audio", "text"])
    media = {"image": "image/png", "audio": "audio/ogg", "text": "text/plain"}[kind]
    payload = bytes(rng.getrandbits(8) for _ in range(rng.randint(1, 64)))
    return make_asset(kind, media, payload)


def random_username(rng: random.Random) -> str:
    length = rng.randint(3, 12)
    return "".join(rng.choice(string.ascii_lowercase + "_" + string.digits) for _ in range(length))


def random_project(rng: random.Random, asset_pool=None, script_pool=None) -> Project:
    """A valid random project, optionally drawing from shared pools.

    Shared pools create component overlap between corpus members, which
    the lineage detection tests rely on.
    """
    assets = {}
    sprites = []
    n_sprites = rng.randint(0, 3)
    for i in range(n_sprites):
        costumes, sounds = [], []
        for _ in range(rng.randint(0, 2)):
            if asset_pool is not None and rng.random() < 0.7:
                asset = rng.choice(asset_pool)
            else:
                asset = random_asset(rng)
            assets[asset.id] = asset
            (costumes if asset.kind == "image" else sounds).append(asset.id)
            if asset.kind == "text":
                sounds.pop()  # text assets are not playable or wearable
        scripts = []
        for _ in range(rng.randint(0, 3)):
            if script_pool is not None and rng.random() < 0.6:
                scripts.append(rng.choice(script_pool))
            else:
                scripts.append(random_script(rng))
        sprites.append(Sprite(
            name=f"{rng.choice(WORDS)}_{i}",
            costumes=tuple(costumes),
            sounds=tuple(sounds),
            scripts=tuple(scripts),
        ))
    stage_scripts = tuple(random_script(rng) for _ in range(rng.randint(0, 2)))
    project = Project(
        title=" ".join(rng.sample(TITLE_BITS, k=rng.randint(1, 3))),
        author=random_username(rng),
        stage=Sprite("stage", scripts=stage_scripts),
        sprites=tuple(sprites),
        assets=assets,
        provenance=(created_record(random_username(rng)),),
    )
    # referenced-only invariant: drop pool assets that ended up unused
    return normalize_project(project)


def pytest_runtest_logreport(report):
    """One visible pass/fail line per acceptance criterion."""
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        name = report.nodeid.split("::")[-1]
        verdict = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}.get(report.outcome, "?")
        print(f"\n[{verdict}] {name}", flush=True)


@pytest.fixture
def rng():
    return random.Random(20260810)


@pytest.fixture
def hub(tmp_path):
    from remixhub.platform import Hub
    h = Hub(tmp_path / "data")
    yield h
    h.close()
