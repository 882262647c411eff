"""Programmable-media project containers (``.pmp`` files).

A project is a mix of behavior (scripts made of blocks) and
non-programmable media (image/audio/text assets), plus an embedded
append-only provenance ledger. This module parses, validates,
canonically serializes, and content-hashes those containers.

Canonical file form: one UTF-8 JSON document, keys sorted by code point,
no insignificant whitespace, asset bytes base64-encoded (standard
alphabet, padded). Top-level keys are exactly
{assets, author, format_version, provenance, sprites, stage, title}.

All functions are pure: values are immutable (frozen dataclasses,
tuples), and mutation-style operations return new objects.
"""

from __future__ import annotations

import base64
import binascii
import json
import re
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from typing import Any, Optional

from .canonical import canonical_bytes, sha256_hex
from .errors import (
    EmptyScript,
    IntegrityError,
    MalformedSyntax,
    SchemaViolation,
    SeqGap,
    TimestampRegression,
    ValidationFailed,
    VersionUnsupported,
)

FORMAT_VERSION = 1
ASSET_KINDS = ("image", "audio", "text")
ACTIONS = ("created", "downloaded", "uploaded", "derived")
STAGE_NAME = "stage"

USERNAME_RE = re.compile(r"^[a-z0-9_]{1,32}$")
DIGEST_RE = re.compile(r"^[0-9a-f]{64}$")
TIMESTAMP_RE = re.compile(
    r"^(\d{4})-(\d{2})-(\d{2})T(\d{2}):(\d{2}):(\d{2})(?:\.(\d{1,9}))?Z$"
)

# Nesting deeper than this is rejected rather than risking recursion blowups.
MAX_BLOCK_DEPTH = 128

TOP_LEVEL_KEYS = frozenset(
    {"assets", "author", "format_version", "provenance", "sprites", "stage", "title"}
)
SPRITE_KEYS = frozenset({"costumes", "name", "scripts", "sounds"})
ASSET_KEYS = frozenset({"data", "id", "kind", "media_type"})
RECORD_KEYS = frozenset({"action", "actor", "project_ref", "seq", "server", "timestamp"})


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Asset:
    """One piece of non-programmable media, addressed by its byte digest."""

    id: str
    kind: str
    media_type: str
    data: bytes


@dataclass(frozen=True)
class Block:
    """One behavior instruction: opcode, scalar args, optional nested body.

    Args are always strings; numeric arguments keep their author-written
    decimal text so hashing never depends on float formatting.
    """

    op: str
    args: tuple[str, ...] = ()
    body: Optional["Script"] = None


@dataclass(frozen=True)
class Script:
    """An ordered stack of blocks; the unit of behavioral reuse."""

    blocks: tuple[Block, ...] = ()


@dataclass(frozen=True)
class Sprite:
    """A named actor: image costumes, audio sounds, behavior scripts."""

    name: str
    costumes: tuple[str, ...] = ()
    sounds: tuple[str, ...] = ()
    scripts: tuple[Script, ...] = ()


@dataclass(frozen=True)
class ProvenanceRecord:
    """One entry of the in-file ledger recording who did what, when."""

    seq: int
    action: str
    actor: str
    timestamp: str
    server: str
    project_ref: Optional[int] = None


@dataclass(frozen=True)
class Project:
    """A complete programmable-media container."""

    title: str
    author: str
    stage: Sprite
    sprites: tuple[Sprite, ...] = ()
    assets: dict[str, Asset] = None  # type: ignore[assignment]
    provenance: tuple[ProvenanceRecord, ...] = ()
    format_version: int = FORMAT_VERSION

    def __post_init__(self):
        if self.assets is None:
            object.__setattr__(self, "assets", {})


@dataclass(frozen=True)
class Violation:
    """One broken invariant: where it is, which rule, and what happened."""

    path: str
    rule: str
    message: str


def make_asset(kind: str, media_type: str, data: bytes) -> Asset:
    """Build an asset with its id computed from the payload."""
    return Asset(id=sha256_hex(data), kind=kind, media_type=media_type, data=data)


# ---------------------------------------------------------------------------
# timestamps
# ---------------------------------------------------------------------------

def parse_timestamp(value: str) -> datetime:
    """Parse an RFC 3339 UTC timestamp with trailing Z; raise ValueError."""
    m = TIMESTAMP_RE.match(value)
    if not m:
        raise ValueError(f"not an RFC 3339 UTC timestamp: {value!r}")
    year, month, day, hour, minute, second = (int(m.group(i)) for i in range(1, 7))
    frac = m.group(7) or ""
    micros = int(frac.ljust(6, "0")[:6]) if frac else 0
    return datetime(year, month, day, hour, minute, second, micros, tzinfo=timezone.utc)


def is_valid_timestamp(value: str) -> bool:
    try:
        parse_timestamp(value)
    except ValueError:
        return False
    return True


def format_timestamp(dt: datetime) -> str:
    """Canonical server-side timestamp text (microsecond precision, Z)."""
    return dt.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%S.%fZ")


# ---------------------------------------------------------------------------
# document encoding (Project -> plain JSON values)
# ---------------------------------------------------------------------------

def _asset_doc(asset: Asset) -> dict:
    return {
        "data": base64.b64encode(asset.data).decode("ascii"),
        "id": asset.id,
        "kind": asset.kind,
        "media_type": asset.media_type,
    }


def _block_doc(block: Block) -> dict:
    doc: dict[str, Any] = {"args": list(block.args), "op": block.op}
    if block.body is not None:
        doc["body"] = [_block_doc(b) for b in block.body.blocks]
    return doc


def _script_doc(script: Script) -> list:
    return [_block_doc(b) for b in script.blocks]


def _sprite_doc(sprite: Sprite) -> dict:
    return {
        "costumes": list(sprite.costumes),
        "name": sprite.name,
        "scripts": [_script_doc(s) for s in sprite.scripts],
        "sounds": list(sprite.sounds),
    }


def _record_doc(record: ProvenanceRecord) -> dict:
    return {
        "action": record.action,
        "actor": record.actor,
        "project_ref": record.project_ref,
        "seq": record.seq,
        "server": record.server,
        "timestamp": record.timestamp,
    }


def project_doc(project: Project) -> dict:
    """Full JSON document for a project (plain values, not yet encoded)."""
    return {
        "assets": {d: _asset_doc(a) for d, a in project.assets.items()},
        "author": project.author,
        "format_version": project.format_version,
        "provenance": [_record_doc(r) for r in project.provenance],
        "sprites": [_sprite_doc(s) for s in project.sprites],
        "stage": _sprite_doc(project.stage),
        "title": project.title,
    }


def content_core_doc(project: Project) -> dict:
    """The hash-relevant core: structure and assets, no title/author/ledger."""
    return {
        "assets": {d: _asset_doc(a) for d, a in project.assets.items()},
        "format_version": project.format_version,
        "sprites": [_sprite_doc(s) for s in project.sprites],
        "stage": _sprite_doc(project.stage),
    }


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def _check_str(value, path, violations, *, allow_empty=True) -> bool:
    if type(value) is not str:
        violations.append(Violation(path, "BadType", "expected a string"))
        return False
    if not allow_empty and not value:
        violations.append(Violation(path, "EmptyString", "must be non-empty"))
        return False
    return True


def _check_blocks(blocks, path: str, violations: list[Violation], depth: int = 0) -> None:
    if depth > MAX_BLOCK_DEPTH:
        violations.append(Violation(path, "NestingTooDeep", "block nesting too deep"))
        return
    for i, block in enumerate(blocks):
        bpath = f"{path}[{i}]"
        if type(block.op) is not str or not block.op:
            violations.append(Violation(f"{bpath}.op", "EmptyOpcode", "opcode must be a non-empty string"))
        for j, arg in enumerate(block.args):
            if type(arg) is not str:
                violations.append(Violation(f"{bpath}.args[{j}]", "NonStringArg", "args are scalar strings"))
        if block.body is not None:
            if not block.body.blocks:
                violations.append(Violation(f"{bpath}.body", "EmptyScript", "empty body must be omitted"))
            else:
                _check_blocks(block.body.blocks, f"{bpath}.body", violations, depth + 1)


def _check_sprite(sprite: Sprite, path: str, project: Project, violations: list[Violation]) -> None:
    if type(sprite.name) is not str or not sprite.name:
        violations.append(Violation(f"{path}.name", "EmptySpriteName", "sprite name must be non-empty"))
    for field, wanted in (("costumes", "image"), ("sounds", "audio")):
        for i, ref in enumerate(getattr(sprite, field)):
            rpath = f"{path}.{field}[{i}]"
            if type(ref) is not str or not DIGEST_RE.match(ref or ""):
                violations.append(Violation(rpath, "BadDigest", "asset reference must be 64 hex chars"))
                continue
            asset = project.assets.get(ref)
            if asset is None:
                violations.append(Violation(rpath, "DanglingAssetRef", f"asset {ref} not in table"))
            elif asset.kind != wanted:
                violations.append(Violation(rpath, "AssetKindMismatch", f"{field} must reference {wanted} assets"))
    for i, script in enumerate(sprite.scripts):
        spath = f"{path}.scripts[{i}]"
        if not script.blocks:
            violations.append(Violation(spath, "EmptyScript", "empty scripts must be stripped"))
        else:
            _check_blocks(script.blocks, spath, violations)


def _referenced_assets(project: Project) -> set[str]:
    refs: set[str] = set()
    for sprite in (project.stage, *project.sprites):
        refs.update(sprite.costumes)
        refs.update(sprite.sounds)
    return refs


def validate(project: Project) -> list[Violation]:
    """Check every container invariant; empty list means the project is valid.

    Violations are data, not errors: each one names the field path and the
    rule it breaks, so callers can report all problems at once.
    """
    v: list[Violation] = []
    if project.format_version != FORMAT_VERSION:
        v.append(Violation("format_version", "UnsupportedVersion", f"must be {FORMAT_VERSION}"))
    _check_str(project.title, "title", v)
    if type(project.author) is not str or not USERNAME_RE.match(project.author or ""):
        v.append(Violation("author", "BadUsername", "author must match [a-z0-9_]{1,32}"))

    for digest, asset in project.assets.items():
        apath = f"assets[{digest[:12]}]"
        if asset.kind not in ASSET_KINDS:
            v.append(Violation(f"{apath}.kind", "BadAssetKind", f"kind must be one of {ASSET_KINDS}"))
        elif not asset.media_type.startswith(asset.kind + "/"):
            v.append(Violation(f"{apath}.media_type", "MediaTypeKindMismatch",
                               f"media type {asset.media_type!r} inconsistent with kind {asset.kind!r}"))
        if not asset.data:
            v.append(Violation(f"{apath}.data", "EmptyAssetData", "asset payload must be non-empty"))
        if asset.id != sha256_hex(asset.data):
            v.append(Violation(f"{apath}.id", "AssetDigestMismatch", "id is not the SHA-256 of data"))
        if digest != asset.id:
            v.append(Violation(apath, "AssetTableKeyMismatch", "table key differs from asset id"))

    if project.stage.name != STAGE_NAME:
        v.append(Violation("stage.name", "BadStageName", f'stage must be named "{STAGE_NAME}"'))
    _check_sprite(project.stage, "stage", project, v)
    seen_names = {STAGE_NAME}
    for i, sprite in enumerate(project.sprites):
        path = f"sprites[{i}]"
        if sprite.name in seen_names:
            v.append(Violation(f"{path}.name", "DuplicateSpriteName", f"name {sprite.name!r} reused"))
        seen_names.add(sprite.name)
        _check_sprite(sprite, path, project, v)

    unreferenced = set(project.assets) - _referenced_assets(project)
    for digest in sorted(unreferenced):
        v.append(Violation(f"assets[{digest[:12]}]", "UnreferencedAsset", "asset not referenced by any sprite"))

    last_seq: Optional[int] = None
    last_ts: Optional[datetime] = None
    for i, rec in enumerate(project.provenance):
        rpath = f"provenance[{i}]"
        if rec.action not in ACTIONS:
            v.append(Violation(f"{rpath}.action", "BadAction", f"action must be one of {ACTIONS}"))
        if type(rec.actor) is not str or not USERNAME_RE.match(rec.actor or ""):
            v.append(Violation(f"{rpath}.actor", "BadUsername", "actor must match [a-z0-9_]{1,32}"))
        _check_str(rec.server, f"{rpath}.server", v, allow_empty=False)
        if type(rec.seq) is not int or rec.seq < 0:
            v.append(Violation(f"{rpath}.seq", "BadSeq", "seq must be a non-negative integer"))
        elif last_seq is not None and rec.seq <= last_seq:
            v.append(Violation(f"{rpath}.seq", "LedgerSeqOrder", "seq values must strictly increase"))
        if type(rec.seq) is int:
            last_seq = rec.seq if last_seq is None else max(last_seq, rec.seq)
        if type(rec.timestamp) is not str or not is_valid_timestamp(rec.timestamp):
            v.append(Violation(f"{rpath}.timestamp", "BadTimestamp", "must be RFC 3339 UTC with trailing Z"))
        else:
            ts = parse_timestamp(rec.timestamp)
            if last_ts is not None and ts < last_ts:
                v.append(Violation(f"{rpath}.timestamp", "LedgerTimestampOrder", "timestamps must not decrease"))
            last_ts = ts if last_ts is None else max(last_ts, ts)
        if rec.action in ("downloaded", "uploaded", "derived"):
            if type(rec.project_ref) is not int:
                v.append(Violation(f"{rpath}.project_ref", "MissingProjectRef",
                                   f"{rec.action} records must carry a project_ref"))
        elif rec.project_ref is not None and type(rec.project_ref) is not int:
            v.append(Violation(f"{rpath}.project_ref", "BadType", "project_ref must be int or null"))
    return v


_INTEGRITY_RULES = {"AssetDigestMismatch", "AssetTableKeyMismatch", "DanglingAssetRef"}
_VERSION_RULES = {"UnsupportedVersion"}


def _raise_for_violations(violations: list[Violation]) -> None:
    if not violations:
        return
    first = violations[0]
    msg = f"{first.path}: {first.message}"
    for rule_set, exc in ((_VERSION_RULES, VersionUnsupported), (_INTEGRITY_RULES, IntegrityError)):
        hit = next((x for x in violations if x.rule in rule_set), None)
        if hit:
            raise exc(f"{hit.path}: {hit.message}")
    raise SchemaViolation(msg)


# ---------------------------------------------------------------------------
# normalization
# ---------------------------------------------------------------------------

def _normalize_block(block: Block) -> Block:
    body = block.body
    if body is not None:
        blocks = tuple(_normalize_block(b) for b in body.blocks)
        body = Script(blocks) if blocks else None
    return Block(op=block.op, args=tuple(block.args), body=body)


def _normalize_sprite(sprite: Sprite) -> Sprite:
    scripts = tuple(
        Script(tuple(_normalize_block(b) for b in s.blocks))
        for s in sprite.scripts
        if s.blocks
    )
    return replace(sprite, scripts=scripts)


def normalize_project(project: Project) -> Project:
    """Strip empty scripts/bodies and drop unreferenced assets.

    Empty scripts would create meaningless universal overlap between
    projects, and unreferenced assets would let dead bytes change a
    project's identity; both are removed before hashing or serialization.
    """
    stage = _normalize_sprite(project.stage)
    sprites = tuple(_normalize_sprite(s) for s in project.sprites)
    normalized = replace(project, stage=stage, sprites=sprites)
    referenced = _referenced_assets(normalized)
    assets = {d: a for d, a in project.assets.items() if d in referenced}
    return replace(normalized, assets=assets)


# ---------------------------------------------------------------------------
# parsing (bytes -> Project)
# ---------------------------------------------------------------------------

def _require_keys(obj: dict, keys: frozenset, path: str) -> None:
    missing = keys - obj.keys()
    extra = obj.keys() - keys
    if missing:
        raise SchemaViolation(f"{path}: missing keys {sorted(missing)}")
    if extra:
        raise SchemaViolation(f"{path}: unexpected keys {sorted(extra)}")


def _expect(cond: bool, path: str, message: str) -> None:
    if not cond:
        raise SchemaViolation(f"{path}: {message}")


def _parse_block(doc, path: str, depth: int = 0) -> Block:
    if depth > MAX_BLOCK_DEPTH:
        raise SchemaViolation(f"{path}: block nesting too deep")
    _expect(type(doc) is dict, path, "block must be an object")
    allowed = {"args", "body", "op"}
    _expect(not (doc.keys() - allowed), path, f"unexpected keys {sorted(doc.keys() - allowed)}")
    _expect({"args", "op"} <= doc.keys(), path, "block needs op and args")
    _expect(type(doc["op"]) is str, f"{path}.op", "op must be a string")
    _expect(type(doc["args"]) is list, f"{path}.args", "args must be a list")
    for j, arg in enumerate(doc["args"]):
        _expect(type(arg) is str, f"{path}.args[{j}]",
                "args are scalar strings (numbers keep their written text)")
    body = None
    if "body" in doc:
        _expect(type(doc["body"]) is list, f"{path}.body", "body must be a block list")
        blocks = tuple(
            _parse_block(b, f"{path}.body[{i}]", depth + 1) for i, b in enumerate(doc["body"])
        )
        body = Script(blocks) if blocks else None
    return Block(op=doc["op"], args=tuple(doc["args"]), body=body)


def _parse_script(doc, path: str) -> Script:
    _expect(type(doc) is list, path, "script must be a block list")
    return Script(tuple(_parse_block(b, f"{path}[{i}]") for i, b in enumerate(doc)))


def _parse_sprite(doc, path: str) -> Sprite:
    _expect(type(doc) is dict, path, "sprite must be an object")
    _require_keys(doc, SPRITE_KEYS, path)
    _expect(type(doc["name"]) is str, f"{path}.name", "name must be a string")
    for field in ("costumes", "sounds"):
        _expect(type(doc[field]) is list, f"{path}.{field}", "must be a list of asset ids")
        for i, ref in enumerate(doc[field]):
            _expect(type(ref) is str, f"{path}.{field}[{i}]", "asset id must be a string")
    _expect(type(doc["scripts"]) is list, f"{path}.scripts", "must be a list of scripts")
    scripts = tuple(
        _parse_script(s, f"{path}.scripts[{i}]") for i, s in enumerate(doc["scripts"])
    )
    return Sprite(
        name=doc["name"],
        costumes=tuple(doc["costumes"]),
        sounds=tuple(doc["sounds"]),
        scripts=scripts,
    )


def _parse_asset(digest, doc, path: str) -> Asset:
    _expect(type(doc) is dict, path, "asset must be an object")
    _require_keys(doc, ASSET_KEYS, path)
    for key in ("data", "id", "kind", "media_type"):
        _expect(type(doc[key]) is str, f"{path}.{key}", "must be a string")
    _expect(type(digest) is str and DIGEST_RE.match(digest) is not None,
            path, "asset table key must be 64 hex chars")
    _expect(doc["kind"] in ASSET_KINDS, f"{path}.kind", f"kind must be one of {ASSET_KINDS}")
    try:
        data = base64.b64decode(doc["data"], validate=True)
    except (binascii.Error, ValueError) as exc:
        raise IntegrityError(f"{path}.data: corrupt base64 ({exc})") from None
    if base64.b64encode(data).decode("ascii") != doc["data"]:
        raise IntegrityError(f"{path}.data: non-canonical base64 encoding")
    return Asset(id=doc["id"], kind=doc["kind"], media_type=doc["media_type"], data=data)


def _parse_record(doc, path: str) -> ProvenanceRecord:
    _expect(type(doc) is dict, path, "provenance record must be an object")
    _require_keys(doc, RECORD_KEYS, path)
    _expect(type(doc["seq"]) is int, f"{path}.seq", "seq must be an integer")
    for key in ("action", "actor", "server", "timestamp"):
        _expect(type(doc[key]) is str, f"{path}.{key}", "must be a string")
    ref = doc["project_ref"]
    _expect(ref is None or type(ref) is int, f"{path}.project_ref", "must be int or null")
    return ProvenanceRecord(
        seq=doc["seq"],
        action=doc["action"],
        actor=doc["actor"],
        timestamp=doc["timestamp"],
        server=doc["server"],
        project_ref=ref,
    )


def parse_project(data: bytes) -> Project:
    """Parse container bytes into a validated, normalized Project.

    Raises MalformedSyntax for non-UTF-8/non-JSON input, VersionUnsupported
    for any format_version other than the pinned one, SchemaViolation for
    structural problems, and IntegrityError when content addressing is
    broken (digest mismatch, corrupt base64, dangling asset reference).
    """
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedSyntax(f"not UTF-8 text: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedSyntax(f"not a JSON document: {exc}") from None
    if type(doc) is not dict:
        raise MalformedSyntax("top level must be a JSON object")

    if "format_version" not in doc:
        raise SchemaViolation("format_version: missing")
    version = doc["format_version"]
    if type(version) is not int:
        raise SchemaViolation("format_version: must be an integer")
    if version != FORMAT_VERSION:
        raise VersionUnsupported(f"format_version {version} is not supported (expected {FORMAT_VERSION})")

    _require_keys(doc, TOP_LEVEL_KEYS, "$")
    _expect(type(doc["title"]) is str, "title", "must be a string")
    _expect(type(doc["author"]) is str, "author", "must be a string")
    _expect(type(doc["assets"]) is dict, "assets", "must be a digest-keyed object")
    _expect(type(doc["sprites"]) is list, "sprites", "must be a list")
    _expect(type(doc["provenance"]) is list, "provenance", "must be a list")

    assets = {
        digest: _parse_asset(digest, adoc, f"assets[{str(digest)[:12]}]")
        for digest, adoc in doc["assets"].items()
    }
    stage = _parse_sprite(doc["stage"], "stage")
    sprites = tuple(_parse_sprite(s, f"sprites[{i}]") for i, s in enumerate(doc["sprites"]))
    provenance = tuple(_parse_record(r, f"provenance[{i}]") for i, r in enumerate(doc["provenance"]))

    project = Project(
        title=doc["title"],
        author=doc["author"],
        stage=stage,
        sprites=sprites,
        assets=assets,
        provenance=provenance,
        format_version=version,
    )
    project = normalize_project(project)
    _raise_for_violations(validate(project))
    return project


# ---------------------------------------------------------------------------
# serialization & hashing
# ---------------------------------------------------------------------------

def serialize_project(project: Project) -> bytes:
    """Emit the canonical byte form; equal projects produce identical bytes."""
    violations = validate(project)
    if violations:
        first = violations[0]
        raise ValidationFailed(f"{first.path}: {first.message} [{first.rule}]", violations)
    return canonical_bytes(project_doc(project))


def content_hash(project: Project) -> str:
    """Digest of the content core: structure and assets only.

    Title, author, and the provenance ledger are excluded, so cosmetic
    edits and ledger growth never change a project's identity.
    """
    violations = validate(project)
    if violations:
        first = violations[0]
        raise ValidationFailed(f"{first.path}: {first.message} [{first.rule}]", violations)
    return sha256_hex(canonical_bytes(content_core_doc(project)))


def script_hash(script: Script) -> str:
    """Digest of one script's canonical block list."""
    if not script.blocks:
        raise EmptyScript("cannot hash an empty script")
    return sha256_hex(canonical_bytes(_script_doc(script)))


def component_set(project: Project) -> frozenset[str]:
    """All reusable components: asset ids plus script hashes, as one set."""
    parts = set(project.assets.keys())
    for sprite in (project.stage, *project.sprites):
        for script in sprite.scripts:
            if script.blocks:
                parts.add(script_hash(script))
    return frozenset(parts)


def append_provenance(project: Project, record: ProvenanceRecord) -> Project:
    """Extend the ledger by one record; the content hash is unaffected.

    The record's seq must be exactly last+1 (0 on an empty ledger) and its
    timestamp must not precede the previous record's.
    """
    ledger = project.provenance
    expected = ledger[-1].seq + 1 if ledger else 0
    if record.seq != expected:
        raise SeqGap(f"expected seq {expected}, got {record.seq}")
    if ledger:
        if not is_valid_timestamp(record.timestamp):
            raise ValidationFailed(f"provenance timestamp invalid: {record.timestamp!r}")
        if parse_timestamp(record.timestamp) < parse_timestamp(ledger[-1].timestamp):
            raise TimestampRegression(
                f"timestamp {record.timestamp} precedes {ledger[-1].timestamp}"
            )
    extended = replace(project, provenance=(*ledger, record))
    probe = validate(extended)
    if probe:
        first = probe[0]
        raise ValidationFailed(f"{first.path}: {first.message} [{first.rule}]", probe)
    return extended
