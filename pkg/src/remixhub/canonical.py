"""Deterministic canonical JSON and SHA-256 helpers.

Canonical form: UTF-8 JSON, object keys sorted lexicographically by code
point, no insignificant whitespace, non-ASCII characters unescaped.
Every digest in the platform (asset ids, script hashes, content hashes,
blob keys) is the lowercase hex SHA-256 of a canonical byte string, so
this module is the single source of truth for hashing.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any


def canonical_dumps(obj: Any) -> str:
    """Canonical JSON text: sorted keys, minimal separators, raw unicode."""
    return json.dumps(
        obj,
        sort_keys=True,
        separators=(",", ":"),
        ensure_ascii=False,
        allow_nan=False,
    )


def canonical_bytes(obj: Any) -> bytes:
    """Canonical JSON encoded as UTF-8."""
    return canonical_dumps(obj).encode("utf-8")


def sha256_hex(data: bytes) -> str:
    """Lowercase hex SHA-256 of raw bytes."""
    return hashlib.sha256(data).hexdigest()


def canonical_hash(obj: Any) -> str:
    """SHA-256 hex digest of the canonical JSON encoding of ``obj``."""
    return sha256_hex(canonical_bytes(obj))
