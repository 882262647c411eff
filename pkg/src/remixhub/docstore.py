"""Transactional embedded document store backed by sqlite3.

Every platform entity (users, project metadata, lineage edges, tags,
comments, ratings, galleries, friend links, events) is persisted as one
canonical JSON document keyed by (kind, id). All writes go through an
explicit transaction; the transaction lock doubles as the platform's
single-writer commit point.
"""

from __future__ import annotations

import sqlite3
import threading
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional

from .canonical import canonical_dumps
import json

_SCHEMA = """
CREATE TABLE IF NOT EXISTS documents (
    kind TEXT NOT NULL,
    id   TEXT NOT NULL,
    doc  TEXT NOT NULL,
    PRIMARY KEY (kind, id)
)
"""


class DocumentStore:
    """Write-through JSON document table with coarse-grained transactions."""

    def __init__(self, path: Path):
        self._path = Path(path)
        self._conn = sqlite3.connect(str(self._path), check_same_thread=False)
        self._conn.isolation_level = None  # manual BEGIN/COMMIT
        self._conn.execute("PRAGMA journal_mode=WAL")
        self._conn.execute(_SCHEMA)
        self._lock = threading.RLock()
        self._depth = 0

    @contextmanager
    def transaction(self):
        """Serialize writers; commit everything inside the block atomically."""
        with self._lock:
            outermost = self._depth == 0
            self._depth += 1
            try:
                if outermost:
                    self._conn.execute("BEGIN IMMEDIATE")
                yield self
                if outermost:
                    self._conn.execute("COMMIT")
            except BaseException:
                if outermost:
                    self._conn.execute("ROLLBACK")
                raise
            finally:
                self._depth -= 1

    def put(self, kind: str, doc_id: str, doc: dict) -> None:
        self._conn.execute(
            "INSERT OR REPLACE INTO documents (kind, id, doc) VALUES (?, ?, ?)",
            (kind, doc_id, canonical_dumps(doc)),
        )

    def get(self, kind: str, doc_id: str) -> Optional[dict]:
        row = self._conn.execute(
            "SELECT doc FROM documents WHERE kind = ? AND id = ?", (kind, doc_id)
        ).fetchone()
        return json.loads(row[0]) if row else None

    def delete(self, kind: str, doc_id: str) -> None:
        self._conn.execute(
            "DELETE FROM documents WHERE kind = ? AND id = ?", (kind, doc_id)
        )

    def iter_kind(self, kind: str) -> Iterator[tuple[str, dict]]:
        rows = self._conn.execute(
            "SELECT id, doc FROM documents WHERE kind = ? ORDER BY id", (kind,)
        ).fetchall()
        for doc_id, doc in rows:
            yield doc_id, json.loads(doc)

    def count(self, kind: str) -> int:
        row = self._conn.execute(
            "SELECT COUNT(*) FROM documents WHERE kind = ?", (kind,)
        ).fetchone()
        return int(row[0])

    def close(self) -> None:
        self._conn.commit()
        self._conn.close()
