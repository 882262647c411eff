"""Content-addressed storage for asset blobs and registered project files.

Blobs live in a two-level hex fan-out directory tree
(``blobs/<first2>/<next2>/<full64>``); stored project files live at
``projects/<project_id>.pmp``. Both layouts are part of the on-disk
contract so a data directory can be backed up and restored byte-for-byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .canonical import sha256_hex
from .errors import EmptyBlob, IntegrityError, NotFound, StorageFailure


@dataclass(frozen=True)
class StoredProject:
    """Registration metadata for one project in the repository."""

    project_id: int
    content_hash: str
    title: str
    author: str
    uploaded_at: str
    featured: bool
    canonical_bytes_ref: str

    def to_doc(self) -> dict:
        return {
            "author": self.author,
            "canonical_bytes_ref": self.canonical_bytes_ref,
            "content_hash": self.content_hash,
            "featured": self.featured,
            "project_id": self.project_id,
            "title": self.title,
            "uploaded_at": self.uploaded_at,
        }

    @staticmethod
    def from_doc(doc: dict) -> "StoredProject":
        return StoredProject(
            project_id=doc["project_id"],
            content_hash=doc["content_hash"],
            title=doc["title"],
            author=doc["author"],
            uploaded_at=doc["uploaded_at"],
            featured=doc["featured"],
            canonical_bytes_ref=doc["canonical_bytes_ref"],
        )


@dataclass(frozen=True)
class RegistrationResult:
    """Outcome of an upload: a fresh id, or a pointer to the duplicate."""

    project_id: int
    content_hash: str
    duplicate_of: Optional[int] = None


class BlobStore:
    """Deduplicating byte store: each distinct byte string exists once."""

    def __init__(self, root: Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def path_for(self, digest: str) -> Path:
        return self.root / digest[:2] / digest[2:4] / digest

    def store(self, data: bytes) -> str:
        """Store bytes, returning their digest; storing twice is a no-op."""
        if not data:
            raise EmptyBlob("refusing to store an empty blob")
        digest = sha256_hex(data)
        path = self.path_for(digest)
        if path.exists():
            return digest
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_name(path.name + ".tmp")
            tmp.write_bytes(data)
            tmp.rename(path)
        except OSError as exc:
            raise StorageFailure(f"cannot write blob {digest}: {exc}") from None
        return digest

    def get(self, digest: str) -> bytes:
        """Fetch bytes by digest, re-verifying the hash on the way out."""
        path = self.path_for(digest)
        if not path.exists():
            raise NotFound(f"no blob {digest}")
        data = path.read_bytes()
        if sha256_hex(data) != digest:
            raise IntegrityError(f"blob {digest} is corrupted on disk")
        return data

    def __contains__(self, digest: str) -> bool:
        return self.path_for(digest).exists()

    def count(self) -> int:
        return sum(1 for _ in self.iter_digests())

    def iter_digests(self):
        for path in sorted(self.root.glob("??/??/*")):
            if path.is_file() and not path.name.endswith(".tmp"):
                yield path.name


class ProjectFileStore:
    """Immutable canonical project files, keyed by server-assigned id."""

    def __init__(self, root: Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def path_for(self, project_id: int) -> Path:
        return self.root / f"{project_id}.pmp"

    def write(self, project_id: int, data: bytes) -> str:
        path = self.path_for(project_id)
        try:
            tmp = path.with_name(path.name + ".tmp")
            tmp.write_bytes(data)
            tmp.rename(path)
        except OSError as exc:
            raise StorageFailure(f"cannot write project file {project_id}: {exc}") from None
        return sha256_hex(data)

    def read(self, project_id: int) -> bytes:
        path = self.path_for(project_id)
        if not path.exists():
            raise NotFound(f"no stored file for project {project_id}")
        return path.read_bytes()

    def iter_ids(self):
        for path in sorted(self.root.glob("*.pmp")):
            yield int(path.stem)
