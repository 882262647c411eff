"""The platform hub: storage, lineage, community, and analytics wired together.

One ``Hub`` owns a data directory and everything inside it. All mutations
funnel through the document store's transaction lock (the single-writer
commit point), so a project registration commits its metadata, lineage
edges, and upload event together or not at all. Reads observe committed
in-memory state.

Restarting a hub on the same data directory rebuilds every counter and
index from the persisted documents, stored project files, and the
append-only event log.
"""

from __future__ import annotations

import hmac
import logging
import threading
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Optional, Union

from . import container
from .canonical import sha256_hex
from .community import (
    Comment,
    Community,
    FriendLink,
    Gallery,
    Rating,
    Tag,
    User,
    format_mean,
)
from .config import Config
from .container import (
    Project,
    ProvenanceRecord,
    format_timestamp,
    parse_timestamp,
)
from .docstore import DocumentStore
from .errors import (
    DataDirUnwritable,
    EmptyWindow,
    Forbidden,
    IntegrityError,
    NotFound,
    Unauthorized,
)
from .lineage import (
    DECLARED,
    DETECTED,
    ComponentIndex,
    LineageEdge,
    LineageGraph,
    declared_parent,
    detect_candidates,
    lineage_tree,
    overlap,
)
from .participation import EventLog, EventRecord, classify, community_stats
from .repository import BlobStore, ProjectFileStore, RegistrationResult, StoredProject

logger = logging.getLogger(__name__)

ADMIN_USERNAME = "admin"


class MonotonicClock:
    """UTC wall clock that never repeats or goes backwards.

    Timestamps order uploads and events, so ties and regressions (clock
    skew, same-microsecond bursts) are bumped forward by one microsecond.
    """

    def __init__(self, floor: Optional[datetime] = None):
        self._last = floor or datetime(1970, 1, 1, tzinfo=timezone.utc)
        self._lock = threading.Lock()

    def observe(self, moment: datetime) -> None:
        with self._lock:
            if moment > self._last:
                self._last = moment

    def now(self) -> str:
        with self._lock:
            wall = datetime.now(timezone.utc)
            if wall <= self._last:
                wall = self._last + timedelta(microseconds=1)
            self._last = wall
            return format_timestamp(wall)


class Hub:
    """All platform state and operations over one data directory."""

    def __init__(self, data_dir: Union[str, Path], config: Optional[Config] = None):
        self.config = config or Config(data_dir=Path(data_dir))
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._check_writable()

        self.store = DocumentStore(self.data_dir / "store.db")
        self.blobs = BlobStore(self.data_dir / "blobs")
        self.files = ProjectFileStore(self.data_dir / "projects")

        self.community = Community()
        self.events = EventLog()
        self.graph = LineageGraph()
        self.index = ComponentIndex()
        self.projects: dict[int, StoredProject] = {}
        self.by_content_hash: dict[str, int] = {}
        self.components_by_id: dict[int, frozenset[str]] = {}
        self.next_project_id = 1
        self.clock = MonotonicClock()

        self._load()
        self._bootstrap_admin()

    # ------------------------------------------------------------------
    # startup
    # ------------------------------------------------------------------

    def _check_writable(self) -> None:
        probe = self.data_dir / ".write-probe"
        try:
            probe.write_bytes(b"")
            probe.unlink()
        except OSError as exc:
            raise DataDirUnwritable(f"{self.data_dir}: {exc}") from None

    def _load(self) -> None:
        for _, doc in self.store.iter_kind("user"):
            user = User.from_doc(doc)
            self.community.users[user.username] = user
            self.clock.observe(parse_timestamp(user.created_at))
        for _, doc in self.store.iter_kind("friend"):
            link = FriendLink.from_doc(doc)
            self.community.friends[(link.from_user, link.to_user)] = link
            self.clock.observe(parse_timestamp(link.created_at))
        for _, doc in self.store.iter_kind("tag"):
            tag = Tag.from_doc(doc)
            self.community.tags[(tag.project_id, tag.tagger, tag.label)] = tag
            self.clock.observe(parse_timestamp(tag.created_at))
        comments = [Comment.from_doc(doc) for _, doc in self.store.iter_kind("comment")]
        for comment in sorted(comments, key=lambda c: c.comment_id):
            self.community.comments.setdefault(comment.project_id, []).append(comment)
            self.community.next_comment_id = max(self.community.next_comment_id, comment.comment_id + 1)
            self.clock.observe(parse_timestamp(comment.created_at))
        for _, doc in self.store.iter_kind("rating"):
            rating = Rating.from_doc(doc)
            self.community.ratings.setdefault(rating.project_id, {})[rating.rater] = rating
            self.clock.observe(parse_timestamp(rating.created_at))
        for _, doc in self.store.iter_kind("gallery"):
            gallery = Gallery.from_doc(doc)
            self.community.galleries[gallery.gallery_id] = gallery
            self.community.next_gallery_id = max(self.community.next_gallery_id, gallery.gallery_id + 1)
            self.clock.observe(parse_timestamp(gallery.created_at))

        self.events.load(EventRecord.from_doc(doc) for _, doc in self.store.iter_kind("event"))
        if self.events.events:
            self.clock.observe(parse_timestamp(self.events.events[-1].at))

        metas = [StoredProject.from_doc(doc) for _, doc in self.store.iter_kind("project")]
        for meta in sorted(metas, key=lambda m: m.project_id):
            raw = self.files.read(meta.project_id)
            if sha256_hex(raw) != meta.canonical_bytes_ref:
                raise IntegrityError(f"project file {meta.project_id} does not match its recorded digest")
            project = container.parse_project(raw)
            if container.content_hash(project) != meta.content_hash:
                raise IntegrityError(f"project {meta.project_id} content hash drifted")
            self._admit_project(meta, project)
            self.clock.observe(parse_timestamp(meta.uploaded_at))

        for _, doc in self.store.iter_kind("edge"):
            self.graph.add(LineageEdge.from_doc(doc))

    def _admit_project(self, meta: StoredProject, project: Project) -> None:
        self.projects[meta.project_id] = meta
        self.by_content_hash[meta.content_hash] = meta.project_id
        components = container.component_set(project)
        self.components_by_id[meta.project_id] = components
        self.index.add_project(meta.project_id, components)
        self.next_project_id = max(self.next_project_id, meta.project_id + 1)

    def _bootstrap_admin(self) -> None:
        token = self.config.admin_token
        if not token:
            return
        existing = self.community.users.get(ADMIN_USERNAME)
        if existing is None:
            with self.store.transaction():
                user = self.community.create_user(
                    ADMIN_USERNAME, self._now(), is_admin=True, token=token
                )
                self.store.put("user", user.username, user.to_doc())
        elif existing.token != token:
            rotated = User(
                username=existing.username,
                created_at=existing.created_at,
                token=token,
                is_admin=True,
            )
            with self.store.transaction():
                self.community.users[ADMIN_USERNAME] = rotated
                self.store.put("user", rotated.username, rotated.to_doc())

    def close(self) -> None:
        self.store.close()

    # ------------------------------------------------------------------
    # time
    # ------------------------------------------------------------------

    def _now(self, now: Optional[str] = None) -> str:
        if now is not None:
            self.clock.observe(parse_timestamp(now))
            return now
        return self.clock.now()

    # ------------------------------------------------------------------
    # users & auth
    # ------------------------------------------------------------------

    def create_user(self, username: str, *, is_admin: bool = False,
                    now: Optional[str] = None) -> User:
        at = self._now(now)
        with self.store.transaction():
            user = self.community.create_user(username, at, is_admin=is_admin)
            self.store.put("user", user.username, user.to_doc())
        return user

    def authenticate(self, token: str) -> str:
        """Resolve a bearer token to a username, comparing in constant time."""
        if not token:
            raise Unauthorized("missing bearer token")
        match = None
        for user in self.community.users.values():
            if hmac.compare_digest(user.token, token):
                match = user.username
        if match is None:
            raise Unauthorized("unknown token")
        return match

    def user_profile(self, username: str) -> dict:
        user = self.community.require_user(username)
        end = parse_timestamp(self.clock.now())
        start = end - timedelta(days=self.config.participation_window_days)
        state = classify(self.events, set(self.community.users), username, start, end)
        return {
            "created_at": user.created_at,
            "followers": self.community.followers_of(username),
            "friends": self.community.friends_of(username),
            "is_admin": user.is_admin,
            "participation_state": state.value,
            "username": user.username,
        }

    def add_friend(self, from_user: str, to_user: str, now: Optional[str] = None) -> dict:
        at = self._now(now)
        with self.store.transaction():
            link, created = self.community.add_friend(from_user, to_user, at)
            if created:
                self.store.put("friend", f"{link.from_user}:{link.to_user}", link.to_doc())
                self._log_event(link.from_user, "friend", link.to_user, at)
        return link.to_doc()

    # ------------------------------------------------------------------
    # events
    # ------------------------------------------------------------------

    def _log_event(self, actor: str, kind: str, subject, at: str) -> EventRecord:
        record = self.events.append(actor, kind, subject, at)
        self.store.put("event", str(record.event_id), record.to_doc())
        return record

    def record_event(self, actor: str, kind: str, subject=None,
                     now: Optional[str] = None) -> EventRecord:
        """Append one event to the log; the log is never rewritten."""
        self.community.require_user(actor)
        at = self._now(now)
        with self.store.transaction():
            return self._log_event(actor, kind, subject, at)

    def export_event_log(self) -> str:
        return self.events.export_ndjson()

    # ------------------------------------------------------------------
    # projects: upload / download / metadata
    # ------------------------------------------------------------------

    def upload_project(self, data: bytes, uploader: str,
                       now: Optional[str] = None) -> dict:
        """Full upload ceremony: parse, register, resolve lineage, log.

        Byte-identical content cores deduplicate: the upload is logged but
        no new project node or lineage edge is created.
        """
        self.community.require_user(uploader)
        project = container.parse_project(data)
        chash = container.content_hash(project)
        at = self._now(now)

        existing = self.by_content_hash.get(chash)
        if existing is not None:
            with self.store.transaction():
                self._log_event(uploader, "upload", existing, at)
            return {
                "content_hash": chash,
                "detected": [],
                "duplicate_of": existing,
                "project_id": existing,
            }

        project_id = self.next_project_id
        ledger = project.provenance
        record = ProvenanceRecord(
            seq=ledger[-1].seq + 1 if ledger else 0,
            action="uploaded",
            actor=uploader,
            timestamp=self._ledger_safe_time(project, at),
            server=self.config.server_id,
            project_ref=project_id,
        )
        stored = container.append_provenance(project, record)
        stored_bytes = container.serialize_project(stored)

        parent = declared_parent(stored, lambda pid: pid in self.projects)
        if parent.unverified:
            logger.warning(
                "project %s uploaded by %s carries unverified provenance refs",
                project_id, uploader,
            )
        components = container.component_set(project)
        exclude = {parent.project_id} if parent.project_id is not None else set()
        detected = detect_candidates(
            components,
            self.index,
            lambda pid: self.components_by_id[pid],
            threshold=self.config.overlap_threshold,
            exclude=exclude,
        )

        with self.store.transaction():
            for asset in project.assets.values():
                self.blobs.store(asset.data)
            file_ref = self.files.write(project_id, stored_bytes)
            meta = StoredProject(
                project_id=project_id,
                content_hash=chash,
                title=project.title,
                author=project.author,
                uploaded_at=at,
                featured=False,
                canonical_bytes_ref=file_ref,
            )
            self.store.put("project", str(project_id), meta.to_doc())
            self._admit_project(meta, project)

            edges = []
            if parent.project_id is not None:
                edges.append(LineageEdge(
                    child=project_id,
                    parent=parent.project_id,
                    kind=DECLARED,
                    overlap=overlap(components, self.components_by_id[parent.project_id]),
                    created_at=at,
                ))
            for pid, fraction in detected:
                edges.append(LineageEdge(
                    child=project_id, parent=pid, kind=DETECTED,
                    overlap=fraction, created_at=at,
                ))
            for edge in edges:
                stored_edge, created = self.graph.add(edge)
                if created:
                    self.store.put(
                        "edge", f"{edge.child}:{edge.parent}:{edge.kind}", edge.to_doc()
                    )
            self._log_event(uploader, "upload", project_id, at)

        response = {
            "content_hash": chash,
            "detected": [{"id": pid, "overlap": fraction} for pid, fraction in detected],
            "project_id": project_id,
        }
        if parent.project_id is not None:
            response["based_on"] = parent.project_id
        return response

    @staticmethod
    def _ledger_safe_time(project: Project, at: str) -> str:
        """Never let a server-appended record regress behind the ledger."""
        if not project.provenance:
            return at
        last = parse_timestamp(project.provenance[-1].timestamp)
        return at if parse_timestamp(at) >= last else project.provenance[-1].timestamp

    def register_project(self, project: Project, uploader: str,
                         now: Optional[str] = None) -> RegistrationResult:
        """Library-level registration; serializes and runs the upload ceremony."""
        response = self.upload_project(container.serialize_project(project), uploader, now)
        return RegistrationResult(
            project_id=response["project_id"],
            content_hash=response["content_hash"],
            duplicate_of=response.get("duplicate_of"),
        )

    def get_project_meta(self, project_id) -> StoredProject:
        meta = self.projects.get(project_id) if isinstance(project_id, int) else None
        if meta is None:
            raise NotFound(f"no project {project_id}")
        return meta

    def fetch_project_file(self, project_id: int, requester: str,
                           now: Optional[str] = None) -> bytes:
        """Serve the stored file with a fresh "downloaded" ledger record.

        The stored copy never changes; only the served bytes carry the new
        record naming the requester.
        """
        self.get_project_meta(project_id)
        self.community.require_user(requester)
        raw = self.files.read(project_id)
        project = container.parse_project(raw)
        at = self._now(now)
        record = ProvenanceRecord(
            seq=project.provenance[-1].seq + 1 if project.provenance else 0,
            action="downloaded",
            actor=requester,
            timestamp=self._ledger_safe_time(project, at),
            server=self.config.server_id,
            project_ref=project_id,
        )
        served = container.append_provenance(project, record)
        with self.store.transaction():
            self._log_event(requester, "download", project_id, at)
        return container.serialize_project(served)

    def record_view(self, project_id: int, viewer: str,
                    now: Optional[str] = None) -> None:
        self.get_project_meta(project_id)
        self.community.require_user(viewer)
        at = self._now(now)
        with self.store.transaction():
            self._log_event(viewer, "view", project_id, at)

    def feature_project(self, project_id: int, actor: str, featured: bool = True) -> StoredProject:
        meta = self.get_project_meta(project_id)
        user = self.community.require_user(actor)
        if not user.is_admin:
            raise Forbidden(f"{actor!r} is not an admin")
        updated = StoredProject(
            project_id=meta.project_id,
            content_hash=meta.content_hash,
            title=meta.title,
            author=meta.author,
            uploaded_at=meta.uploaded_at,
            featured=featured,
            canonical_bytes_ref=meta.canonical_bytes_ref,
        )
        with self.store.transaction():
            self.store.put("project", str(project_id), updated.to_doc())
            self.projects[project_id] = updated
        return updated

    # ------------------------------------------------------------------
    # community actions on projects
    # ------------------------------------------------------------------

    def tag_project(self, project_id: int, tagger: str, label: str,
                    now: Optional[str] = None) -> dict:
        self.get_project_meta(project_id)
        at = self._now(now)
        with self.store.transaction():
            tag, created = self.community.add_tag(project_id, tagger, label, at)
            if created:
                self.store.put("tag", f"{project_id}:{tagger}:{label}", tag.to_doc())
                self._log_event(tagger, "tag", project_id, at)
        return tag.to_doc()

    def comment_project(self, project_id: int, author: str, text: str,
                        now: Optional[str] = None) -> dict:
        self.get_project_meta(project_id)
        at = self._now(now)
        with self.store.transaction():
            comment = self.community.add_comment(project_id, author, text, at)
            self.store.put("comment", str(comment.comment_id), comment.to_doc())
            self._log_event(author, "comment", project_id, at)
        return comment.to_doc()

    def rate_project(self, project_id: int, rater: str, stars: int,
                     now: Optional[str] = None) -> dict:
        self.get_project_meta(project_id)
        at = self._now(now)
        with self.store.transaction():
            rating = self.community.rate(project_id, rater, stars, at)
            self.store.put("rating", f"{project_id}:{rater}", rating.to_doc())
            self._log_event(rater, "rate", project_id, at)
        return rating.to_doc()

    def create_gallery(self, name: str, owner: str, now: Optional[str] = None) -> dict:
        at = self._now(now)
        with self.store.transaction():
            gallery = self.community.create_gallery(name, owner, at)
            self.store.put("gallery", str(gallery.gallery_id), gallery.to_doc())
        return gallery.to_doc()

    def add_to_gallery(self, gallery_id: int, project_id: int, actor: str,
                       now: Optional[str] = None) -> dict:
        self.get_project_meta(project_id)
        at = self._now(now)
        with self.store.transaction():
            gallery, added = self.community.add_to_gallery(gallery_id, project_id, actor)
            if added:
                self.store.put("gallery", str(gallery.gallery_id), gallery.to_doc())
                self._log_event(actor, "gallery_add", project_id, at)
        return gallery.to_doc()

    # ------------------------------------------------------------------
    # queries
    # ------------------------------------------------------------------

    def _project_ref_doc(self, project_id: int) -> dict:
        meta = self.projects[project_id]
        return {"author": meta.author, "project_id": project_id, "title": meta.title}

    def project_summary(self, project_id: int) -> dict:
        """Everything a project page shows, assembled from committed state."""
        meta = self.get_project_meta(project_id)
        declared = self.graph.declared_parent_id(project_id)
        summary = {
            "author": meta.author,
            "based_on": self._project_ref_doc(declared) if declared is not None else None,
            "comments": [c.to_doc() for c in self.community.comments_for(project_id)],
            "download_count": self.events.count_for_project("download", project_id),
            "galleries": [
                {"gallery_id": g.gallery_id, "name": g.name}
                for g in self.community.galleries_containing(project_id)
            ],
            "rating_count": self.community.rating_count(project_id),
            "remix_count": self.graph.remix_count(project_id),
            "reuses": [
                {
                    "author": self.projects[e.parent].author,
                    "overlap": e.overlap,
                    "project_id": e.parent,
                    "title": self.projects[e.parent].title,
                }
                for e in self.graph.detected_parents(project_id)
            ],
            "tags": self.community.labels_for(project_id),
            "title": meta.title,
            "uploaded_at": meta.uploaded_at,
            "view_count": self.events.count_for_project("view", project_id),
        }
        mean = self.community.rating_mean(project_id)
        if mean is not None:
            summary["rating_mean"] = format_mean(mean)
        return summary

    def front_page(self, limit: Optional[int] = None) -> dict:
        """The four discovery lists; every tie breaks by ascending id."""
        n = limit or self.config.front_page_size
        metas = sorted(self.projects.values(), key=lambda m: m.project_id)

        def brief(meta: StoredProject, **extra) -> dict:
            doc = {"author": meta.author, "project_id": meta.project_id, "title": meta.title}
            doc.update(extra)
            return doc

        newest = sorted(metas, key=lambda m: parse_timestamp(m.uploaded_at), reverse=True)
        rated = [m for m in metas if self.community.rating_count(m.project_id) > 0]
        top_rated = sorted(
            rated, key=lambda m: self.community.rating_mean(m.project_id), reverse=True
        )
        most_remixed = sorted(
            metas, key=lambda m: self.graph.remix_count(m.project_id), reverse=True
        )
        featured = sorted(
            (m for m in metas if m.featured),
            key=lambda m: parse_timestamp(m.uploaded_at),
            reverse=True,
        )
        return {
            "featured": [brief(m, uploaded_at=m.uploaded_at) for m in featured[:n]],
            "most_remixed": [
                brief(m, remix_count=self.graph.remix_count(m.project_id))
                for m in most_remixed[:n]
            ],
            "newest": [brief(m, uploaded_at=m.uploaded_at) for m in newest[:n]],
            "top_rated": [
                brief(
                    m,
                    rating_count=self.community.rating_count(m.project_id),
                    rating_mean=format_mean(self.community.rating_mean(m.project_id)),
                )
                for m in top_rated[:n]
            ],
        }

    def lineage_tree(self, project_id: int, depth: int, direction: str) -> dict:
        return lineage_tree(
            self.graph,
            project_id,
            depth,
            direction,
            describe=lambda pid: {"title": self.projects[pid].title,
                                  "author": self.projects[pid].author},
            exists=lambda pid: pid in self.projects,
        )

    def classify_user(self, username: str, start: datetime, end: datetime):
        return classify(self.events, set(self.community.users), username, start, end)

    def stats(self, window_days: Optional[int] = None,
              now: Optional[str] = None) -> dict:
        days = self.config.participation_window_days if window_days is None else window_days
        if days < 1:
            raise EmptyWindow("window_days must be at least 1")
        end = parse_timestamp(now) if now else parse_timestamp(self.clock.now())
        start = end - timedelta(days=days)
        result = community_stats(self.events, self.community.users, start, end)
        result["window_days"] = days
        return result
