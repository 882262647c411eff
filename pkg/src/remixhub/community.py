"""Members and their social actions around stored projects.

Covers friendship links (directed, follower-style), tags, comments,
ratings (1-5 stars, per-user upsert), galleries (owner-curated ordered
collections), per-project summaries, and the four front-page discovery
lists. State lives in memory, mirrored to the document store by the
platform layer; every method validates before it mutates.
"""

from __future__ import annotations

import re
import secrets
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from typing import Optional

from .container import USERNAME_RE
from .errors import (
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

LABEL_RE = re.compile(r"^[a-z0-9_]{1,24}$")
MAX_COMMENT_CHARS = 2000


@dataclass(frozen=True)
class User:
    username: str
    created_at: str
    token: str
    is_admin: bool = False

    def to_doc(self) -> dict:
        return {
            "created_at": self.created_at,
            "is_admin": self.is_admin,
            "token": self.token,
            "username": self.username,
        }

    @staticmethod
    def from_doc(doc: dict) -> "User":
        return User(
            username=doc["username"],
            created_at=doc["created_at"],
            token=doc["token"],
            is_admin=doc["is_admin"],
        )


@dataclass(frozen=True)
class FriendLink:
    from_user: str
    to_user: str
    created_at: str

    def to_doc(self) -> dict:
        return {"created_at": self.created_at, "from": self.from_user, "to": self.to_user}

    @staticmethod
    def from_doc(doc: dict) -> "FriendLink":
        return FriendLink(from_user=doc["from"], to_user=doc["to"], created_at=doc["created_at"])


@dataclass(frozen=True)
class Tag:
    project_id: int
    tagger: str
    label: str
    created_at: str

    def to_doc(self) -> dict:
        return {
            "created_at": self.created_at,
            "label": self.label,
            "project_id": self.project_id,
            "tagger": self.tagger,
        }

    @staticmethod
    def from_doc(doc: dict) -> "Tag":
        return Tag(
            project_id=doc["project_id"],
            tagger=doc["tagger"],
            label=doc["label"],
            created_at=doc["created_at"],
        )


@dataclass(frozen=True)
class Comment:
    comment_id: int
    project_id: int
    author: str
    text: str
    created_at: str

    def to_doc(self) -> dict:
        return {
            "author": self.author,
            "comment_id": self.comment_id,
            "created_at": self.created_at,
            "project_id": self.project_id,
            "text": self.text,
        }

    @staticmethod
    def from_doc(doc: dict) -> "Comment":
        return Comment(
            comment_id=doc["comment_id"],
            project_id=doc["project_id"],
            author=doc["author"],
            text=doc["text"],
            created_at=doc["created_at"],
        )


@dataclass(frozen=True)
class Rating:
    project_id: int
    rater: str
    stars: int
    created_at: str

    def to_doc(self) -> dict:
        return {
            "created_at": self.created_at,
            "project_id": self.project_id,
            "rater": self.rater,
            "stars": self.stars,
        }

    @staticmethod
    def from_doc(doc: dict) -> "Rating":
        return Rating(
            project_id=doc["project_id"],
            rater=doc["rater"],
            stars=doc["stars"],
            created_at=doc["created_at"],
        )


@dataclass
class Gallery:
    gallery_id: int
    name: str
    owner: str
    created_at: str
    projects: list[int]

    def to_doc(self) -> dict:
        return {
            "created_at": self.created_at,
            "gallery_id": self.gallery_id,
            "name": self.name,
            "owner": self.owner,
            "projects": list(self.projects),
        }

    @staticmethod
    def from_doc(doc: dict) -> "Gallery":
        return Gallery(
            gallery_id=doc["gallery_id"],
            name=doc["name"],
            owner=doc["owner"],
            created_at=doc["created_at"],
            projects=list(doc["projects"]),
        )


def format_mean(mean: Fraction) -> str:
    """Exact rational mean rendered to two decimals (half-up)."""
    value = Decimal(mean.numerator) / Decimal(mean.denominator)
    return str(value.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


class Community:
    """In-memory social state with validating mutators."""

    def __init__(self):
        self.users: dict[str, User] = {}
        self.friends: dict[tuple[str, str], FriendLink] = {}
        self.tags: dict[tuple[int, str, str], Tag] = {}
        self.comments: dict[int, list[Comment]] = {}
        self.next_comment_id = 1
        self.ratings: dict[int, dict[str, Rating]] = {}
        self.galleries: dict[int, Gallery] = {}
        self.next_gallery_id = 1

    # -- users ---------------------------------------------------------

    def require_user(self, username: str) -> User:
        user = self.users.get(username)
        if user is None:
            raise UnknownUser(f"no user {username!r}")
        return user

    def create_user(self, username: str, created_at: str, *, is_admin: bool = False,
                    token: Optional[str] = None) -> User:
        if type(username) is not str or not USERNAME_RE.match(username):
            raise InvalidUsername(f"{username!r} must match [a-z0-9_]{{1,32}}")
        if username in self.users:
            raise DuplicateUsername(f"{username!r} is taken")
        user = User(
            username=username,
            created_at=created_at,
            token=token or secrets.token_hex(16),
            is_admin=is_admin,
        )
        self.users[username] = user
        return user

    # -- friendship ------------------------------------------------------

    def add_friend(self, from_user: str, to_user: str, created_at: str) -> tuple[FriendLink, bool]:
        self.require_user(from_user)
        self.require_user(to_user)
        if from_user == to_user:
            raise SelfFriend(f"{from_user!r} cannot friend themselves")
        key = (from_user, to_user)
        if key in self.friends:
            return self.friends[key], False
        link = FriendLink(from_user=from_user, to_user=to_user, created_at=created_at)
        self.friends[key] = link
        return link, True

    def friends_of(self, username: str) -> list[str]:
        return sorted(to for (frm, to) in self.friends if frm == username)

    def followers_of(self, username: str) -> list[str]:
        return sorted(frm for (frm, to) in self.friends if to == username)

    # -- tags -----------------------------------------------------------

    def add_tag(self, project_id: int, tagger: str, label: str, created_at: str) -> tuple[Tag, bool]:
        self.require_user(tagger)
        if type(label) is not str or not LABEL_RE.match(label):
            raise InvalidLabel(f"{label!r} must match [a-z0-9_]{{1,24}}")
        key = (project_id, tagger, label)
        if key in self.tags:
            return self.tags[key], False
        tag = Tag(project_id=project_id, tagger=tagger, label=label, created_at=created_at)
        self.tags[key] = tag
        return tag, True

    def labels_for(self, project_id: int) -> list[str]:
        return sorted({label for (pid, _, label) in self.tags if pid == project_id})

    # -- comments ----------------------------------------------------------

    def add_comment(self, project_id: int, author: str, text: str, created_at: str) -> Comment:
        self.require_user(author)
        if type(text) is not str:
            raise EmptyText("comment text must be a string")
        trimmed = text.strip()
        if not trimmed:
            raise EmptyText("comment text is empty after trimming")
        if len(trimmed) > MAX_COMMENT_CHARS:
            raise TextTooLong(f"comment exceeds {MAX_COMMENT_CHARS} characters")
        comment = Comment(
            comment_id=self.next_comment_id,
            project_id=project_id,
            author=author,
            text=trimmed,
            created_at=created_at,
        )
        self.next_comment_id += 1
        self.comments.setdefault(project_id, []).append(comment)
        return comment

    def comments_for(self, project_id: int) -> list[Comment]:
        return sorted(self.comments.get(project_id, []), key=lambda c: c.comment_id)

    # -- ratings ------------------------------------------------------------

    def rate(self, project_id: int, rater: str, stars: int, created_at: str) -> Rating:
        self.require_user(rater)
        if type(stars) is not int or not 1 <= stars <= 5:
            raise StarsOutOfRange(f"stars must be an integer in 1..5, got {stars!r}")
        rating = Rating(project_id=project_id, rater=rater, stars=stars, created_at=created_at)
        self.ratings.setdefault(project_id, {})[rater] = rating
        return rating

    def rating_mean(self, project_id: int) -> Optional[Fraction]:
        """Exact mean of the current (post-upsert) ratings, or None."""
        current = self.ratings.get(project_id, {})
        if not current:
            return None
        return Fraction(sum(r.stars for r in current.values()), len(current))

    def rating_count(self, project_id: int) -> int:
        return len(self.ratings.get(project_id, {}))

    # -- galleries -----------------------------------------------------------

    def create_gallery(self, name: str, owner: str, created_at: str) -> Gallery:
        self.require_user(owner)
        if type(name) is not str or not name.strip():
            raise EmptyText("gallery name is empty")
        gallery = Gallery(
            gallery_id=self.next_gallery_id,
            name=name.strip(),
            owner=owner,
            created_at=created_at,
            projects=[],
        )
        self.next_gallery_id += 1
        self.galleries[gallery.gallery_id] = gallery
        return gallery

    def require_gallery(self, gallery_id: int) -> Gallery:
        gallery = self.galleries.get(gallery_id)
        if gallery is None:
            raise NotFound(f"no gallery {gallery_id}")
        return gallery

    def add_to_gallery(self, gallery_id: int, project_id: int, actor: str) -> tuple[Gallery, bool]:
        gallery = self.require_gallery(gallery_id)
        user = self.require_user(actor)
        if actor != gallery.owner and not user.is_admin:
            raise Forbidden(f"{actor!r} does not own gallery {gallery_id}")
        if project_id in gallery.projects:
            return gallery, False
        gallery.projects.append(project_id)
        return gallery, True

    def galleries_containing(self, project_id: int) -> list[Gallery]:
        return sorted(
            (g for g in self.galleries.values() if project_id in g.projects),
            key=lambda g: g.gallery_id,
        )
