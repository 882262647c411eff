"""Exception hierarchy with stable, machine-readable error codes.

Every error surfaced through the HTTP API is one of these classes; the
class-level ``code`` string is what clients see in the JSON error body,
so the names here are part of the wire contract and must not change.
"""

from __future__ import annotations


class RemixHubError(Exception):
    """Base class for all platform errors."""

    code = "InternalError"
    http_status = 500

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)
        self.message = message or self.code


# --- container / file format ------------------------------------------------

class MalformedSyntax(RemixHubError):
    """Input is not a UTF-8 JSON document."""
    code = "MalformedSyntax"
    http_status = 400


class SchemaViolation(RemixHubError):
    """Document parses but breaks the container schema (fields, types, enums)."""
    code = "SchemaViolation"
    http_status = 400


class IntegrityError(RemixHubError):
    """Content-addressing broken: digest mismatch, bad base64, dangling ref."""
    code = "IntegrityError"
    http_status = 400


class VersionUnsupported(RemixHubError):
    """format_version is not the pinned value."""
    code = "VersionUnsupported"
    http_status = 400


class ValidationFailed(RemixHubError):
    """An in-memory project violates container invariants."""
    code = "ValidationFailed"
    http_status = 400

    def __init__(self, message: str = "", violations=None):
        super().__init__(message)
        self.violations = list(violations or [])


class EmptyScript(RemixHubError):
    code = "EmptyScript"
    http_status = 400


class SeqGap(RemixHubError):
    """Provenance record sequence number is not the successor of the last."""
    code = "SeqGap"
    http_status = 400


class TimestampRegression(RemixHubError):
    """Timestamp earlier than the one it must follow."""
    code = "TimestampRegression"
    http_status = 400


# --- storage ------------------------------------------------------------------

class EmptyBlob(RemixHubError):
    code = "EmptyBlob"
    http_status = 400


class StorageFailure(RemixHubError):
    code = "StorageFailure"
    http_status = 500


class NotFound(RemixHubError):
    code = "NotFound"
    http_status = 404


# --- lineage -------------------------------------------------------------------

class SelfEdge(RemixHubError):
    code = "SelfEdge"
    http_status = 400


class TemporalViolation(RemixHubError):
    """Lineage edge would point from an earlier upload to a later one."""
    code = "TemporalViolation"
    http_status = 400


# --- community -----------------------------------------------------------------

class UnknownUser(RemixHubError):
    code = "UnknownUser"
    http_status = 404


class InvalidUsername(RemixHubError):
    code = "InvalidUsername"
    http_status = 400


class DuplicateUsername(RemixHubError):
    code = "DuplicateUsername"
    http_status = 409


class SelfFriend(RemixHubError):
    code = "SelfFriend"
    http_status = 400


class InvalidLabel(RemixHubError):
    code = "InvalidLabel"
    http_status = 400


class EmptyText(RemixHubError):
    code = "EmptyText"
    http_status = 400


class TextTooLong(RemixHubError):
    code = "TextTooLong"
    http_status = 400


class StarsOutOfRange(RemixHubError):
    code = "StarsOutOfRange"
    http_status = 400


class Forbidden(RemixHubError):
    code = "Forbidden"
    http_status = 403


# --- participation ----------------------------------------------------------------

class EmptyWindow(RemixHubError):
    """Time window with start >= end."""
    code = "EmptyWindow"
    http_status = 400


# --- service -----------------------------------------------------------------------

class Unauthorized(RemixHubError):
    code = "Unauthorized"
    http_status = 401


class BindFailure(RemixHubError):
    code = "BindFailure"
    http_status = 500


class DataDirUnwritable(RemixHubError):
    code = "DataDirUnwritable"
    http_status = 500


class ConfigError(RemixHubError):
    code = "ConfigError"
    http_status = 500
