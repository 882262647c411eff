"""remixhub: a sharing platform for programmable media.

Projects are self-describing container files with an embedded provenance
ledger; the server stores them content-addressed, tracks remix lineage
(declared plus detected appropriation), hosts social metadata, and
classifies members into four participation states.
"""

from .canonical import canonical_bytes, canonical_dumps, canonical_hash, sha256_hex
from .config import Config, load_config
from .container import (
    Asset,
    Block,
    Project,
    ProvenanceRecord,
    Script,
    Sprite,
    Violation,
    append_provenance,
    component_set,
    content_hash,
    make_asset,
    normalize_project,
    parse_project,
    script_hash,
    serialize_project,
    validate,
)
from .lineage import (
    ComponentIndex,
    LineageEdge,
    declared_parent,
    detect_candidates,
    overlap,
)
from .participation import EventRecord, ParticipationState, classify, community_stats
from .platform import Hub
from .repository import BlobStore, RegistrationResult, StoredProject

__version__ = "0.1.0"

__all__ = [
    "Asset",
    "Block",
    "BlobStore",
    "ComponentIndex",
    "Config",
    "EventRecord",
    "Hub",
    "LineageEdge",
    "ParticipationState",
    "Project",
    "ProvenanceRecord",
    "RegistrationResult",
    "Script",
    "Sprite",
    "StoredProject",
    "Violation",
    "append_provenance",
    "canonical_bytes",
    "canonical_dumps",
    "canonical_hash",
    "classify",
    "community_stats",
    "component_set",
    "content_hash",
    "declared_parent",
    "detect_candidates",
    "load_config",
    "make_asset",
    "normalize_project",
    "overlap",
    "parse_project",
    "script_hash",
    "serialize_project",
    "sha256_hex",
    "validate",
]
