"""Creative-appropriation graph: who remixed what, declared and detected.

Two edge mechanisms feed the graph. Declared edges come from the
provenance ledger inside an uploaded file (the latest verifiable
"downloaded" record names the parent). Detected edges come from
component containment: when enough of a new project's assets and scripts
already exist in an earlier one, that reuse is recorded even without a
ledger trail.

Edges always point from a later upload (child) to a strictly earlier one
(parent), so the graph is a DAG by construction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .container import Project
from .errors import NotFound, SelfEdge, TemporalViolation

DECLARED = "declared"
DETECTED = "detected"

DEFAULT_OVERLAP_THRESHOLD = 0.25


@dataclass(frozen=True)
class LineageEdge:
    child: int
    parent: int
    kind: str  # declared | detected
    overlap: float
    created_at: str

    def to_doc(self) -> dict:
        return {
            "child": self.child,
            "created_at": self.created_at,
            "kind": self.kind,
            "overlap": self.overlap,
            "parent": self.parent,
        }

    @staticmethod
    def from_doc(doc: dict) -> "LineageEdge":
        return LineageEdge(
            child=doc["child"],
            parent=doc["parent"],
            kind=doc["kind"],
            overlap=doc["overlap"],
            created_at=doc["created_at"],
        )


@dataclass
class DeclaredParent:
    """Result of scanning a ledger: the verified parent, if any.

    ``unverified`` is set when the ledger claims downloads of project ids
    this server has never registered; such uploads are flagged, not
    rejected.
    """

    project_id: Optional[int]
    unverified: bool = False


def declared_parent(project: Project, is_registered: Callable[[int], bool]) -> DeclaredParent:
    """Resolve the declared parent from the ledger, latest record first.

    Scans backwards for a "downloaded" record whose project_ref is a
    registered project; refs to unknown ids are skipped but flag the
    result as unverified provenance.
    """
    unverified = False
    for record in reversed(project.provenance):
        if record.action != "downloaded" or record.project_ref is None:
            continue
        if is_registered(record.project_ref):
            return DeclaredParent(record.project_ref, unverified)
        unverified = True
    return DeclaredParent(None, unverified)


def overlap(p: frozenset[str] | set[str], q: frozenset[str] | set[str]) -> float:
    """Directional containment: the fraction of child p drawn from q.

    Directional rather than Jaccard so that a small remix of a big
    project still attributes strongly to it. Empty p yields 0.
    """
    if not p:
        return 0.0
    return len(p & q) / len(p)


class ComponentIndex:
    """Inverted index digest -> project ids containing that component."""

    def __init__(self):
        self._by_component: dict[str, set[int]] = {}

    def add_project(self, project_id: int, components: Iterable[str]) -> None:
        for digest in components:
            self._by_component.setdefault(digest, set()).add(project_id)

    def projects_sharing(self, components: Iterable[str]) -> set[int]:
        hits: set[int] = set()
        for digest in components:
            hits |= self._by_component.get(digest, set())
        return hits

    def projects_with(self, digest: str) -> frozenset[int]:
        return frozenset(self._by_component.get(digest, set()))


def detect_candidates(
    child_components: frozenset[str] | set[str],
    index: ComponentIndex,
    components_of: Callable[[int], frozenset[str]],
    *,
    threshold: float = DEFAULT_OVERLAP_THRESHOLD,
    exclude: frozenset[int] | set[int] = frozenset(),
) -> list[tuple[int, float]]:
    """Earlier projects whose content the child visibly reuses.

    Every indexed project sharing at least one component is scored with
    directional overlap; candidates at or above the threshold come back
    sorted by fraction descending, ties broken by smaller project id.
    """
    results: list[tuple[int, float]] = []
    for pid in index.projects_sharing(child_components):
        if pid in exclude:
            continue
        fraction = overlap(child_components, components_of(pid))
        if fraction >= threshold:
            results.append((pid, fraction))
    results.sort(key=lambda item: (-item[1], item[0]))
    return results


class LineageGraph:
    """Append-only edge set with parent/child adjacency."""

    def __init__(self):
        self._edges: dict[tuple[int, int, str], LineageEdge] = {}
        self._parents_of: dict[int, list[LineageEdge]] = {}
        self._children_of: dict[int, list[LineageEdge]] = {}

    def __len__(self) -> int:
        return len(self._edges)

    def edges(self) -> list[LineageEdge]:
        return sorted(self._edges.values(), key=lambda e: (e.child, e.parent, e.kind))

    def get(self, child: int, parent: int, kind: str) -> Optional[LineageEdge]:
        return self._edges.get((child, parent, kind))

    def add(self, edge: LineageEdge) -> tuple[LineageEdge, bool]:
        """Insert an edge; idempotent per (child, parent, kind).

        Self-edges are rejected, as are edges whose parent was registered
        after the child (ids are assigned in upload order, so id ordering
        is upload ordering).
        """
        if edge.child == edge.parent:
            raise SelfEdge(f"project {edge.child} cannot remix itself")
        if edge.parent > edge.child:
            raise TemporalViolation(
                f"parent {edge.parent} was uploaded after child {edge.child}"
            )
        key = (edge.child, edge.parent, edge.kind)
        existing = self._edges.get(key)
        if existing is not None:
            return existing, False
        self._edges[key] = edge
        self._parents_of.setdefault(edge.child, []).append(edge)
        self._children_of.setdefault(edge.parent, []).append(edge)
        return edge, True

    def _ordered(self, edges: list[LineageEdge], endpoint) -> list[LineageEdge]:
        # declared before detected, then ascending project id
        return sorted(edges, key=lambda e: (0 if e.kind == DECLARED else 1, endpoint(e)))

    def parent_edges(self, project_id: int) -> list[LineageEdge]:
        return self._ordered(self._parents_of.get(project_id, []), lambda e: e.parent)

    def child_edges(self, project_id: int) -> list[LineageEdge]:
        return self._ordered(self._children_of.get(project_id, []), lambda e: e.child)

    def declared_parent_id(self, project_id: int) -> Optional[int]:
        for edge in self.parent_edges(project_id):
            if edge.kind == DECLARED:
                return edge.parent
        return None

    def detected_parents(self, project_id: int) -> list[LineageEdge]:
        edges = [e for e in self._parents_of.get(project_id, []) if e.kind == DETECTED]
        return sorted(edges, key=lambda e: (-e.overlap, e.parent))

    def remix_count(self, project_id: int) -> int:
        """Distinct children over declared edges only.

        Detected edges are excluded so tuning the detection threshold can
        never retroactively change rankings.
        """
        return len(
            {e.child for e in self._children_of.get(project_id, []) if e.kind == DECLARED}
        )


def lineage_tree(
    graph: LineageGraph,
    project_id: int,
    depth: int,
    direction: str,
    describe: Callable[[int], dict],
    exists: Callable[[int], bool],
) -> dict:
    """Breadth-first expansion of ancestors or descendants as a nested tree.

    Each node is visited once; the queried project is the tree root with
    no edge annotation. ``describe`` supplies {title, author} per id.
    """
    if not exists(project_id):
        raise NotFound(f"no project {project_id}")
    if direction not in ("ancestors", "descendants"):
        raise ValueError(f"direction must be ancestors or descendants, got {direction!r}")
    if depth < 1:
        raise ValueError("depth must be a positive integer")

    def node_for(pid: int, kind: Optional[str], frac: Optional[float]) -> dict:
        meta = describe(pid)
        return {
            "author": meta["author"],
            "children": [],
            "kind": kind,
            "overlap": frac,
            "project_id": pid,
            "title": meta["title"],
        }

    root = node_for(project_id, None, None)
    visited = {project_id}
    queue: deque[tuple[dict, int]] = deque([(root, 0)])
    while queue:
        node, level = queue.popleft()
        if level >= depth:
            continue
        pid = node["project_id"]
        edges = graph.parent_edges(pid) if direction == "ancestors" else graph.child_edges(pid)
        for edge in edges:
            neighbor = edge.parent if direction == "ancestors" else edge.child
            if neighbor in visited:
                continue
            visited.add(neighbor)
            child_node = node_for(neighbor, edge.kind, edge.overlap)
            node["children"].append(child_node)
            queue.append((child_node, level + 1))
    return root
