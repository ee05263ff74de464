"""Embedded polygon-document graph with journaled persistence.

Node kinds: Polygon, Document, RestrictionClass. Edge kinds: a polygon
HasDocument a document, a document Restricts a restriction class (one edge
per extracted sentence, carrying its text and validity period), and two
polygons that overlap are connected once with the intersection area stored
on the edge.

Persistence is an append-only JSON-lines journal. Every mutation is fully
computed and validated, written to the journal, and only then applied to
the in-memory graph, so a failure at any point leaves the store untouched.
Mutations are serialized through one writer lock; reads take the same lock
briefly and never observe a partially applied batch.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path

from . import geometry
from .extraction import RestrictionRef, TemporalExtent
from .geometry import BoundingBox, GeoPolygon
from .spatial import RTree

WORLD_BBOX = BoundingBox(-180.0, -90.0, 180.0, 90.0)


class StoreError(Exception):
    pass


class NotFoundError(StoreError):
    pass


class DuplicateIdError(StoreError):
    pass


class JournalError(StoreError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"journal line {line_no}: {message}")
        self.line_no = line_no


class NodeKind(str, Enum):
    POLYGON = "Polygon"
    DOCUMENT = "Document"
    RESTRICTION_CLASS = "RestrictionClass"


class EdgeKind(str, Enum):
    HAS_DOCUMENT = "HasDocument"
    OVERLAPS = "Overlaps"
    RESTRICTS = "Restricts"


@dataclass(frozen=True)
class Document:
    id: str
    title: str
    text: str
    source_path: str = ""
    ingested_at: str = ""

    def __post_init__(self):
        if not self.text.strip():
            raise StoreError(f"document {self.id!r} has empty text")

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "title": self.title,
            "text": self.text,
            "sourcePath": self.source_path,
            "ingestedAt": self.ingested_at,
        }

    @staticmethod
    def from_json(obj: dict) -> "Document":
        return Document(
            id=obj["id"],
            title=obj["title"],
            text=obj["text"],
            source_path=obj.get("sourcePath", ""),
            ingested_at=obj.get("ingestedAt", ""),
        )


@dataclass
class NodeRecord:
    id: str
    kind: NodeKind
    payload: dict


@dataclass
class EdgeRecord:
    id: str
    kind: EdgeKind
    from_id: str
    to_id: str
    attributes: dict = field(default_factory=dict)


@dataclass
class DocumentRefs:
    document: Document
    refs: list[RestrictionRef]


@dataclass
class OverlapEntry:
    polygon: GeoPolygon
    area_m2: float
    documents: list[DocumentRefs]


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


class GraphStore:
    """Single-writer, multi-reader graph store.

    ``journal_path=None`` keeps everything in memory (handy for tests and
    scratch work); otherwise every mutation is appended to the journal
    before it becomes visible.
    """

    def __init__(
        self,
        journal_path: str | Path | None = None,
        overlap_epsilon_m2: float = geometry.OVERLAP_AREA_EPSILON_M2,
    ):
        self._lock = threading.RLock()
        self.overlap_epsilon_m2 = overlap_epsilon_m2
        self.nodes: dict[str, NodeRecord] = {}
        self.edges: dict[str, EdgeRecord] = {}
        self._out: dict[str, list[str]] = {}
        self._in: dict[str, list[str]] = {}
        self._rtree = RTree()
        self._edge_seq = 0
        self._journal_path = Path(journal_path) if journal_path else None
        self._journal_file = None
        if self._journal_path is not None:
            if self._journal_path.exists():
                self._replay(self._journal_path)
            self._journal_file = open(self._journal_path, "a", encoding="utf-8")

    # -- lifecycle ---------------------------------------------------------

    @staticmethod
    def open(path: str | Path) -> "GraphStore":
        return GraphStore(journal_path=path)

    def close(self) -> None:
        with self._lock:
            if self._journal_file is not None:
                self._journal_file.close()
                self._journal_file = None

    def __enter__(self) -> "GraphStore":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def _replay(self, path: Path) -> None:
        with open(path, "r", encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                stripped = line.strip()
                if not stripped:
                    continue
                if not line.endswith("\n"):
                    raise JournalError(line_no, "truncated line (no newline)")
                try:
                    record = json.loads(stripped)
                except json.JSONDecodeError as exc:
                    raise JournalError(line_no, f"invalid JSON: {exc}") from exc
                try:
                    self._apply(record["op"], record["data"])
                except JournalError:
                    raise
                except Exception as exc:
                    raise JournalError(line_no, f"cannot apply {record.get('op')!r}: {exc}") from exc

    def _commit(self, op: str, data: dict) -> None:
        """Write the op to the journal, then apply it. Never applies on a
        failed write."""
        line = json.dumps({"op": op, "ts": _now(), "data": data}, ensure_ascii=False)
        if self._journal_file is not None:
            self._journal_file.write(line + "\n")
            self._journal_file.flush()
        self._apply(op, data)

    # -- mutation ----------------------------------------------------------

    def insert_polygon(self, polygon: GeoPolygon, name: str | None = None):
        """Persist a polygon and connect it to everything it overlaps.

        Returns ``(polygon_id, created_overlap_edges)``.
        """
        with self._lock:
            if polygon.id in self.nodes:
                raise DuplicateIdError(f"node id {polygon.id!r} already exists")
            box = polygon.bounding_box()
            overlaps = []
            for other_id in sorted(self._rtree.search(box.as_tuple())):
                other = self.polygon(other_id)
                area = geometry.overlap_area(polygon, other)
                if area > self.overlap_epsilon_m2:
                    overlaps.append({"with": other_id, "area": area})
            data = {"polygon": polygon.to_json(), "name": name, "overlaps": overlaps}
            before = self._edge_seq
            self._commit("insertPolygon", data)
            created = [
                self.edges[f"e{seq}"] for seq in range(before + 1, self._edge_seq + 1)
            ]
            return polygon.id, created

    def attach_document(
        self, polygon_ids: list[str], doc: Document, refs: list[RestrictionRef]
    ) -> str:
        with self._lock:
            if doc.id in self.nodes:
                raise DuplicateIdError(f"node id {doc.id!r} already exists")
            if not polygon_ids:
                raise StoreError("a document must be attached to at least one polygon")
            for pid in polygon_ids:
                node = self.nodes.get(pid)
                if node is None or node.kind is not NodeKind.POLYGON:
                    raise NotFoundError(f"polygon {pid!r} does not exist")
            data = {
                "document": doc.to_json(),
                "polygonIds": list(polygon_ids),
                "refs": [r.to_json() for r in refs],
            }
            self._commit("attachDocument", data)
            return doc.id

    def update_restriction_extent(self, edge_id: str, extent: TemporalExtent) -> EdgeRecord:
        with self._lock:
            edge = self.edges.get(edge_id)
            if edge is None or edge.kind is not EdgeKind.RESTRICTS:
                raise NotFoundError(f"restriction edge {edge_id!r} does not exist")
            self._commit("updateRestriction", {"edgeId": edge_id, "extent": extent.to_json()})
            return self.edges[edge_id]

    def delete_polygon(self, polygon_id: str) -> None:
        """Remove a polygon; cascades to its edges and to documents left
        without any polygon."""
        with self._lock:
            node = self.nodes.get(polygon_id)
            if node is None or node.kind is not NodeKind.POLYGON:
                raise NotFoundError(f"polygon {polygon_id!r} does not exist")
            self._commit("deletePolygon", {"id": polygon_id})

    # -- the single apply path (used live and during replay) ----------------

    def _apply(self, op: str, data: dict) -> None:
        if op == "insertPolygon":
            polygon = GeoPolygon.from_json(data["polygon"])
            self.nodes[polygon.id] = NodeRecord(
                id=polygon.id,
                kind=NodeKind.POLYGON,
                payload={"polygon": data["polygon"], "name": data.get("name")},
            )
            for item in data["overlaps"]:
                a, b = sorted((polygon.id, item["with"]))
                self._add_edge(EdgeKind.OVERLAPS, a, b, {"area": item["area"]})
            self._rtree.insert(polygon.id, polygon.bounding_box().as_tuple())
        elif op == "attachDocument":
            doc = Document.from_json(data["document"])
            self.nodes[doc.id] = NodeRecord(
                id=doc.id, kind=NodeKind.DOCUMENT, payload={"document": data["document"]}
            )
            for pid in data["polygonIds"]:
                self._add_edge(EdgeKind.HAS_DOCUMENT, pid, doc.id, {})
            for ref in data["refs"]:
                class_id = f"class:{ref['topic']}"
                if class_id not in self.nodes:
                    self.nodes[class_id] = NodeRecord(
                        id=class_id,
                        kind=NodeKind.RESTRICTION_CLASS,
                        payload={"name": ref["topic"]},
                    )
                self._add_edge(EdgeKind.RESTRICTS, doc.id, class_id, dict(ref))
        elif op == "updateRestriction":
            edge = self.edges[data["edgeId"]]
            edge.attributes = dict(edge.attributes)
            edge.attributes["extent"] = data["extent"]
        elif op == "deletePolygon":
            pid = data["id"]
            polygon = self.polygon(pid)
            self._rtree.remove(pid, polygon.bounding_box().as_tuple())
            doomed_docs = []
            for edge_id in list(self._out.get(pid, [])) + list(self._in.get(pid, [])):
                edge = self.edges.get(edge_id)
                if edge is None:
                    continue
                if edge.kind is EdgeKind.HAS_DOCUMENT:
                    doomed_docs.append(edge.to_id)
                self._drop_edge(edge_id)
            del self.nodes[pid]
            for doc_id in doomed_docs:
                still_attached = any(
                    self.edges[eid].kind is EdgeKind.HAS_DOCUMENT
                    for eid in self._in.get(doc_id, [])
                )
                if not still_attached:
                    for eid in list(self._out.get(doc_id, [])):
                        self._drop_edge(eid)
                    del self.nodes[doc_id]
        elif op == "snapshot":
            self._load_snapshot(data)
        else:
            raise StoreError(f"unknown journal op {op!r}")

    def _add_edge(self, kind: EdgeKind, from_id: str, to_id: str, attributes: dict) -> EdgeRecord:
        self._edge_seq += 1
        edge = EdgeRecord(
            id=f"e{self._edge_seq}",
            kind=kind,
            from_id=from_id,
            to_id=to_id,
            attributes=attributes,
        )
        self.edges[edge.id] = edge
        self._out.setdefault(from_id, []).append(edge.id)
        self._in.setdefault(to_id, []).append(edge.id)
        return edge

    def _drop_edge(self, edge_id: str) -> None:
        edge = self.edges.pop(edge_id, None)
        if edge is None:
            return
        self._out.get(edge.from_id, []).remove(edge_id)
        self._in.get(edge.to_id, []).remove(edge_id)

    # -- reads ---------------------------------------------------------------

    def polygon(self, polygon_id: str) -> GeoPolygon:
        node = self.nodes.get(polygon_id)
        if node is None or node.kind is not NodeKind.POLYGON:
            raise NotFoundError(f"polygon {polygon_id!r} does not exist")
        return GeoPolygon.from_json(node.payload["polygon"])

    def document(self, doc_id: str) -> Document:
        node = self.nodes.get(doc_id)
        if node is None or node.kind is not NodeKind.DOCUMENT:
            raise NotFoundError(f"document {doc_id!r} does not exist")
        return Document.from_json(node.payload["document"])

    def polygons(self) -> list[GeoPolygon]:
        with self._lock:
            return sorted(
                (
                    GeoPolygon.from_json(n.payload["polygon"])
                    for n in self.nodes.values()
                    if n.kind is NodeKind.POLYGON
                ),
                key=lambda p: p.id,
            )

    def polygon_names(self) -> dict[str, str]:
        """Polygon id -> display name for polygons that carry one."""
        with self._lock:
            return {
                n.id: n.payload["name"]
                for n in self.nodes.values()
                if n.kind is NodeKind.POLYGON and n.payload.get("name")
            }

    def classes(self) -> list[str]:
        with self._lock:
            return sorted(
                n.payload["name"]
                for n in self.nodes.values()
                if n.kind is NodeKind.RESTRICTION_CLASS
            )

    def counts(self) -> tuple[int, int]:
        with self._lock:
            return len(self.nodes), len(self.edges)

    def _ref_from_edge(self, edge: EdgeRecord) -> RestrictionRef:
        return replace(RestrictionRef.from_json(edge.attributes), ref_id=edge.id)

    def documents_for(self, polygon_id: str) -> list[DocumentRefs]:
        with self._lock:
            self.polygon(polygon_id)
            out = []
            for edge_id in self._out.get(polygon_id, []):
                edge = self.edges[edge_id]
                if edge.kind is not EdgeKind.HAS_DOCUMENT:
                    continue
                doc = self.document(edge.to_id)
                refs = self.refs_for_document(doc.id)
                out.append(DocumentRefs(document=doc, refs=refs))
            out.sort(key=lambda d: d.document.id)
            return out

    def documents(self) -> list[Document]:
        with self._lock:
            return sorted(
                (
                    Document.from_json(n.payload["document"])
                    for n in self.nodes.values()
                    if n.kind is NodeKind.DOCUMENT
                ),
                key=lambda d: d.id,
            )

    def polygons_for_document(self, doc_id: str) -> list[GeoPolygon]:
        with self._lock:
            self.document(doc_id)
            out = [
                self.polygon(self.edges[eid].from_id)
                for eid in self._in.get(doc_id, [])
                if self.edges[eid].kind is EdgeKind.HAS_DOCUMENT
            ]
            out.sort(key=lambda p: p.id)
            return out

    def refs_for_document(self, doc_id: str) -> list[RestrictionRef]:
        with self._lock:
            refs = [
                self._ref_from_edge(self.edges[eid])
                for eid in self._out.get(doc_id, [])
                if self.edges[eid].kind is EdgeKind.RESTRICTS
            ]
            refs.sort(key=lambda r: r.sentence.index)
            return refs

    def restriction_edges(self, doc_id: str) -> list[EdgeRecord]:
        with self._lock:
            return [
                self.edges[eid]
                for eid in self._out.get(doc_id, [])
                if self.edges[eid].kind is EdgeKind.RESTRICTS
            ]

    def query_by_class(
        self, class_name: str, bbox: BoundingBox | None = None
    ) -> list[tuple[GeoPolygon, Document, RestrictionRef]]:
        """All (polygon, document, restriction) triples for one class,
        optionally kept to polygons whose bounding box intersects ``bbox``."""
        with self._lock:
            class_id = f"class:{class_name}"
            if class_id not in self.nodes:
                return []
            rows = []
            for restricts_id in self._in.get(class_id, []):
                restricts = self.edges[restricts_id]
                if restricts.kind is not EdgeKind.RESTRICTS:
                    continue
                doc = self.document(restricts.from_id)
                ref = self._ref_from_edge(restricts)
                for hasdoc_id in self._in.get(doc.id, []):
                    hasdoc = self.edges[hasdoc_id]
                    if hasdoc.kind is not EdgeKind.HAS_DOCUMENT:
                        continue
                    polygon = self.polygon(hasdoc.from_id)
                    if bbox is not None and not polygon.bounding_box().intersects(bbox):
                        continue
                    rows.append((polygon, doc, ref))
            rows.sort(key=lambda row: (row[0].id, row[1].id, row[2].sentence.index))
            return rows

    def overlap_neighbors(self, polygon_id: str) -> list[tuple[str, float]]:
        """(neighbor id, overlap area) for every stored overlap edge."""
        with self._lock:
            self.polygon(polygon_id)
            out = []
            for edge_id in self._out.get(polygon_id, []) + self._in.get(polygon_id, []):
                edge = self.edges[edge_id]
                if edge.kind is not EdgeKind.OVERLAPS:
                    continue
                other = edge.to_id if edge.from_id == polygon_id else edge.from_id
                out.append((other, float(edge.attributes["area"])))
            return out

    def query_overlapping(self, polygon_id: str) -> list[OverlapEntry]:
        """Overlap neighbors with their documents, largest overlap first."""
        with self._lock:
            entries = [
                OverlapEntry(
                    polygon=self.polygon(other),
                    area_m2=area,
                    documents=self.documents_for(other),
                )
                for other, area in self.overlap_neighbors(polygon_id)
            ]
            entries.sort(key=lambda e: (-e.area_m2, e.polygon.id))
            return entries

    def query_viewport(
        self, bbox: BoundingBox, category: str | None = None
    ) -> list[GeoPolygon]:
        """Polygons whose ring truly intersects the bbox rectangle."""
        with self._lock:
            out = []
            for pid in self._rtree.search(bbox.as_tuple()):
                polygon = self.polygon(pid)
                if category is not None and polygon.category != category:
                    continue
                if geometry.ring_intersects_bbox(polygon, bbox):
                    out.append(polygon)
            out.sort(key=lambda p: p.id)
            return out

    # -- persistence ---------------------------------------------------------

    def snapshot(self, path: str | Path) -> Path:
        """Write a one-line compacted journal that restores this state."""
        with self._lock:
            data = {
                "nodes": [
                    {"id": n.id, "kind": n.kind.value, "payload": n.payload}
                    for n in self.nodes.values()
                ],
                "edges": [
                    {
                        "id": e.id,
                        "kind": e.kind.value,
                        "from": e.from_id,
                        "to": e.to_id,
                        "attributes": e.attributes,
                    }
                    for e in self.edges.values()
                ],
                "edgeSeq": self._edge_seq,
            }
            path = Path(path)
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(json.dumps({"op": "snapshot", "ts": _now(), "data": data},
                                    ensure_ascii=False) + "\n")
            return path

    def _load_snapshot(self, data: dict) -> None:
        self.nodes = {}
        self.edges = {}
        self._out = {}
        self._in = {}
        self._rtree = RTree()
        for n in data["nodes"]:
            self.nodes[n["id"]] = NodeRecord(
                id=n["id"], kind=NodeKind(n["kind"]), payload=n["payload"]
            )
            if NodeKind(n["kind"]) is NodeKind.POLYGON:
                polygon = GeoPolygon.from_json(n["payload"]["polygon"])
                self._rtree.insert(polygon.id, polygon.bounding_box().as_tuple())
        for e in data["edges"]:
            edge = EdgeRecord(
                id=e["id"],
                kind=EdgeKind(e["kind"]),
                from_id=e["from"],
                to_id=e["to"],
                attributes=e["attributes"],
            )
            self.edges[edge.id] = edge
            self._out.setdefault(edge.from_id, []).append(edge.id)
            self._in.setdefault(edge.to_id, []).append(edge.id)
        self._edge_seq = int(data["edgeSeq"])

    # -- invariants ------------------------------------------------------------

    def verify(self) -> list[str]:
        """Structural invariant check; returns human-readable violations."""
        with self._lock:
            problems = []
            seen_pairs = set()
            for edge in self.edges.values():
                src = self.nodes.get(edge.from_id)
                dst = self.nodes.get(edge.to_id)
                if src is None or dst is None:
                    problems.append(f"edge {edge.id} dangles: {edge.from_id}->{edge.to_id}")
                    continue
                expected = {
                    EdgeKind.HAS_DOCUMENT: (NodeKind.POLYGON, NodeKind.DOCUMENT),
                    EdgeKind.OVERLAPS: (NodeKind.POLYGON, NodeKind.POLYGON),
                    EdgeKind.RESTRICTS: (NodeKind.DOCUMENT, NodeKind.RESTRICTION_CLASS),
                }[edge.kind]
                if (src.kind, dst.kind) != expected:
                    problems.append(
                        f"edge {edge.id} ({edge.kind.value}) connects "
                        f"{src.kind.value}->{dst.kind.value}"
                    )
                if edge.kind is EdgeKind.OVERLAPS:
                    if edge.from_id >= edge.to_id:
                        problems.append(f"overlap edge {edge.id} not canonically ordered")
                    pair = (edge.from_id, edge.to_id)
                    if pair in seen_pairs:
                        problems.append(f"overlap pair {pair} stored twice")
                    seen_pairs.add(pair)
                    if not edge.attributes.get("area", 0) > 0:
                        problems.append(f"overlap edge {edge.id} has non-positive area")
            polygon_ids = {
                n.id for n in self.nodes.values() if n.kind is NodeKind.POLYGON
            }
            indexed = set(self._rtree.all_items())
            if indexed != polygon_ids:
                problems.append(
                    f"spatial index out of sync: {sorted(indexed ^ polygon_ids)}"
                )
            for pid in sorted(polygon_ids):
                polygon = self.polygon(pid)
                if pid not in self._rtree.search(polygon.bounding_box().as_tuple()):
                    problems.append(f"polygon {pid} not found via its own bbox")
            return problems
