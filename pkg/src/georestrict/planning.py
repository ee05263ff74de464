"""Project creation and compliance checks.

A planner draws either a closed area or an open path; paths are buffered
into polygons first. Saving runs the overlap computation in the store and
returns a report of every intersecting polygon with the documents and
restrictions the new project inherits from them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date
from enum import Enum

from .extraction import ExtentForm, RestrictionRef
from .geometry import GeoPoint, GeoPolygon, GeometryError, buffer_path
from .store import GraphStore, NotFoundError

DEFAULT_PATH_WIDTH_M = 5.0


class PlanningError(ValueError):
    pass


class DraftKind(str, Enum):
    AREA = "area"
    PATH = "path"


@dataclass(frozen=True)
class ProjectDraft:
    points: tuple[GeoPoint, ...]
    kind: DraftKind
    category: str
    name: str
    width_m: float = DEFAULT_PATH_WIDTH_M

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if not self.category.strip():
            raise PlanningError("a draft needs a category")
        if self.kind is DraftKind.AREA and len(self.points) < 3:
            raise PlanningError("an area draft needs at least 3 points")
        if self.kind is DraftKind.PATH and len(self.points) < 2:
            raise PlanningError("a path draft needs at least 2 points")

    @staticmethod
    def from_json(obj: dict) -> "ProjectDraft":
        try:
            points = tuple(GeoPoint(float(lon), float(lat)) for lon, lat in obj["points"])
            kind = DraftKind(str(obj["kind"]).lower())
            return ProjectDraft(
                points=points,
                kind=kind,
                category=str(obj["category"]),
                name=str(obj.get("name", "")),
                width_m=float(obj.get("width", DEFAULT_PATH_WIDTH_M)),
            )
        except GeometryError:
            raise
        except PlanningError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise PlanningError(f"malformed project draft: {exc}") from exc


@dataclass
class ReportDocument:
    doc_id: str
    title: str
    refs: list[RestrictionRef]

    def to_json(self) -> dict:
        return {
            "docId": self.doc_id,
            "title": self.title,
            "refs": [r.to_json() for r in self.refs],
        }


@dataclass
class ReportEntry:
    polygon_id: str
    category: str
    overlap_area_m2: float
    documents: list[ReportDocument]

    def to_json(self) -> dict:
        return {
            "polygonId": self.polygon_id,
            "category": self.category,
            "overlapArea": round(self.overlap_area_m2, 2),
            "documents": [d.to_json() for d in self.documents],
        }


@dataclass
class OverlapReport:
    new_polygon_id: str
    entries: list[ReportEntry]
    warnings: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "newPolygonId": self.new_polygon_id,
            "entries": [e.to_json() for e in self.entries],
            "warnings": self.warnings,
        }


def draft_polygon(draft: ProjectDraft, polygon_id: str) -> GeoPolygon:
    """Geometry for a draft: the ring itself, or the buffered path."""
    if draft.kind is DraftKind.PATH:
        return buffer_path(
            list(draft.points), draft.width_m, polygon_id=polygon_id,
            category=draft.category,
        )
    return GeoPolygon(id=polygon_id, ring=draft.points, category=draft.category)


def create_project(
    draft: ProjectDraft, store: GraphStore, polygon_id: str | None = None
) -> OverlapReport:
    """Validate, persist, and report inherited restrictions.

    The store insert is one journaled batch, so a failure anywhere leaves
    no trace. A duplicate project name inside the same category is only
    worth a warning.
    """
    if polygon_id is None:
        polygon_id = _next_project_id(store, draft)
    polygon = draft_polygon(draft, polygon_id)

    warnings = []
    for pid, name in store.polygon_names().items():
        if name == draft.name and store.polygon(pid).category == draft.category:
            warnings.append(
                f"name {draft.name!r} already used in category "
                f"{draft.category!r} by polygon {pid!r}"
            )

    store.insert_polygon(polygon, name=draft.name)
    entries = [
        ReportEntry(
            polygon_id=e.polygon.id,
            category=e.polygon.category,
            overlap_area_m2=e.area_m2,
            documents=[
                ReportDocument(doc_id=d.document.id, title=d.document.title, refs=d.refs)
                for d in e.documents
            ],
        )
        for e in store.query_overlapping(polygon_id)
    ]
    return OverlapReport(new_polygon_id=polygon_id, entries=entries, warnings=warnings)


def _next_project_id(store: GraphStore, draft: ProjectDraft) -> str:
    base = "proj-" + ("-".join(draft.name.lower().split()) or draft.kind.value)
    if base not in store.nodes:
        return base
    n = 2
    while f"{base}-{n}" in store.nodes:
        n += 1
    return f"{base}-{n}"


@dataclass
class TopicRestrictions:
    topic: str
    refs: list[dict]  # ref JSON plus "undated"/"active" flags

    def to_json(self) -> dict:
        return {"topic": self.topic, "refs": self.refs}


def applicable_restrictions(
    polygon_id: str, store: GraphStore, at: date | None = None
) -> list[TopicRestrictions]:
    """Restrictions on the polygon's own documents plus everything
    inherited over overlap edges, grouped by topic.

    With ``at`` given, only restrictions valid on that day are kept;
    recurring periods are tested by month and day, ignoring the year.
    Undated restrictions are always kept and flagged.
    """
    own = store.documents_for(polygon_id)
    inherited = [
        d for entry in store.query_overlapping(polygon_id) for d in entry.documents
    ]

    seen_docs = set()
    refs: list[RestrictionRef] = []
    for doc_refs in own + inherited:
        if doc_refs.document.id in seen_docs:
            continue
        seen_docs.add(doc_refs.document.id)
        refs.extend(doc_refs.refs)

    by_topic: dict[str, list[dict]] = {}
    for ref in refs:
        undated = ref.extent.form is ExtentForm.UNDATED
        if at is not None and not undated and not _extent_contains(ref.extent, at):
            continue
        item = ref.to_json()
        item["undated"] = undated
        if at is not None:
            item["active"] = not undated
        by_topic.setdefault(ref.classification.topic, []).append(item)

    out = []
    for topic in sorted(by_topic):
        items = sorted(by_topic[topic], key=lambda r: (r["docId"], r["sentenceIndex"]))
        out.append(TopicRestrictions(topic=topic, refs=items))
    return out


def _extent_contains(extent, at: date) -> bool:
    if extent.form is ExtentForm.ABSOLUTE:
        return extent.start <= at <= extent.end
    md = (at.month, at.day)
    s = (extent.recur_start_month, extent.recur_start_day)
    e = (extent.recur_end_month, extent.recur_end_day)
    if s <= e:
        return s <= md <= e
    return md >= s or md <= e


def restrictions_report_json(groups: list[TopicRestrictions]) -> dict:
    return {"topics": [g.to_json() for g in groups]}
