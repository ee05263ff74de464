"""Timeline aggregation: document counts per calendar bucket.

Buckets come in five granularities (decade, year, quarter, month, day).
A bucket counts the distinct documents that have at least one restriction
whose validity period touches the bucket; annually recurring periods are
expanded into concrete year instances first. Undated restrictions never
count.

Pure reads over a store; no state here.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date, timedelta
from enum import Enum

from .extraction import ExtentForm, RestrictionRef, TemporalExtent
from .geometry import BoundingBox, GeoPolygon
from .store import Document, GraphStore


class TimelineError(ValueError):
    pass


class LevelOfDetail(Enum):
    DECADE = "decade"
    YEAR = "year"
    QUARTER = "quarter"
    MONTH = "month"
    DAY = "day"

    @property
    def rank(self) -> int:
        """Coarseness: decade is largest, day is smallest."""
        return {"decade": 4, "year": 3, "quarter": 2, "month": 1, "day": 0}[self.value]

    @staticmethod
    def parse(value: str) -> "LevelOfDetail":
        try:
            return LevelOfDetail(value.lower())
        except ValueError:
            raise TimelineError(
                f"unknown level of detail {value!r}; expected one of "
                f"{[l.value for l in LevelOfDetail]}"
            ) from None

    def align(self, d: date) -> date:
        """Start of the bucket containing ``d``."""
        if self is LevelOfDetail.DECADE:
            return date(d.year - d.year % 10, 1, 1)
        if self is LevelOfDetail.YEAR:
            return date(d.year, 1, 1)
        if self is LevelOfDetail.QUARTER:
            return date(d.year, ((d.month - 1) // 3) * 3 + 1, 1)
        if self is LevelOfDetail.MONTH:
            return date(d.year, d.month, 1)
        return d

    def next_start(self, bucket_start: date) -> date:
        if self is LevelOfDetail.DECADE:
            return date(bucket_start.year + 10, 1, 1)
        if self is LevelOfDetail.YEAR:
            return date(bucket_start.year + 1, 1, 1)
        if self is LevelOfDetail.QUARTER:
            month = bucket_start.month + 3
            year = bucket_start.year + (month - 1) // 12
            return date(year, (month - 1) % 12 + 1, 1)
        if self is LevelOfDetail.MONTH:
            month = bucket_start.month + 1
            year = bucket_start.year + (month - 1) // 12
            return date(year, (month - 1) % 12 + 1, 1)
        return bucket_start + timedelta(days=1)

    def is_aligned(self, d: date) -> bool:
        return self.align(d) == d


@dataclass(frozen=True)
class TimelineQuery:
    range_start: date
    range_end: date
    lod: LevelOfDetail
    class_filter: str | None = None
    bbox: BoundingBox | None = None
    category_filter: str | None = None

    def __post_init__(self):
        if self.range_start > self.range_end:
            raise TimelineError(
                f"range start {self.range_start} is after range end {self.range_end}"
            )


@dataclass(frozen=True)
class TimelineBucket:
    bucket_start: date
    lod: LevelOfDetail
    document_count: int

    def to_json(self) -> dict:
        return {"start": self.bucket_start.isoformat(), "count": self.document_count}


@dataclass
class SelectedDocument:
    document: Document
    polygons: list[GeoPolygon]
    refs: list[RestrictionRef]


def _clamped_date(year: int, month: int, day: int) -> date:
    """Calendar date with the day clamped into the month (Feb 29 -> 28)."""
    while True:
        try:
            return date(year, month, day)
        except ValueError:
            day -= 1


def expand_recurring(
    extent: TemporalExtent, range_start: date, range_end: date
) -> list[tuple[date, date]]:
    """Concrete year instances of a recurring period that touch the range.

    Instances are returned whole (not trimmed). Periods that wrap the year
    boundary (e.g. November to February) end in the following year; the
    one-year slack on both sides catches instances reaching into the range.
    """
    if extent.form is not ExtentForm.RECURRING:
        raise TimelineError("expand_recurring needs a recurring extent")
    sm, sd = extent.recur_start_month, extent.recur_start_day
    em, ed = extent.recur_end_month, extent.recur_end_day
    wraps = (em, ed) < (sm, sd)
    out = []
    for year in range(range_start.year - 1, range_end.year + 2):
        start = _clamped_date(year, sm, sd)
        end = _clamped_date(year + 1 if wraps else year, em, ed)
        if start <= range_end and end >= range_start:
            out.append((start, end))
    return out


def extent_instances(
    extent: TemporalExtent, range_start: date, range_end: date
) -> list[tuple[date, date]]:
    """Absolute intervals an extent contributes within a range; undated
    contributes nothing."""
    if extent.form is ExtentForm.UNDATED:
        return []
    if extent.form is ExtentForm.ABSOLUTE:
        if extent.start <= range_end and extent.end >= range_start:
            return [(extent.start, extent.end)]
        return []
    return expand_recurring(extent, range_start, range_end)


def bucket_starts(query: TimelineQuery) -> list[date]:
    """Contiguous bucket starts covering the query range."""
    starts = []
    cursor = query.lod.align(query.range_start)
    while cursor <= query.range_end:
        starts.append(cursor)
        cursor = query.lod.next_start(cursor)
    return starts


def _eligible_documents(
    store: GraphStore,
    class_filter: str | None,
    bbox: BoundingBox | None,
    category_filter: str | None,
) -> list[tuple[Document, list[RestrictionRef], list[GeoPolygon]]]:
    """Documents passing the polygon-side filters, with their filtered refs."""
    out = []
    for doc in store.documents():
        polygons = store.polygons_for_document(doc.id)
        keeps = [
            p
            for p in polygons
            if (category_filter is None or p.category == category_filter)
            and (bbox is None or p.bounding_box().intersects(bbox))
        ]
        if not keeps:
            continue
        refs = store.refs_for_document(doc.id)
        if class_filter is not None:
            refs = [r for r in refs if r.classification.topic == class_filter]
        if not refs:
            continue
        out.append((doc, refs, polygons))
    return out


def aggregate(query: TimelineQuery, store: GraphStore) -> list[TimelineBucket]:
    """Distinct-document counts per bucket over the query range."""
    starts = bucket_starts(query)
    if not starts:
        return []
    span_start = starts[0]
    span_end = query.lod.next_start(starts[-1]) - timedelta(days=1)

    docs = _eligible_documents(store, query.class_filter, query.bbox, query.category_filter)
    doc_instances = []
    for doc, refs, _polygons in docs:
        instances = []
        for ref in refs:
            instances += extent_instances(ref.extent, span_start, span_end)
        if instances:
            doc_instances.append(instances)

    buckets = []
    for start in starts:
        end = query.lod.next_start(start) - timedelta(days=1)
        count = sum(
            1
            for instances in doc_instances
            if any(s <= end and e >= start for s, e in instances)
        )
        buckets.append(TimelineBucket(bucket_start=start, lod=query.lod, document_count=count))
    return buckets


def select_interval(
    start: date,
    end: date,
    store: GraphStore,
    class_filter: str | None = None,
    bbox: BoundingBox | None = None,
    category_filter: str | None = None,
) -> list[SelectedDocument]:
    """Distinct documents whose dated restrictions touch the brushed range,
    with their polygons for map highlighting."""
    if start > end:
        raise TimelineError(f"brush start {start} is after end {end}")
    out = []
    for doc, refs, polygons in _eligible_documents(store, class_filter, bbox, category_filter):
        hits = [
            r for r in refs if extent_instances(r.extent, start, end)
        ]
        if hits:
            out.append(SelectedDocument(document=doc, polygons=polygons, refs=hits))
    out.sort(key=lambda s: s.document.id)
    return out


def timeline_response_json(lod: LevelOfDetail, buckets: list[TimelineBucket]) -> dict:
    return {"lod": lod.value, "buckets": [b.to_json() for b in buckets]}
