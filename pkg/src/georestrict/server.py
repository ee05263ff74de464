"""HTTP JSON API over a graph store.

Stateless per request; every mutation is one journaled store batch. All
responses are JSON (UTF-8, ISO-8601 dates), errors use one envelope:
{"status": ..., "code": validation|not_found|conflict|io|parse,
 "message": ..., "detail": ...}.

View linkage (brushing, synchronized panes) is entirely client-side; the
server only answers the queries behind it.
"""

from __future__ import annotations

from datetime import date
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import planning, timeline
from .extraction import (
    ExtractionError,
    RuleTable,
    TemporalExtent,
    default_rules,
    extract_document,
)
from .geometry import BoundingBox, GeometryError, GeoPolygon
from .planning import PlanningError, ProjectDraft
from .store import (
    Document,
    DuplicateIdError,
    GraphStore,
    JournalError,
    NotFoundError,
    StoreError,
)
from .timeline import LevelOfDetail, TimelineError, TimelineQuery


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, detail=None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.detail = detail

    def response(self) -> JSONResponse:
        body = {"status": self.status, "code": self.code, "message": self.message}
        if self.detail is not None:
            body["detail"] = self.detail
        return JSONResponse(status_code=self.status, content=body)


def _bad_request(message, detail=None) -> ApiError:
    return ApiError(400, "validation", str(message), detail)


async def _json_body(request: Request) -> dict:
    try:
        body = await request.json()
    except Exception as exc:
        raise ApiError(400, "parse", f"request body is not valid JSON: {exc}") from exc
    if not isinstance(body, dict):
        raise ApiError(400, "parse", "request body must be a JSON object")
    return body


def _parse_bbox(raw: str | None) -> BoundingBox | None:
    if raw is None or raw == "":
        return None
    parts = raw.split(",")
    if len(parts) != 4:
        raise _bad_request("bbox must be 'minLon,minLat,maxLon,maxLat'")
    try:
        values = [float(p) for p in parts]
        return BoundingBox(*values)
    except (ValueError, GeometryError) as exc:
        raise _bad_request(f"bad bbox: {exc}") from exc


def _parse_date(raw: str | None, param: str) -> date | None:
    if raw is None or raw == "":
        return None
    try:
        return date.fromisoformat(raw)
    except ValueError as exc:
        raise _bad_request(f"{param} must be an ISO date (YYYY-MM-DD): {exc}") from exc


def _require(value, param: str):
    if value is None:
        raise _bad_request(f"missing required parameter {param!r}")
    return value


def _document_json(doc_refs) -> dict:
    return {
        "docId": doc_refs.document.id,
        "title": doc_refs.document.title,
        "refs": [r.to_json() for r in doc_refs.refs],
    }


def create_app(
    store: GraphStore,
    rules: RuleTable | None = None,
    ui_dir: str | Path | None = None,
) -> FastAPI:
    rules = rules or default_rules()
    app = FastAPI(title="georestrict", docs_url=None, redoc_url=None)

    @app.exception_handler(ApiError)
    async def _api_error(_req, exc: ApiError):
        return exc.response()

    @app.exception_handler(Exception)
    async def _any_error(_req, exc: Exception):
        return _translate(exc).response()

    def _translate(exc: Exception) -> ApiError:
        if isinstance(exc, ApiError):
            return exc
        if isinstance(exc, NotFoundError):
            return ApiError(404, "not_found", str(exc))
        if isinstance(exc, DuplicateIdError):
            return ApiError(409, "conflict", str(exc))
        if isinstance(exc, (GeometryError, PlanningError, ExtractionError, TimelineError)):
            return ApiError(400, "validation", str(exc))
        if isinstance(exc, (JournalError, OSError)):
            return ApiError(500, "io", str(exc))
        if isinstance(exc, StoreError):
            return ApiError(400, "validation", str(exc))
        return ApiError(500, "io", f"unexpected failure: {exc}")

    # -- polygons ------------------------------------------------------------

    @app.post("/api/polygons", status_code=201)
    async def post_polygon(request: Request):
        body = await _json_body(request)
        try:
            polygon = GeoPolygon.from_json(body)
        except GeometryError as exc:
            raise _translate(exc)
        try:
            pid, edges = store.insert_polygon(polygon, name=body.get("name"))
        except StoreError as exc:
            raise _translate(exc)
        return {
            "id": pid,
            "overlaps": [
                {
                    "polygonId": e.to_id if e.from_id == pid else e.from_id,
                    "area": round(float(e.attributes["area"]), 2),
                }
                for e in edges
            ],
        }

    @app.get("/api/polygons")
    async def get_polygons(bbox: str | None = None, category: str | None = None):
        box = _parse_bbox(bbox)
        if box is None:
            polygons = store.polygons()
            if category is not None:
                polygons = [p for p in polygons if p.category == category]
        else:
            polygons = store.query_viewport(box, category=category)
        return {"polygons": [p.to_json() for p in polygons]}

    @app.get("/api/polygons/{polygon_id}/overlaps")
    async def get_overlaps(polygon_id: str):
        try:
            entries = store.query_overlapping(polygon_id)
        except NotFoundError as exc:
            raise _translate(exc)
        return {
            "polygonId": polygon_id,
            "entries": [
                {
                    "polygonId": e.polygon.id,
                    "category": e.polygon.category,
                    "overlapArea": round(e.area_m2, 2),
                    "documents": [_document_json(d) for d in e.documents],
                }
                for e in entries
            ],
        }

    @app.get("/api/polygons/{polygon_id}/restrictions")
    async def get_restrictions(polygon_id: str, at: str | None = None):
        at_day = _parse_date(at, "at")
        try:
            groups = planning.applicable_restrictions(polygon_id, store, at=at_day)
        except NotFoundError as exc:
            raise _translate(exc)
        out = planning.restrictions_report_json(groups)
        out["polygonId"] = polygon_id
        if at_day is not None:
            out["at"] = at_day.isoformat()
        return out

    # -- documents and restrictions -------------------------------------------

    @app.post("/api/documents", status_code=201)
    async def post_document(request: Request):
        body = await _json_body(request)
        polygon_ids = body.get("polygonIds")
        title = body.get("title")
        text = body.get("text")
        if not isinstance(polygon_ids, list) or not polygon_ids:
            raise _bad_request("polygonIds must be a non-empty list")
        if not isinstance(title, str) or not isinstance(text, str) or not text.strip():
            raise _bad_request("title and non-empty text are required")
        doc_id = body.get("id") or _fresh_doc_id(store)
        result = extract_document(doc_id, text, rules)
        doc = Document(
            id=doc_id,
            title=title,
            text=text,
            source_path=str(body.get("sourcePath", "")),
            ingested_at=_ingest_timestamp(),
        )
        try:
            store.attach_document([str(p) for p in polygon_ids], doc, result.refs)
        except StoreError as exc:
            raise _translate(exc)
        refs_json = [r.to_json() for r in store.refs_for_document(doc_id)]
        return {"docId": doc_id, "refs": refs_json, "warnings": result.warnings}

    @app.patch("/api/restrictions/{ref_id}")
    async def patch_restriction(ref_id: str, request: Request):
        body = await _json_body(request)
        if "extent" not in body:
            raise _bad_request("body must carry an 'extent' object")
        try:
            extent = TemporalExtent.from_json(body["extent"])
        except (ExtractionError, KeyError, ValueError) as exc:
            raise _bad_request(f"bad extent: {exc}") from exc
        try:
            edge = store.update_restriction_extent(ref_id, extent)
        except NotFoundError as exc:
            raise _translate(exc)
        return {"refId": edge.id, "extent": edge.attributes["extent"]}

    # -- projects --------------------------------------------------------------

    @app.post("/api/projects", status_code=201)
    async def post_project(request: Request):
        body = await _json_body(request)
        try:
            draft = ProjectDraft.from_json(body)
            report = planning.create_project(draft, store)
        except (PlanningError, GeometryError, StoreError) as exc:
            raise _translate(exc)
        return report.to_json()

    # -- timeline ----------------------------------------------------------------

    def _timeline_params(from_, to, class_, bbox, category):
        start = _parse_date(_require(from_, "from"), "from")
        end = _parse_date(_require(to, "to"), "to")
        return start, end, class_ or None, _parse_bbox(bbox), category or None

    @app.get("/api/timeline")
    async def get_timeline(
        request: Request,
        lod: str = "month",
        category: str | None = None,
        bbox: str | None = None,
    ):
        params = request.query_params
        start, end, class_filter, box, cat = _timeline_params(
            params.get("from"), params.get("to"), params.get("class"), bbox, category
        )
        try:
            query = TimelineQuery(
                range_start=start,
                range_end=end,
                lod=LevelOfDetail.parse(lod),
                class_filter=class_filter,
                bbox=box,
                category_filter=cat,
            )
        except TimelineError as exc:
            raise _translate(exc)
        buckets = timeline.aggregate(query, store)
        return timeline.timeline_response_json(query.lod, buckets)

    @app.get("/api/timeline/select")
    async def get_timeline_select(
        request: Request,
        category: str | None = None,
        bbox: str | None = None,
    ):
        params = request.query_params
        start, end, class_filter, box, cat = _timeline_params(
            params.get("from"), params.get("to"), params.get("class"), bbox, category
        )
        try:
            selected = timeline.select_interval(
                start, end, store, class_filter=class_filter, bbox=box, category_filter=cat
            )
        except TimelineError as exc:
            raise _translate(exc)
        return {
            "documents": [
                {
                    "docId": s.document.id,
                    "title": s.document.title,
                    "polygonIds": [p.id for p in s.polygons],
                    "refs": [r.to_json() for r in s.refs],
                }
                for s in selected
            ]
        }

    # -- registry -------------------------------------------------------------------

    @app.get("/api/classes")
    async def get_classes():
        known = set(rules.registry()) | set(store.classes())
        return {"classes": sorted(known)}

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app


def _fresh_doc_id(store: GraphStore) -> str:
    n = len(store.documents()) + 1
    while f"doc{n}" in store.nodes:
        n += 1
    return f"doc{n}"


def _ingest_timestamp() -> str:
    from datetime import datetime, timezone

    return datetime.now(timezone.utc).isoformat()
