from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from conftest import rect, small_region_polygons
from georestrict.extraction import TemporalExtent
from georestrict.server import create_app
from georestrict.store import GraphStore

ERROR_CODES = {"validation", "not_found", "conflict", "io", "parse"}


@pytest.fixture()
def store():
    s = GraphStore()
    for p in small_region_polygons():
        s.insert_polygon(p)
    return s


@pytest.fixture()
def client(store):
    return TestClient(create_app(store), raise_server_exceptions=False)


def polygon_json(pid="new", lon0=12.46, lat0=51.26, side=0.01, category="residential"):
    return {
        "id": pid,
        "category": category,
        "ring": [
            [lon0, lat0],
            [lon0 + side, lat0],
            [lon0 + side, lat0 + side],
            [lon0, lat0 + side],
        ],
    }


def doc_body(polygon_ids, text, title="Bescheid", doc_id=None):
    body = {"polygonIds": polygon_ids, "title": title, "text": text}
    if doc_id:
        body["id"] = doc_id
    return body


def assert_error(response, status, code):
    assert response.status_code == status
    body = response.json()
    assert body["status"] == status
    assert body["code"] == code
    assert body["code"] in ERROR_CODES
    assert body["message"]


# ---------------------------------------------------------------------------
# polygons


def test_post_polygon_created_with_overlap_summary(client):
    r = client.post("/api/polygons", json=polygon_json("over-r4", 12.445, 51.245, 0.01))
    assert r.status_code == 201
    body = r.json()
    assert body["id"] == "over-r4"
    ids = {o["polygonId"] for o in body["overlaps"]}
    assert {"r4", "r5"} <= ids


def test_post_polygon_validation_error(client):
    bad = polygon_json("bad")
    bad["ring"] = bad["ring"][:2]
    assert_error(client.post("/api/polygons", json=bad), 400, "validation")


def test_post_polygon_duplicate_conflict(client):
    assert_error(
        client.post("/api/polygons", json=polygon_json("r1", 12.4, 51.2, 0.01)),
        409,
        "conflict",
    )


def test_post_polygon_malformed_json(client):
    r = client.post(
        "/api/polygons", content=b"{nope", headers={"content-type": "application/json"}
    )
    assert_error(r, 400, "parse")


def test_get_polygons_viewport_and_category(client):
    r = client.get("/api/polygons", params={"bbox": "12.43,51.23,12.47,51.27"})
    assert r.status_code == 200
    ids = [p["id"] for p in r.json()["polygons"]]
    assert ids == ["r4", "r5"]

    r = client.get(
        "/api/polygons",
        params={"bbox": "12.43,51.23,12.47,51.27", "category": "wildlife park"},
    )
    assert [p["id"] for p in r.json()["polygons"]] == ["r4"]


def test_get_polygons_bad_bbox(client):
    assert_error(client.get("/api/polygons", params={"bbox": "1,2,3"}), 400, "validation")


def test_get_overlaps_unknown_polygon_404(client):
    assert_error(client.get("/api/polygons/ghost/overlaps"), 404, "not_found")


def test_get_overlaps_includes_neighbor_documents(client):
    client.post(
        "/api/documents",
        json=doc_body(
            ["r4"],
            "Während der Brutzeit vom 01.03. bis 30.09. sind Arbeiten nicht zulässig.",
            doc_id="doc-park",
        ),
    )
    r = client.get("/api/polygons/r5/overlaps")
    assert r.status_code == 200
    entries = r.json()["entries"]
    assert entries[0]["polygonId"] == "r4"
    refs = entries[0]["documents"][0]["refs"]
    assert refs[0]["topic"] == "Breeding Times"
    assert refs[0]["refId"].startswith("e")


# ---------------------------------------------------------------------------
# documents and restriction patching


def test_post_document_runs_extraction(client):
    r = client.post(
        "/api/documents",
        json=doc_body(
            ["r1"],
            "Das Betreten ist verboten. Während der Brutzeit vom 01.03. bis 30.09. "
            "sind laute Arbeiten nicht zulässig.",
            doc_id="doc-x",
        ),
    )
    assert r.status_code == 201
    body = r.json()
    assert body["docId"] == "doc-x"
    assert len(body["refs"]) == 2
    kinds = {ref["kind"] for ref in body["refs"]}
    assert kinds == {"Prohibition", "Requirement"}


def test_post_document_unknown_polygon(client):
    assert_error(
        client.post("/api/documents", json=doc_body(["ghost"], "Betreten verboten.")),
        404,
        "not_found",
    )


def test_post_document_empty_text(client):
    assert_error(
        client.post("/api/documents", json=doc_body(["r1"], "   ")), 400, "validation"
    )


def test_patch_restriction_extent(client):
    r = client.post(
        "/api/documents",
        json=doc_body(["r1"], "Lagerung ist verboten.", doc_id="doc-undated"),
    )
    ref = r.json()["refs"][0]
    assert ref["extent"] == {"form": "undated"}
    patch = client.patch(
        f"/api/restrictions/{ref['refId']}",
        json={"extent": {"form": "recurring", "startMonth": 3, "startDay": 1,
                          "endMonth": 9, "endDay": 30}},
    )
    assert patch.status_code == 200
    assert patch.json()["extent"]["form"] == "recurring"

    again = client.get("/api/polygons/r1/restrictions")
    refs = [r_ for t in again.json()["topics"] for r_ in t["refs"]]
    assert refs[0]["extent"]["form"] == "recurring"


def test_patch_restriction_unknown_id(client):
    assert_error(
        client.patch("/api/restrictions/e999", json={"extent": {"form": "undated"}}),
        404,
        "not_found",
    )


def test_patch_restriction_bad_extent(client):
    r = client.post(
        "/api/documents", json=doc_body(["r1"], "Lagerung ist verboten.", doc_id="d-b")
    )
    ref_id = r.json()["refs"][0]["refId"]
    assert_error(
        client.patch(f"/api/restrictions/{ref_id}", json={"extent": {"form": "sideways"}}),
        400,
        "validation",
    )


# ---------------------------------------------------------------------------
# projects


def test_post_project_two_point_area_rejected(client):
    r = client.post(
        "/api/projects",
        json={
            "points": [[12.4, 51.2], [12.41, 51.2]],
            "kind": "area",
            "category": "bicycle path",
            "name": "too short",
        },
    )
    assert_error(r, 400, "validation")


def test_post_project_path_returns_report(client, store):
    client.post(
        "/api/documents",
        json=doc_body(
            ["r1"],
            "Während der Brutzeit vom 01.03. bis 30.09. sind Arbeiten nicht zulässig.",
            doc_id="doc-reserve",
        ),
    )
    r = client.post(
        "/api/projects",
        json={
            "points": [[12.395, 51.205], [12.405, 51.205], [12.415, 51.205]],
            "kind": "path",
            "category": "bicycle path",
            "name": "Seeweg",
            "width": 8,
        },
    )
    assert r.status_code == 201
    report = r.json()
    entry_ids = [e["polygonId"] for e in report["entries"]]
    assert "r1" in entry_ids
    reserve_entry = next(e for e in report["entries"] if e["polygonId"] == "r1")
    topics = [ref["topic"] for d in reserve_entry["documents"] for ref in d["refs"]]
    assert "Breeding Times" in topics
    # polygon persisted and queryable
    overlaps = client.get(f"/api/polygons/{report['newPolygonId']}/overlaps")
    assert overlaps.status_code == 200


# ---------------------------------------------------------------------------
# timeline routes


def seed_timeline_docs(client):
    client.post(
        "/api/documents",
        json=doc_body(
            ["r4"],
            "Während der Brutzeit vom 01.03. bis 30.09. sind Arbeiten nicht zulässig.",
            doc_id="doc-park",
        ),
    )
    client.post(
        "/api/documents",
        json=doc_body(
            ["r6"],
            "Die Sperrung ist am 04.03.2022 untersagt worden im Jahr 2022.",
            doc_id="doc-town",
        ),
    )


def test_timeline_buckets_shape(client):
    seed_timeline_docs(client)
    r = client.get(
        "/api/timeline",
        params={"from": "2022-01-01", "to": "2022-12-31", "lod": "month"},
    )
    assert r.status_code == 200
    body = r.json()
    assert body["lod"] == "month"
    assert len(body["buckets"]) == 12
    assert body["buckets"][0]["start"] == "2022-01-01"
    march = body["buckets"][2]
    assert march["count"] >= 1


def test_timeline_class_and_bbox_filter(client):
    seed_timeline_docs(client)
    r = client.get(
        "/api/timeline",
        params={
            "from": "2022-01-01",
            "to": "2022-12-31",
            "lod": "month",
            "class": "Breeding Times",
            "bbox": "12.43,51.23,12.47,51.27",
        },
    )
    counts = [b["count"] for b in r.json()["buckets"]]
    assert counts == [0, 0, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0]


def test_timeline_missing_params(client):
    assert_error(client.get("/api/timeline", params={"from": "2022-01-01"}), 400, "validation")
    assert_error(
        client.get("/api/timeline", params={"from": "x", "to": "2022-01-01"}),
        400,
        "validation",
    )
    assert_error(
        client.get(
            "/api/timeline",
            params={"from": "2022-01-01", "to": "2022-12-31", "lod": "eon"},
        ),
        400,
        "validation",
    )


def test_timeline_select_returns_documents_and_polygons(client):
    seed_timeline_docs(client)
    r = client.get(
        "/api/timeline/select",
        params={"from": "2022-03-01", "to": "2022-09-30", "class": "Breeding Times"},
    )
    docs = r.json()["documents"]
    assert [d["docId"] for d in docs] == ["doc-park"]
    assert docs[0]["polygonIds"] == ["r4"]


def test_classes_registry(client):
    seed_timeline_docs(client)
    r = client.get("/api/classes")
    classes = r.json()["classes"]
    assert "Breeding Times" in classes
    assert "General" in classes
    assert classes == sorted(classes)


# ---------------------------------------------------------------------------
# determinism


def test_identical_gets_are_byte_identical(client):
    seed_timeline_docs(client)
    for url, params in [
        ("/api/polygons", {}),
        ("/api/polygons", {"bbox": "12.39,51.19,12.52,51.32"}),
        ("/api/polygons/r5/overlaps", {}),
        ("/api/timeline", {"from": "2021-01-01", "to": "2022-12-31", "lod": "quarter"}),
        ("/api/classes", {}),
    ]:
        first = client.get(url, params=params)
        second = client.get(url, params=params)
        assert first.content == second.content
