"""Command line entry points: ingest a corpus, run one-off extraction,
serve the API, verify a store, render reports."""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import planning, report, timeline
from .extraction import RuleTable, default_rules, extract_document
from .geometry import BoundingBox, GeoPolygon
from .server import create_app
from .store import Document, GraphStore, JournalError, StoreError
from .timeline import LevelOfDetail, TimelineQuery


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (StoreError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="georestrict",
        description="Extract dated restrictions from georeferenced documents "
        "and query them against polygons.",
    )
    sub = parser.add_subparsers(required=True)

    p_ingest = sub.add_parser("ingest", help="load a corpus directory into a store")
    p_ingest.add_argument("--corpus", required=True, help="directory of *.txt + *.meta.json")
    p_ingest.add_argument("--store", required=True, help="journal path to create or extend")
    p_ingest.add_argument("--rules", help="rule table JSON (default: built-in)")
    p_ingest.set_defaults(func=cmd_ingest)

    p_extract = sub.add_parser("extract", help="print extraction JSON for one text file")
    p_extract.add_argument("--text", required=True)
    p_extract.add_argument("--rules")
    p_extract.set_defaults(func=cmd_extract)

    p_serve = sub.add_parser("serve", help="start the HTTP API")
    p_serve.add_argument("--store", required=True)
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--rules")
    p_serve.add_argument("--ui", help="directory with a built UI bundle to serve at /")
    p_serve.set_defaults(func=cmd_serve)

    p_verify = sub.add_parser("verify", help="run store invariant checks")
    p_verify.add_argument("--store", required=True)
    p_verify.set_defaults(func=cmd_verify)

    p_report = sub.add_parser(
        "report", help="render timeline/map figures and CSVs into a directory"
    )
    p_report.add_argument("--store", required=True)
    p_report.add_argument("--out", required=True)
    p_report.add_argument("--from", dest="from_", metavar="YYYY-MM-DD")
    p_report.add_argument("--to", metavar="YYYY-MM-DD")
    p_report.add_argument("--lod", default="month",
                          choices=[l.value for l in LevelOfDetail])
    p_report.add_argument("--class", dest="class_", help="restriction class filter")
    p_report.add_argument("--bbox", help="minLon,minLat,maxLon,maxLat")
    p_report.add_argument("--category", help="polygon category filter")
    p_report.add_argument("--polygon", help="also report overlaps/restrictions of this polygon")
    p_report.set_defaults(func=cmd_report)

    return parser


def _load_rules(path: str | None) -> RuleTable:
    return RuleTable.load(path) if path else default_rules()


def _parse_cli_bbox(raw: str | None) -> BoundingBox | None:
    if not raw:
        return None
    parts = [float(x) for x in raw.split(",")]
    if len(parts) != 4:
        raise ValueError("bbox must be minLon,minLat,maxLon,maxLat")
    return BoundingBox(*parts)


# ---------------------------------------------------------------------------
# ingest


def cmd_ingest(args) -> int:
    corpus = Path(args.corpus)
    if not corpus.is_dir():
        print(f"error: corpus directory {corpus} not found", file=sys.stderr)
        return 1
    rules = _load_rules(args.rules)
    store = GraphStore(journal_path=args.store)

    inserted_polygons = 0
    overlap_edges = 0

    base = corpus / "polygons.json"
    if base.exists():
        for obj in json.loads(base.read_text(encoding="utf-8")):
            _, edges = store.insert_polygon(GeoPolygon.from_json(obj))
            inserted_polygons += 1
            overlap_edges += len(edges)

    total_refs = 0
    total_warnings = 0
    doc_count = 0
    for txt in sorted(corpus.glob("*.txt")):
        doc_id = txt.stem
        meta_path = corpus / f"{doc_id}.meta.json"
        if not meta_path.exists():
            print(f"error: missing sidecar {meta_path.name}", file=sys.stderr)
            store.close()
            return 1
        meta = json.loads(meta_path.read_text(encoding="utf-8"))
        polygon_ids = []
        for entry in meta["polygons"]:
            if isinstance(entry, str):
                polygon_ids.append(entry)
            else:
                pid, edges = store.insert_polygon(GeoPolygon.from_json(entry))
                inserted_polygons += 1
                overlap_edges += len(edges)
                polygon_ids.append(pid)
        text = txt.read_text(encoding="utf-8")
        result = extract_document(doc_id, text, rules)
        doc = Document(
            id=doc_id,
            title=meta.get("title", doc_id),
            text=text,
            source_path=str(txt),
            ingested_at=datetime.now(timezone.utc).isoformat(),
        )
        store.attach_document(polygon_ids, doc, result.refs)
        doc_count += 1
        total_refs += len(result.refs)
        total_warnings += len(result.warnings)
        print(f"{doc_id}: {len(result.refs)} refs, {len(result.warnings)} warnings")
        for w in result.warnings:
            print(f"  warning: {w}")

    print(
        f"ingested {doc_count} documents, {total_refs} refs, "
        f"{inserted_polygons} polygons, {overlap_edges} overlap edges, "
        f"{total_warnings} warnings"
    )
    store.close()
    return 0


# ---------------------------------------------------------------------------
# extract


def cmd_extract(args) -> int:
    rules = _load_rules(args.rules)
    path = Path(args.text)
    text = path.read_text(encoding="utf-8")
    result = extract_document(path.stem, text, rules)
    print(json.dumps([r.to_json() for r in result.refs], indent=2, ensure_ascii=False))
    for w in result.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# serve


def cmd_serve(args) -> int:
    import uvicorn

    store = GraphStore(journal_path=args.store)
    app = create_app(store, rules=_load_rules(args.rules), ui_dir=args.ui)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    try:
        store = GraphStore.open(args.store)
    except JournalError as exc:
        print(f"journal corrupt: {exc}", file=sys.stderr)
        return 1
    problems = store.verify()
    store.close()
    if problems:
        for p in problems:
            print(f"violation: {p}", file=sys.stderr)
        return 1
    nodes, edges = store.counts()
    print(f"ok: {nodes} nodes, {edges} edges, all invariants hold")
    return 0


# ---------------------------------------------------------------------------
# report


def cmd_report(args) -> int:
    from datetime import date

    store = GraphStore.open(args.store)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    if args.from_ and args.to:
        start, end = date.fromisoformat(args.from_), date.fromisoformat(args.to)
    else:
        start, end = report.store_date_span(store)

    lod = LevelOfDetail.parse(args.lod)
    bbox = _parse_cli_bbox(args.bbox)
    query = TimelineQuery(
        range_start=start,
        range_end=end,
        lod=lod,
        class_filter=args.class_,
        bbox=bbox,
        category_filter=args.category,
    )
    buckets = timeline.aggregate(query, store)
    written = [
        report.write_timeline_csv(buckets, out / "timeline.csv"),
        report.timeline_figure(buckets, lod, out / "timeline.png"),
    ]

    polygons = store.query_viewport(bbox) if bbox else store.polygons()
    if args.category:
        polygons = [p for p in polygons if p.category == args.category]
    written.append(
        report.map_figure(polygons, out / "map.png", highlight_id=args.polygon)
    )

    if args.polygon:
        entries = store.query_overlapping(args.polygon)
        groups = planning.applicable_restrictions(args.polygon, store)
        written.append(report.write_overlaps_csv(entries, out / "overlaps.csv"))
        written.append(report.write_restrictions_csv(groups, out / "restrictions.csv"))

    for path in written:
        print(f"wrote {path}")
    store.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
