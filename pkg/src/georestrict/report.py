"""Static report rendering: timeline bars and category maps to image
files, with the same numbers alongside as CSV.

The figures mirror the interactive views: document counts as green bars
over a linear scale, polygons semi-transparent in one color per category
over a plain gray canvas, the selected polygon with an orange border.
"""

from __future__ import annotations

import csv
from datetime import date, timedelta
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Polygon as MplPolygon

from .extraction import ExtentForm
from .geometry import GeoPolygon
from .planning import TopicRestrictions
from .store import GraphStore, OverlapEntry
from .timeline import LevelOfDetail, TimelineBucket

BAR_GREEN = "#2e8b57"
HIGHLIGHT_ORANGE = "#ff8c00"

_CATEGORY_COLORS = [
    "#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3",
    "#937860", "#da8bc3", "#8c8c8c", "#ccb974", "#64b5cd",
]


def category_color_map(categories: list[str]) -> dict[str, str]:
    ordered = sorted(set(categories))
    return {c: _CATEGORY_COLORS[i % len(_CATEGORY_COLORS)] for i, c in enumerate(ordered)}


def timeline_figure(
    buckets: list[TimelineBucket], lod: LevelOfDetail, path: str | Path
) -> Path:
    fig, ax = plt.subplots(figsize=(11, 3.2))
    xs = range(len(buckets))
    ax.bar(xs, [b.document_count for b in buckets], color=BAR_GREEN, width=0.85)
    ax.set_ylabel("documents")
    ax.set_ylim(bottom=0)
    labels = [b.bucket_start.isoformat() for b in buckets]
    step = max(1, len(labels) // 24)
    ax.set_xticks(list(xs)[::step])
    ax.set_xticklabels(labels[::step], rotation=45, ha="right", fontsize=7)
    ax.set_title(f"documents per {lod.value}")
    ax.spines[["top", "right"]].set_visible(False)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def map_figure(
    polygons: list[GeoPolygon],
    path: str | Path,
    highlight_id: str | None = None,
    extra: GeoPolygon | None = None,
) -> Path:
    fig, ax = plt.subplots(figsize=(9, 8))
    ax.set_facecolor("#f0f0f0")
    colors = category_color_map([p.category for p in polygons])
    drawn = set()
    for p in polygons:
        xy = [(pt.lon, pt.lat) for pt in p.ring]
        label = p.category if p.category not in drawn else None
        drawn.add(p.category)
        ax.add_patch(
            MplPolygon(
                xy,
                closed=True,
                facecolor=colors[p.category],
                alpha=0.45,
                edgecolor=colors[p.category],
                linewidth=0.8,
                label=label,
            )
        )
        if p.id == highlight_id:
            ax.add_patch(
                MplPolygon(xy, closed=True, fill=False,
                           edgecolor=HIGHLIGHT_ORANGE, linewidth=2.5)
            )
    if extra is not None:
        xy = [(pt.lon, pt.lat) for pt in extra.ring]
        ax.add_patch(
            MplPolygon(xy, closed=True, fill=False,
                       edgecolor=HIGHLIGHT_ORANGE, linewidth=2.5, linestyle="--",
                       label=f"new: {extra.id}")
        )
    ax.autoscale_view()
    ax.relim()
    for p in polygons:
        for pt in p.ring:
            ax.plot(pt.lon, pt.lat, alpha=0)  # grow limits
    ax.set_aspect(1.6)  # rough lon/lat aspect at mid latitudes
    ax.grid(color="white", linewidth=0.8)
    ax.set_xlabel("lon")
    ax.set_ylabel("lat")
    if drawn:
        ax.legend(loc="upper right", fontsize=7)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def write_timeline_csv(buckets: list[TimelineBucket], path: str | Path) -> Path:
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["bucket_start", "lod", "document_count"])
        for b in buckets:
            writer.writerow([b.bucket_start.isoformat(), b.lod.value, b.document_count])
    return path


def write_overlaps_csv(entries: list[OverlapEntry], path: str | Path) -> Path:
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["polygon_id", "category", "overlap_area_m2",
                         "doc_id", "topic", "kind", "extent"])
        for e in entries:
            if not e.documents:
                writer.writerow([e.polygon.id, e.polygon.category,
                                 f"{e.area_m2:.2f}", "", "", "", ""])
            for d in e.documents:
                if not d.refs:
                    writer.writerow([e.polygon.id, e.polygon.category,
                                     f"{e.area_m2:.2f}", d.document.id, "", "", ""])
                for r in d.refs:
                    writer.writerow([
                        e.polygon.id, e.polygon.category, f"{e.area_m2:.2f}",
                        d.document.id, r.classification.topic,
                        r.classification.kind.value, _extent_label(r.extent),
                    ])
    return path


def write_restrictions_csv(groups: list[TopicRestrictions], path: str | Path) -> Path:
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["topic", "doc_id", "kind", "extent", "undated", "sentence"])
        for g in groups:
            for r in g.refs:
                writer.writerow([
                    g.topic, r["docId"], r["kind"], _extent_json_label(r["extent"]),
                    "yes" if r.get("undated") else "no", r["sentence"],
                ])
    return path


def _extent_label(extent) -> str:
    if extent.form is ExtentForm.ABSOLUTE:
        return f"{extent.start.isoformat()}..{extent.end.isoformat()}"
    if extent.form is ExtentForm.RECURRING:
        return (f"yearly {extent.recur_start_month:02d}-{extent.recur_start_day:02d}"
                f"..{extent.recur_end_month:02d}-{extent.recur_end_day:02d}")
    return "undated"


def _extent_json_label(obj: dict) -> str:
    if obj["form"] == "absolute":
        return f"{obj['start']}..{obj['end']}"
    if obj["form"] == "recurring":
        return (f"yearly {obj['startMonth']:02d}-{obj['startDay']:02d}"
                f"..{obj['endMonth']:02d}-{obj['endDay']:02d}")
    return "undated"


def store_date_span(store: GraphStore) -> tuple[date, date]:
    """Smallest range covering every dated extent, padded a little;
    falls back to the current year on an undated store."""
    lo = None
    hi = None
    for doc in store.documents():
        for ref in store.refs_for_document(doc.id):
            extent = ref.extent
            if extent.form is ExtentForm.ABSOLUTE:
                lo = extent.start if lo is None else min(lo, extent.start)
                hi = extent.end if hi is None else max(hi, extent.end)
    if lo is None:
        today = date.today()
        return date(today.year, 1, 1), date(today.year, 12, 31)
    return lo - timedelta(days=31), hi + timedelta(days=31)
