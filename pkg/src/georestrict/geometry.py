"""Planar polygon geometry over a local equirectangular projection.

Polygons arrive as WGS84 rings. All boolean work (overlap detection,
intersection regions, areas) happens in a local tangent-plane projection in
meters; results that leave the module are either meter quantities or rings
projected back to degrees.

The intersection routine builds the planar overlay of both edge sets and
keeps the faces that lie inside both input rings. That handles the touchy
cases (identical rings, shared boundary segments, T-junctions) that make
classic vertex-walking clippers fall over.

Everything here is a pure function over immutable values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

EARTH_RADIUS_M = 6_371_000.0

# Planar slivers below this are numeric noise, not overlap (m^2).
MIN_PART_AREA_M2 = 1e-9

# Positive overlap must exceed this before two polygons count as overlapping,
# so rings that merely share a boundary do not get an edge (m^2).
OVERLAP_AREA_EPSILON_M2 = 1.0


class GeometryError(ValueError):
    """Raised when geometry input violates an invariant.

    ``code`` is a stable machine-readable tag: ring_too_short,
    repeated_vertex, collinear_vertices, self_intersection, zero_area,
    coordinate_bounds, origin_mismatch, degenerate_path.
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class GeoPoint:
    lon: float
    lat: float

    def __post_init__(self):
        if not (math.isfinite(self.lon) and math.isfinite(self.lat)):
            raise GeometryError("coordinate_bounds", "coordinates must be finite")
        if not (-180.0 <= self.lon <= 180.0 and -90.0 <= self.lat <= 90.0):
            raise GeometryError(
                "coordinate_bounds",
                f"({self.lon}, {self.lat}) outside lon [-180,180] / lat [-90,90]",
            )


@dataclass(frozen=True)
class BoundingBox:
    min_lon: float
    min_lat: float
    max_lon: float
    max_lat: float

    def __post_init__(self):
        if self.min_lon > self.max_lon or self.min_lat > self.max_lat:
            raise GeometryError("coordinate_bounds", "bounding box min exceeds max")

    def intersects(self, other: "BoundingBox") -> bool:
        return not (
            self.max_lon < other.min_lon
            or other.max_lon < self.min_lon
            or self.max_lat < other.min_lat
            or other.max_lat < self.min_lat
        )

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.min_lon, self.min_lat, self.max_lon, self.max_lat)


@dataclass(frozen=True)
class GeoPolygon:
    """Simple polygon in WGS84. The ring is the exterior only and is stored
    unclosed (first vertex is not repeated at the end)."""

    id: str
    ring: tuple[GeoPoint, ...]
    category: str

    def __post_init__(self):
        object.__setattr__(self, "ring", tuple(self.ring))
        _validate_geo_ring(self.ring)

    def bounding_box(self) -> BoundingBox:
        lons = [p.lon for p in self.ring]
        lats = [p.lat for p in self.ring]
        return BoundingBox(min(lons), min(lats), max(lons), max(lats))

    def centroid(self) -> GeoPoint:
        # vertex mean is enough for picking a projection origin
        return GeoPoint(
            sum(p.lon for p in self.ring) / len(self.ring),
            sum(p.lat for p in self.ring) / len(self.ring),
        )

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "category": self.category,
            "ring": [[p.lon, p.lat] for p in self.ring],
        }

    @staticmethod
    def from_json(obj: dict) -> "GeoPolygon":
        try:
            ring = tuple(GeoPoint(float(lon), float(lat)) for lon, lat in obj["ring"])
            return GeoPolygon(id=str(obj["id"]), ring=ring, category=str(obj["category"]))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, GeometryError):
                raise
            raise GeometryError("coordinate_bounds", f"malformed polygon JSON: {exc}") from exc


@dataclass(frozen=True)
class PlanarPolygon:
    """Polygon in local planar meters; ``origin`` is the projection anchor."""

    ring: tuple[tuple[float, float], ...]
    origin: GeoPoint

    def __post_init__(self):
        object.__setattr__(self, "ring", tuple((float(x), float(y)) for x, y in self.ring))
        if len(self.ring) < 3:
            raise GeometryError("ring_too_short", "planar ring needs at least 3 vertices")


def _validate_geo_ring(ring: tuple[GeoPoint, ...]) -> None:
    if len(ring) < 3:
        raise GeometryError("ring_too_short", f"ring has {len(ring)} vertices, need at least 3")
    if ring[0] == ring[-1]:
        raise GeometryError(
            "repeated_vertex", "ring closure is implicit; do not repeat the first vertex"
        )
    seen = set()
    for p in ring:
        key = (p.lon, p.lat)
        if key in seen:
            raise GeometryError("repeated_vertex", f"vertex ({p.lon}, {p.lat}) appears twice")
        seen.add(key)

    origin = GeoPoint(
        sum(p.lon for p in ring) / len(ring), sum(p.lat for p in ring) / len(ring)
    )
    pts = [_project_point(p, origin) for p in ring]
    scale = _ring_scale(pts)
    tol = 1e-9 * max(1.0, scale)

    n = len(pts)
    for i in range(n):
        a, b, c = pts[i - 1], pts[i], pts[(i + 1) % n]
        cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        if abs(cross) <= tol * max(_dist(a, b), _dist(b, c), 1e-12):
            raise GeometryError(
                "collinear_vertices",
                f"vertex {i} is collinear with its neighbours",
            )
    if _ring_has_self_intersection(pts, tol):
        raise GeometryError("self_intersection", "ring edges cross each other")
    if abs(_signed_area(pts)) <= max(tol * scale, 1e-12):
        raise GeometryError("zero_area", "ring encloses no area")


def _ring_scale(pts: list[tuple[float, float]]) -> float:
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return max(max(xs) - min(xs), max(ys) - min(ys), 0.0)


def _dist(a: tuple[float, float], b: tuple[float, float]) -> float:
    return math.hypot(b[0] - a[0], b[1] - a[1])


def _ring_has_self_intersection(pts: list[tuple[float, float]], tol: float) -> bool:
    n = len(pts)
    for i in range(n):
        a1, a2 = pts[i], pts[(i + 1) % n]
        for j in range(i + 1, n):
            # adjacent edges share exactly one endpoint, skip them
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue
            b1, b2 = pts[j], pts[(j + 1) % n]
            if _segments_touch(a1, a2, b1, b2, tol):
                return True
    return False


def _segments_touch(p1, p2, q1, q2, tol: float) -> bool:
    """True if two non-adjacent segments intersect or overlap at all."""
    d1 = (p2[0] - p1[0], p2[1] - p1[1])
    d2 = (q2[0] - q1[0], q2[1] - q1[1])
    denom = d1[0] * d2[1] - d1[1] * d2[0]
    len1 = math.hypot(*d1)
    len2 = math.hypot(*d2)
    if len1 == 0.0 or len2 == 0.0:
        return False
    if abs(denom) > 1e-12 * len1 * len2:
        r = (q1[0] - p1[0], q1[1] - p1[1])
        t = (r[0] * d2[1] - r[1] * d2[0]) / denom
        u = (r[0] * d1[1] - r[1] * d1[0]) / denom
        eps_t = tol / len1
        eps_u = tol / len2
        return -eps_t <= t <= 1 + eps_t and -eps_u <= u <= 1 + eps_u
    # parallel: overlap only if collinear and parameter ranges meet
    if _point_line_dist(q1, p1, d1, len1) > tol:
        return False
    t1 = ((q1[0] - p1[0]) * d1[0] + (q1[1] - p1[1]) * d1[1]) / (len1 * len1)
    t2 = ((q2[0] - p1[0]) * d1[0] + (q2[1] - p1[1]) * d1[1]) / (len1 * len1)
    lo, hi = min(t1, t2), max(t1, t2)
    eps = tol / len1
    return hi >= -eps and lo <= 1 + eps


def _point_line_dist(p, a, d, dlen) -> float:
    return abs((p[0] - a[0]) * d[1] - (p[1] - a[1]) * d[0]) / dlen


def _signed_area(pts) -> float:
    total = 0.0
    n = len(pts)
    for i in range(n):
        x1, y1 = pts[i]
        x2, y2 = pts[(i + 1) % n]
        total += x1 * y2 - x2 * y1
    return total / 2.0


# ---------------------------------------------------------------------------
# projection


def _project_point(p: GeoPoint, origin: GeoPoint) -> tuple[float, float]:
    k = math.pi / 180.0
    x = EARTH_RADIUS_M * math.cos(math.radians(origin.lat)) * (p.lon - origin.lon) * k
    y = EARTH_RADIUS_M * (p.lat - origin.lat) * k
    return (x, y)


def _unproject_point(xy: tuple[float, float], origin: GeoPoint) -> GeoPoint:
    k = 180.0 / math.pi
    lon = origin.lon + xy[0] / (EARTH_RADIUS_M * math.cos(math.radians(origin.lat))) * k
    lat = origin.lat + xy[1] / EARTH_RADIUS_M * k
    return GeoPoint(lon, lat)


def project(p: GeoPolygon, origin: GeoPoint) -> PlanarPolygon:
    """Equirectangular local projection of a polygon around ``origin``."""
    return PlanarPolygon(
        ring=tuple(_project_point(pt, origin) for pt in p.ring), origin=origin
    )


def unproject(p: PlanarPolygon, polygon_id: str = "", category: str = "") -> GeoPolygon:
    """Inverse of :func:`project`; validates the resulting ring."""
    return GeoPolygon(
        id=polygon_id,
        ring=tuple(_unproject_point(xy, p.origin) for xy in p.ring),
        category=category,
    )


def area(p: PlanarPolygon) -> float:
    """Unsigned area in m^2; orientation does not matter."""
    if len(p.ring) < 3:
        raise GeometryError("ring_too_short", "cannot take area of a degenerate ring")
    a = abs(_signed_area(list(p.ring)))
    if a == 0.0:
        raise GeometryError("zero_area", "ring encloses no area")
    return a


def bounding_box(p: GeoPolygon) -> BoundingBox:
    return p.bounding_box()


def combined_origin(*polygons: GeoPolygon) -> GeoPoint:
    """Shared projection origin: center of the combined bounding box.

    Symmetric in its arguments, so pairwise overlap checks see the same
    plane regardless of argument order.
    """
    boxes = [p.bounding_box() for p in polygons]
    min_lon = min(b.min_lon for b in boxes)
    max_lon = max(b.max_lon for b in boxes)
    min_lat = min(b.min_lat for b in boxes)
    max_lat = max(b.max_lat for b in boxes)
    return GeoPoint((min_lon + max_lon) / 2.0, (min_lat + max_lat) / 2.0)


# ---------------------------------------------------------------------------
# planar overlay intersection


def intersection(
    a: PlanarPolygon, b: PlanarPolygon, min_part_area: float = MIN_PART_AREA_M2
) -> list[PlanarPolygon]:
    """Boolean intersection region of two simple planar polygons.

    Returns zero or more disjoint simple parts, each with area above
    ``min_part_area``. Both inputs must share the same projection origin.
    """
    if a.origin != b.origin:
        raise GeometryError(
            "origin_mismatch", "planar polygons were projected around different origins"
        )
    faces = _overlay_intersection(list(a.ring), list(b.ring), min_part_area)
    return [PlanarPolygon(ring=tuple(face), origin=a.origin) for face in faces]


def intersection_area(
    a: PlanarPolygon, b: PlanarPolygon, min_part_area: float = MIN_PART_AREA_M2
) -> float:
    return sum(abs(_signed_area(list(part.ring))) for part in intersection(a, b, min_part_area))


def overlaps(
    a: GeoPolygon, b: GeoPolygon, area_epsilon: float = OVERLAP_AREA_EPSILON_M2
) -> bool:
    """True iff the intersection area exceeds ``area_epsilon`` (m^2)."""
    return overlap_area(a, b) > area_epsilon


def overlap_area(a: GeoPolygon, b: GeoPolygon) -> float:
    """Intersection area of two WGS84 polygons in m^2 (0.0 when apart)."""
    if not a.bounding_box().intersects(b.bounding_box()):
        return 0.0
    origin = combined_origin(a, b)
    return intersection_area(project(a, origin), project(b, origin))


def _ensure_ccw(pts: list[tuple[float, float]]) -> list[tuple[float, float]]:
    return pts if _signed_area(pts) > 0 else list(reversed(pts))


def _overlay_intersection(ring_a, ring_b, min_part_area):
    ring_a = _ensure_ccw(ring_a)
    ring_b = _ensure_ccw(ring_b)
    scale = max(_ring_scale(ring_a + ring_b), 1.0)
    tol = 1e-9 * scale

    segs = [(ring_a[i], ring_a[(i + 1) % len(ring_a)]) for i in range(len(ring_a))]
    offset_b = len(segs)
    segs += [(ring_b[i], ring_b[(i + 1) % len(ring_b)]) for i in range(len(ring_b))]
    cuts: list[list[float]] = [[0.0, 1.0] for _ in segs]

    for i in range(offset_b):
        for j in range(offset_b, len(segs)):
            for t_a, t_b in _cut_params(segs[i], segs[j], tol):
                cuts[i].append(t_a)
                cuts[j].append(t_b)

    snap = _SnapIndex(tol)
    adjacency: dict[int, set[int]] = {}
    for (start, end), ts in zip(segs, cuts):
        ts = sorted(set(min(1.0, max(0.0, t)) for t in ts))
        node_ids = []
        for t in ts:
            x = start[0] + (end[0] - start[0]) * t
            y = start[1] + (end[1] - start[1]) * t
            node_ids.append(snap.add((x, y)))
        for u, v in zip(node_ids, node_ids[1:]):
            if u == v:
                continue
            adjacency.setdefault(u, set()).add(v)
            adjacency.setdefault(v, set()).add(u)

    points = snap.points
    sorted_neighbors: dict[int, list[int]] = {}
    for u, nbrs in adjacency.items():
        ux, uy = points[u]
        sorted_neighbors[u] = sorted(
            nbrs, key=lambda v: math.atan2(points[v][1] - uy, points[v][0] - ux)
        )

    all_edges = [
        (points[u], points[v])
        for u, nbrs in adjacency.items()
        for v in nbrs
        if u < v
    ]

    faces = []
    visited: set[tuple[int, int]] = set()
    for u in sorted(adjacency):
        for v in sorted_neighbors[u]:
            if (u, v) in visited:
                continue
            cycle = _trace_face(u, v, sorted_neighbors, visited)
            if cycle is None:
                continue
            pts = [points[n] for n in cycle]
            if _signed_area(pts) <= max(min_part_area, tol * tol):
                continue
            rep = _face_interior_point(pts, all_edges, tol)
            if rep is None:
                continue
            if _point_in_ring(rep, ring_a) and _point_in_ring(rep, ring_b):
                faces.append(pts)
    return faces


def _trace_face(u0, v0, sorted_neighbors, visited):
    cycle = []
    u, v = u0, v0
    for _ in range(200000):
        visited.add((u, v))
        cycle.append(u)
        nbrs = sorted_neighbors[v]
        idx = nbrs.index(u)
        w = nbrs[idx - 1]  # clockwise neighbour of the reverse edge
        u, v = v, w
        if (u, v) == (u0, v0):
            return cycle
    return None  # walk failed to close; degenerate input


def _cut_params(sa, sb, tol):
    """Parameter pairs where segment ``sa`` meets segment ``sb``."""
    p1, p2 = sa
    q1, q2 = sb
    d1 = (p2[0] - p1[0], p2[1] - p1[1])
    d2 = (q2[0] - q1[0], q2[1] - q1[1])
    len1 = math.hypot(*d1)
    len2 = math.hypot(*d2)
    if len1 == 0.0 or len2 == 0.0:
        return []
    denom = d1[0] * d2[1] - d1[1] * d2[0]
    if abs(denom) > 1e-12 * len1 * len2:
        r = (q1[0] - p1[0], q1[1] - p1[1])
        t = (r[0] * d2[1] - r[1] * d2[0]) / denom
        u = (r[0] * d1[1] - r[1] * d1[0]) / denom
        eps_t = tol / len1
        eps_u = tol / len2
        if -eps_t <= t <= 1 + eps_t and -eps_u <= u <= 1 + eps_u:
            return [(t, u)]
        return []
    # parallel segments: collect the collinear overlap endpoints
    if _point_line_dist(q1, p1, d1, len1) > tol:
        return []
    inv = 1.0 / (len1 * len1)
    tq1 = ((q1[0] - p1[0]) * d1[0] + (q1[1] - p1[1]) * d1[1]) * inv
    tq2 = ((q2[0] - p1[0]) * d1[0] + (q2[1] - p1[1]) * d1[1]) * inv
    lo_t = max(0.0, min(tq1, tq2))
    hi_t = min(1.0, max(tq1, tq2))
    if hi_t < lo_t - tol / len1:
        return []

    def u_of(t):
        x = p1[0] + d1[0] * t
        y = p1[1] + d1[1] * t
        return ((x - q1[0]) * d2[0] + (y - q1[1]) * d2[1]) / (len2 * len2)

    return [(lo_t, u_of(lo_t)), (hi_t, u_of(hi_t))]


class _SnapIndex:
    """Clusters points that sit within ``tol`` of each other onto one node."""

    def __init__(self, tol: float):
        self.tol = tol
        self.points: list[tuple[float, float]] = []
        self._grid: dict[tuple[int, int], list[int]] = {}

    def add(self, p: tuple[float, float]) -> int:
        cx = round(p[0] / max(self.tol, 1e-300))
        cy = round(p[1] / max(self.tol, 1e-300))
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for idx in self._grid.get((cx + dx, cy + dy), ()):
                    q = self.points[idx]
                    if abs(q[0] - p[0]) <= self.tol and abs(q[1] - p[1]) <= self.tol:
                        return idx
        idx = len(self.points)
        self.points.append(p)
        self._grid.setdefault((cx, cy), []).append(idx)
        return idx


def _face_interior_point(cycle_pts, all_edges, tol):
    """A point strictly inside the face traced by ``cycle_pts`` (CCW)."""
    n = len(cycle_pts)
    for i in range(n):
        p = cycle_pts[i]
        q = cycle_pts[(i + 1) % n]
        length = _dist(p, q)
        if length <= 10 * tol:
            continue
        m = ((p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0)
        nx = -(q[1] - p[1]) / length
        ny = (q[0] - p[0]) / length
        clearance = math.inf
        for e1, e2 in all_edges:
            if (e1 == p and e2 == q) or (e1 == q and e2 == p):
                continue
            clearance = min(clearance, _point_segment_dist(m, e1, e2))
            if clearance <= 10 * tol:
                break
        delta = min(length / 4.0, clearance / 2.0)
        if delta <= 10 * tol:
            continue
        return (m[0] + nx * delta, m[1] + ny * delta)
    return None


def _point_segment_dist(p, a, b) -> float:
    dx, dy = b[0] - a[0], b[1] - a[1]
    l2 = dx * dx + dy * dy
    if l2 == 0.0:
        return _dist(p, a)
    t = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / l2
    t = max(0.0, min(1.0, t))
    return _dist(p, (a[0] + dx * t, a[1] + dy * t))


def _point_in_ring(p, ring) -> bool:
    """Ray-crossing test; ``p`` is expected to be off the boundary."""
    x, y = p
    inside = False
    n = len(ring)
    for i in range(n):
        x1, y1 = ring[i]
        x2, y2 = ring[(i + 1) % n]
        if (y1 > y) != (y2 > y):
            x_cross = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if x_cross > x:
                inside = not inside
    return inside


# ---------------------------------------------------------------------------
# path buffering


def buffer_path(
    points: list[GeoPoint],
    width_m: float,
    polygon_id: str = "",
    category: str = "",
) -> GeoPolygon:
    """Buffer a polyline into a simple polygon of the given total width.

    Caps and outside joins are approximated with 8-segment arcs; inside
    joins are mitered. Consecutive duplicate points are collapsed first.
    """
    if width_m <= 0:
        raise GeometryError("degenerate_path", "buffer width must be positive")
    if len(points) < 2:
        raise GeometryError("degenerate_path", "a path needs at least 2 points")

    # exact consecutive duplicates must not influence anything, origin included
    deduped = [points[0]]
    for p in points[1:]:
        if (p.lon, p.lat) != (deduped[-1].lon, deduped[-1].lat):
            deduped.append(p)
    if len(deduped) < 2:
        raise GeometryError("degenerate_path", "path collapses to a single point")

    lon0 = sum(p.lon for p in deduped) / len(deduped)
    lat0 = sum(p.lat for p in deduped) / len(deduped)
    origin = GeoPoint(lon0, lat0)
    pts = [_project_point(p, origin) for p in deduped]

    r = width_m / 2.0
    pts = _collapse_path(pts, tol=min(r * 1e-6, 1e-3))
    if len(pts) < 2:
        raise GeometryError("degenerate_path", "path collapses to a single point")

    outline: list[tuple[float, float]] = []
    outline += _offset_side(pts, r)
    outline += _cap_arc(pts[-1], pts[-2], r)
    outline += _offset_side(list(reversed(pts)), r)
    outline += _cap_arc(pts[0], pts[1], r)

    outline = _collapse_ring(outline, tol=r * 1e-9)
    outline = _drop_collinear(outline, tol=r * 1e-9)
    if _signed_area(outline) < 0:
        outline.reverse()

    ring = tuple(_unproject_point(xy, origin) for xy in outline)
    return GeoPolygon(id=polygon_id, ring=ring, category=category)


def _collapse_path(pts, tol):
    out = [pts[0]]
    for p in pts[1:]:
        if _dist(p, out[-1]) > tol:
            out.append(p)
    if len(out) < 2:
        return out
    # drop interior points with no turn at all; they only add noise
    cleaned = [out[0]]
    for i in range(1, len(out) - 1):
        a, b, c = cleaned[-1], out[i], out[i + 1]
        cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        if abs(cross) > 1e-12 * max(_dist(a, b) * _dist(b, c), 1e-12):
            cleaned.append(b)
    cleaned.append(out[-1])
    return cleaned


def _left_normal(a, b):
    dx, dy = b[0] - a[0], b[1] - a[1]
    length = math.hypot(dx, dy)
    return (-dy / length, dx / length)


def _offset_side(pts, r):
    """Left-hand offset outline of a polyline, joins included."""
    out: list[tuple[float, float]] = []
    for i in range(len(pts) - 1):
        a, b = pts[i], pts[i + 1]
        n = _left_normal(a, b)
        start = (a[0] + n[0] * r, a[1] + n[1] * r)
        end = (b[0] + n[0] * r, b[1] + n[1] * r)
        if i > 0:
            prev_a, prev_b = pts[i - 1], pts[i]
            cross = (prev_b[0] - prev_a[0]) * (b[1] - a[1]) - (prev_b[1] - prev_a[1]) * (
                b[0] - a[0]
            )
            if cross < 0:
                # right turn: the left side opens up, round it off
                n_prev = _left_normal(prev_a, prev_b)
                a0 = math.atan2(n_prev[1], n_prev[0])
                a1 = math.atan2(n[1], n[0])
                out += _arc(a, r, a0, a1, ccw=False)[1:-1]
            else:
                # left turn: offset lines cross, miter to their intersection
                miter = _line_intersection(
                    (prev_a[0] + _left_normal(prev_a, prev_b)[0] * r,
                     prev_a[1] + _left_normal(prev_a, prev_b)[1] * r),
                    (prev_b[0] - prev_a[0], prev_b[1] - prev_a[1]),
                    start,
                    (b[0] - a[0], b[1] - a[1]),
                )
                if miter is not None and out:
                    out[-1] = miter
                    start = miter
        out.append(start)
        out.append(end)
    return out


def _line_intersection(p, d, q, e):
    denom = d[0] * e[1] - d[1] * e[0]
    if abs(denom) < 1e-15 * (math.hypot(*d) * math.hypot(*e) + 1e-300):
        return None
    t = ((q[0] - p[0]) * e[1] - (q[1] - p[1]) * e[0]) / denom
    return (p[0] + d[0] * t, p[1] + d[1] * t)


def _cap_arc(tip, prev, r):
    """Semicircular cap (8 segments) around ``tip``, sweeping from the left
    side of travel prev->tip around to the right side."""
    dx, dy = tip[0] - prev[0], tip[1] - prev[1]
    heading = math.atan2(dy, dx)
    a0 = heading + math.pi / 2.0
    a1 = heading - math.pi / 2.0
    return _arc(tip, r, a0, a1, ccw=False)


def _arc(center, r, a0, a1, ccw: bool, segments: int = 8):
    if ccw:
        while a1 <= a0:
            a1 += 2 * math.pi
    else:
        while a1 >= a0:
            a1 -= 2 * math.pi
    step = (a1 - a0) / segments
    return [
        (center[0] + r * math.cos(a0 + step * k), center[1] + r * math.sin(a0 + step * k))
        for k in range(segments + 1)
    ]


def _collapse_ring(pts, tol):
    out = []
    for p in pts:
        if not out or _dist(p, out[-1]) > tol:
            out.append(p)
    while len(out) > 1 and _dist(out[0], out[-1]) <= tol:
        out.pop()
    return out


def _drop_collinear(pts, tol):
    out = list(pts)
    changed = True
    while changed and len(out) > 3:
        changed = False
        for i in range(len(out)):
            a = out[i - 1]
            b = out[i]
            c = out[(i + 1) % len(out)]
            cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
            if abs(cross) <= tol * max(_dist(a, b), _dist(b, c), 1e-12):
                out.pop(i)
                changed = True
                break
    return out


# ---------------------------------------------------------------------------
# viewport refinement


def ring_intersects_bbox(p: GeoPolygon, bbox: BoundingBox) -> bool:
    """True ring-versus-rectangle test in degree space."""
    if not p.bounding_box().intersects(bbox):
        return False
    ring = [(pt.lon, pt.lat) for pt in p.ring]
    for lon, lat in ring:
        if bbox.min_lon <= lon <= bbox.max_lon and bbox.min_lat <= lat <= bbox.max_lat:
            return True
    corners = [
        (bbox.min_lon, bbox.min_lat),
        (bbox.max_lon, bbox.min_lat),
        (bbox.max_lon, bbox.max_lat),
        (bbox.min_lon, bbox.max_lat),
    ]
    for corner in corners:
        if _point_in_ring(corner, ring):
            return True
    rect_edges = list(zip(corners, corners[1:] + corners[:1]))
    n = len(ring)
    for i in range(n):
        a, b = ring[i], ring[(i + 1) % n]
        for c, d in rect_edges:
            if _segments_touch(a, b, c, d, tol=0.0):
                return True
    return False
