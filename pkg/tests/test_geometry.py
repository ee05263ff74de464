from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from georestrict import geometry as geo
from georestrict.geometry import (
    BoundingBox,
    GeoPoint,
    GeoPolygon,
    GeometryError,
    PlanarPolygon,
    buffer_path,
    intersection,
    intersection_area,
    overlap_area,
    overlaps,
    project,
    unproject,
)
from oracle_utils import (
    bbox_intersection,
    bbox_of,
    mc_intersection_area,
    points_in_ring,
    random_overlapping_pair,
    random_star_ring,
)

ORIGIN = GeoPoint(0.0, 0.0)

# R * pi/180 * 0.001 deg, checked by hand calculator
METERS_PER_MILLIDEGREE = 111.19492664455874


def planar(ring, origin=ORIGIN) -> PlanarPolygon:
    return PlanarPolygon(ring=tuple(ring), origin=origin)


def unit_square(dx=0.0, dy=0.0):
    return [(dx, dy), (1 + dx, dy), (1 + dx, 1 + dy), (dx, 1 + dy)]


def degree_square(side=1e-5, lon0=0.0, lat0=0.0, pid="sq", category="test"):
    return GeoPolygon(
        id=pid,
        ring=(
            GeoPoint(lon0, lat0),
            GeoPoint(lon0 + side, lat0),
            GeoPoint(lon0 + side, lat0 + side),
            GeoPoint(lon0, lat0 + side),
        ),
        category=category,
    )


# ---------------------------------------------------------------------------
# validation


def test_ring_needs_three_vertices():
    with pytest.raises(GeometryError) as err:
        GeoPolygon(id="p", ring=(GeoPoint(0, 0), GeoPoint(1, 0)), category="c")
    assert err.value.code == "ring_too_short"


def test_explicitly_closed_ring_rejected():
    with pytest.raises(GeometryError) as err:
        GeoPolygon(
            id="p",
            ring=(GeoPoint(0, 0), GeoPoint(1e-3, 0), GeoPoint(0, 1e-3), GeoPoint(0, 0)),
            category="c",
        )
    assert err.value.code == "repeated_vertex"


def test_collinear_triple_rejected():
    with pytest.raises(GeometryError) as err:
        GeoPolygon(
            id="p",
            ring=(
                GeoPoint(0, 0),
                GeoPoint(5e-4, 0),
                GeoPoint(1e-3, 0),
                GeoPoint(0, 1e-3),
            ),
            category="c",
        )
    assert err.value.code == "collinear_vertices"


def test_self_intersecting_bowtie_rejected():
    with pytest.raises(GeometryError) as err:
        GeoPolygon(
            id="p",
            ring=(
                GeoPoint(0, 0),
                GeoPoint(1e-3, 1e-3),
                GeoPoint(1e-3, 0),
                GeoPoint(0, 1e-3),
            ),
            category="c",
        )
    assert err.value.code == "self_intersection"


def test_coordinates_out_of_bounds_rejected():
    with pytest.raises(GeometryError):
        GeoPoint(181.0, 0.0)
    with pytest.raises(GeometryError):
        GeoPoint(0.0, 91.0)
    with pytest.raises(GeometryError):
        GeoPoint(float("nan"), 0.0)


def test_polygon_json_round_trip():
    p = degree_square(pid="round", category="nature reserve")
    again = GeoPolygon.from_json(p.to_json())
    assert again == p


# ---------------------------------------------------------------------------
# projection


def test_project_millidegree_square_side_length():
    p = degree_square(side=0.001)
    pp = project(p, GeoPoint(0.0, 0.0))
    (x0, y0), (x1, _), _, (_, y3) = pp.ring
    assert abs((x1 - x0) - METERS_PER_MILLIDEGREE) < 1e-6
    assert abs((y3 - y0) - METERS_PER_MILLIDEGREE) < 1e-6


def test_project_origin_maps_to_zero():
    p = degree_square(lon0=12.4, lat0=51.3)
    pp = project(p, GeoPoint(12.4, 51.3))
    assert pp.ring[0] == (0.0, 0.0)


def test_project_unproject_round_trip():
    p = GeoPolygon(
        id="trip",
        ring=(
            GeoPoint(12.41, 51.21),
            GeoPoint(12.47, 51.22),
            GeoPoint(12.45, 51.27),
            GeoPoint(12.40, 51.25),
        ),
        category="test",
    )
    origin = GeoPoint(12.43, 51.24)
    back = unproject(project(p, origin), polygon_id="trip", category="test")
    for before, after in zip(p.ring, back.ring):
        assert abs(before.lon - after.lon) < 1e-9
        assert abs(before.lat - after.lat) < 1e-9


# ---------------------------------------------------------------------------
# area


def test_area_unit_square():
    assert geo.area(planar(unit_square())) == pytest.approx(1.0, abs=1e-12)


def test_area_triangle():
    assert geo.area(planar([(0, 0), (1, 0), (0, 1)])) == pytest.approx(0.5, abs=1e-12)


def test_area_orientation_independent():
    assert geo.area(planar(list(reversed(unit_square())))) == pytest.approx(1.0, abs=1e-12)


def test_area_degenerate_raises():
    with pytest.raises(GeometryError):
        geo.area(planar([(0, 0), (1, 0), (2, 0)]))


# ---------------------------------------------------------------------------
# intersection


def test_intersection_identical_squares():
    a = planar(unit_square())
    parts = intersection(a, planar(unit_square()))
    assert len(parts) == 1
    assert geo.area(parts[0]) == pytest.approx(1.0, abs=1e-9)


def test_intersection_half_overlapping_squares():
    a = planar(unit_square())
    b = planar([(0.5, 0), (1.5, 0), (1.5, 1), (0.5, 1)])
    parts = intersection(a, b)
    assert len(parts) == 1
    assert geo.area(parts[0]) == pytest.approx(0.5, abs=1e-9)


def test_intersection_disjoint_is_empty():
    a = planar(unit_square())
    b = planar(unit_square(dx=5.0))
    assert intersection(a, b) == []


def test_intersection_shared_edge_only_is_empty():
    a = planar(unit_square())
    b = planar(unit_square(dx=1.0))
    assert intersection_area(a, b) == pytest.approx(0.0, abs=1e-9)


def test_intersection_contained_polygon():
    outer = planar(unit_square())
    inner = planar([(0.25, 0.25), (0.75, 0.25), (0.75, 0.75), (0.25, 0.75)])
    parts = intersection(outer, inner)
    assert len(parts) == 1
    assert geo.area(parts[0]) == pytest.approx(0.25, abs=1e-9)


def test_intersection_multi_part():
    # U-shape against a bar across its two prongs: two disjoint parts
    u_shape = planar(
        [(0, 0), (3, 0), (3, 3), (2, 3), (2, 1), (1, 1), (1, 3), (0, 3)]
    )
    bar = planar([(0, 2), (3, 2), (3, 3), (0, 3)])
    parts = intersection(u_shape, bar)
    assert len(parts) == 2
    total = sum(geo.area(p) for p in parts)
    assert total == pytest.approx(2.0, abs=1e-9)


def test_intersection_origin_mismatch_rejected():
    a = planar(unit_square(), origin=GeoPoint(0, 0))
    b = planar(unit_square(), origin=GeoPoint(1, 1))
    with pytest.raises(GeometryError) as err:
        intersection(a, b)
    assert err.value.code == "origin_mismatch"


def test_intersection_l_shape_matches_monte_carlo():
    l_shape = [(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]
    square = [(0.5, 0.5), (2.5, 0.5), (2.5, 2.5), (0.5, 2.5)]
    exact = intersection_area(planar(l_shape), planar(square))
    rng = np.random.default_rng(42)
    estimate = mc_intersection_area(l_shape, square, 1_000_000, rng)
    assert abs(exact - estimate) / exact < 0.01


@pytest.mark.parametrize("seed", range(12))
def test_intersection_random_pairs_match_monte_carlo(seed):
    rng = np.random.default_rng(1000 + seed)
    ring_a, ring_b = random_overlapping_pair(rng)
    exact = intersection_area(planar(ring_a), planar(ring_b))
    bbox = bbox_intersection(bbox_of(ring_a), bbox_of(ring_b))
    estimate = mc_intersection_area(ring_a, ring_b, 1_000_000, rng, bbox=bbox)
    assert abs(exact - estimate) / exact < 0.01


@pytest.mark.parametrize("seed", range(20))
def test_intersection_invariants_random_pairs(seed):
    rng = np.random.default_rng(2000 + seed)
    ring_a = random_star_ring(rng, center=(0.0, 0.0), n_vertices=int(rng.integers(4, 13)))
    ring_b = random_star_ring(rng, center=(float(rng.uniform(-0.5, 0.5)), float(rng.uniform(-0.5, 0.5))),
                              n_vertices=int(rng.integers(4, 13)))
    a, b = planar(ring_a), planar(ring_b)
    ab = intersection_area(a, b)
    ba = intersection_area(b, a)
    area_a, area_b = geo.area(a), geo.area(b)
    assert abs(ab - ba) <= 1e-6 * max(area_a, area_b)
    assert ab <= min(area_a, area_b) + 1e-6
    assert abs(intersection_area(a, a) - area_a) <= 1e-6 * area_a


# ---------------------------------------------------------------------------
# overlaps


def test_overlaps_shared_edge_is_false():
    a = degree_square(side=1e-3, pid="a")
    b = degree_square(side=1e-3, lon0=1e-3, pid="b")
    assert not overlaps(a, b)


def test_overlaps_self_is_true():
    a = degree_square(side=1e-3, pid="a")
    b = degree_square(side=1e-3, pid="b")
    assert overlaps(a, b)


def test_overlaps_is_symmetric_on_random_pairs():
    rng = np.random.default_rng(7)
    for _ in range(25):
        lon = float(rng.uniform(12.3, 12.5))
        lat = float(rng.uniform(51.2, 51.3))
        a = degree_square(side=float(rng.uniform(1e-4, 3e-3)), lon0=lon, lat0=lat, pid="a")
        b = degree_square(
            side=float(rng.uniform(1e-4, 3e-3)),
            lon0=lon + float(rng.uniform(-2e-3, 2e-3)),
            lat0=lat + float(rng.uniform(-2e-3, 2e-3)),
            pid="b",
        )
        assert overlaps(a, b) == overlaps(b, a)
        assert overlap_area(a, b) == pytest.approx(overlap_area(b, a), rel=1e-9, abs=1e-9)


def test_overlap_area_tiny_epsilon_behaviour():
    # a ~0.5 m^2 overlap stays below the 1 m^2 edge threshold
    side = 1e-3
    meters_per_degree = METERS_PER_MILLIDEGREE * 1000
    height_m = side * meters_per_degree
    sliver = 0.5 / (height_m * meters_per_degree)  # degrees of width giving 0.5 m^2
    a = degree_square(side=side, pid="a")
    b = degree_square(side=side, lon0=side - sliver, pid="b")
    assert 0.4 < overlap_area(a, b) < 0.6
    assert not overlaps(a, b)
    assert overlaps(a, b, area_epsilon=0.1)


# ---------------------------------------------------------------------------
# buffering


def test_buffer_straight_segment_capsule_area():
    # ~500 m east-west segment at the equator, 10 m wide
    length_deg = 0.005
    pts = [GeoPoint(0, 0), GeoPoint(length_deg, 0)]
    width = 10.0
    poly = buffer_path(pts, width, polygon_id="cap", category="path")
    length_m = length_deg * 1000 * METERS_PER_MILLIDEGREE
    expected = length_m * width + math.pi * (width / 2) ** 2
    origin = GeoPoint(length_deg / 2, 0)
    got = geo.area(project(poly, origin))
    assert abs(got - expected) / expected < 0.05


def test_buffer_collapses_duplicate_points():
    pts = [GeoPoint(0, 0), GeoPoint(0.001, 0), GeoPoint(0.001, 0), GeoPoint(0.001, 0.001)]
    deduped = [GeoPoint(0, 0), GeoPoint(0.001, 0), GeoPoint(0.001, 0.001)]
    a = buffer_path(pts, 8.0, polygon_id="a")
    b = buffer_path(deduped, 8.0, polygon_id="b")
    assert [(p.lon, p.lat) for p in a.ring] == [(p.lon, p.lat) for p in b.ring]


def test_buffer_right_angle_contains_input_points():
    pts = [GeoPoint(12.40, 51.20), GeoPoint(12.41, 51.20), GeoPoint(12.41, 51.21)]
    poly = buffer_path(pts, 12.0, polygon_id="l", category="path")
    ring = [(p.lon, p.lat) for p in poly.ring]
    xs = np.array([p.lon for p in pts])
    ys = np.array([p.lat for p in pts])
    assert points_in_ring(xs, ys, ring).all()


def test_buffer_rejects_single_point_and_zero_width():
    with pytest.raises(GeometryError):
        buffer_path([GeoPoint(0, 0)], 5.0)
    with pytest.raises(GeometryError):
        buffer_path([GeoPoint(0, 0), GeoPoint(0.001, 0)], 0.0)
    with pytest.raises(GeometryError):
        buffer_path([GeoPoint(0, 0), GeoPoint(0, 0)], 5.0)


@pytest.mark.parametrize("seed", range(10))
def test_buffer_random_paths_produce_valid_polygons(seed):
    # gentle random walks: segments much longer than the buffer width
    rng = np.random.default_rng(300 + seed)
    heading = float(rng.uniform(0, 2 * math.pi))
    lon, lat = 12.45, 51.25
    pts = [GeoPoint(lon, lat)]
    for _ in range(int(rng.integers(1, 6))):
        heading += float(rng.uniform(-math.pi / 2.2, math.pi / 2.2))
        step = float(rng.uniform(0.8e-3, 3e-3))
        lon += step * math.cos(heading)
        lat += step * math.sin(heading)
        pts.append(GeoPoint(lon, lat))
    poly = buffer_path(pts, 10.0, polygon_id=f"walk{seed}", category="path")
    ring = [(p.lon, p.lat) for p in poly.ring]
    xs = np.array([p.lon for p in pts])
    ys = np.array([p.lat for p in pts])
    assert points_in_ring(xs, ys, ring).all()


# ---------------------------------------------------------------------------
# bounding boxes


def test_bounding_box_degree_square():
    p = degree_square(side=1e-5)
    assert p.bounding_box() == BoundingBox(0.0, 0.0, 1e-5, 1e-5)


def test_bounding_box_triangle_minima():
    p = GeoPolygon(
        id="t",
        ring=(GeoPoint(0.002, 0.001), GeoPoint(0.005, 0.002), GeoPoint(0.003, 0.004)),
        category="c",
    )
    box = p.bounding_box()
    assert box.min_lon == 0.002 and box.min_lat == 0.001
    assert box.max_lon == 0.005 and box.max_lat == 0.004


@given(
    st.lists(
        st.tuples(
            st.floats(min_value=-0.01, max_value=0.01),
            st.floats(min_value=-0.01, max_value=0.01),
        ),
        min_size=3,
        max_size=10,
    )
)
@settings(max_examples=50, deadline=None)
def test_bounding_box_contains_every_vertex(coords):
    try:
        p = GeoPolygon(
            id="h",
            ring=tuple(GeoPoint(lon, lat) for lon, lat in coords),
            category="c",
        )
    except GeometryError:
        return
    box = p.bounding_box()
    for v in p.ring:
        assert box.min_lon <= v.lon <= box.max_lon
        assert box.min_lat <= v.lat <= box.max_lat


def test_ring_intersects_bbox_cases():
    p = degree_square(side=1e-3, pid="v")
    assert geo.ring_intersects_bbox(p, BoundingBox(-1, -1, 1, 1))
    # bbox fully inside the ring still intersects
    assert geo.ring_intersects_bbox(p, BoundingBox(4e-4, 4e-4, 6e-4, 6e-4))
    assert not geo.ring_intersects_bbox(p, BoundingBox(0.5, 0.5, 0.6, 0.6))
    # L-shape whose bbox overlaps a rect that the ring itself misses
    l_shape = GeoPolygon(
        id="l",
        ring=(
            GeoPoint(0, 0),
            GeoPoint(3e-3, 0),
            GeoPoint(3e-3, 1e-3),
            GeoPoint(1e-3, 1e-3),
            GeoPoint(1e-3, 3e-3),
            GeoPoint(0, 3e-3),
        ),
        category="c",
    )
    missing_rect = BoundingBox(1.8e-3, 1.8e-3, 2.8e-3, 2.8e-3)
    assert l_shape.bounding_box().intersects(missing_rect)
    assert not geo.ring_intersects_bbox(l_shape, missing_rect)
