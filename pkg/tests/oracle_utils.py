"""Independent oracles used across the test suite.

These deliberately avoid the library's own geometry/graph code paths:
point-in-polygon is a vectorized numpy crossing test, area oracles are
Monte-Carlo sampling, and graph oracles are brute-force scans.
"""

from __future__ import annotations

import math

import numpy as np


def points_in_ring(xs: np.ndarray, ys: np.ndarray, ring) -> np.ndarray:
    """Vectorized ray-crossing membership test for many points."""
    inside = np.zeros(xs.shape, dtype=bool)
    n = len(ring)
    for i in range(n):
        x1, y1 = ring[i]
        x2, y2 = ring[(i + 1) % n]
        crosses = (y1 > ys) != (y2 > ys)
        denom = y2 - y1
        safe = np.where(denom == 0.0, 1.0, denom)
        x_cross = x1 + (ys - y1) * (x2 - x1) / safe
        inside ^= crosses & (x_cross > xs)
    return inside


def mc_intersection_area(ring_a, ring_b, n_samples: int, rng, bbox=None) -> float:
    """Monte-Carlo estimate of the intersection area of two rings.

    Samples uniformly over ``bbox`` (default: union of both rings' boxes).
    """
    if bbox is None:
        xs = [p[0] for p in ring_a] + [p[0] for p in ring_b]
        ys = [p[1] for p in ring_a] + [p[1] for p in ring_b]
        bbox = (min(xs), min(ys), max(xs), max(ys))
    minx, miny, maxx, maxy = bbox
    sx = rng.uniform(minx, maxx, n_samples)
    sy = rng.uniform(miny, maxy, n_samples)
    hits = points_in_ring(sx, sy, ring_a) & points_in_ring(sx, sy, ring_b)
    return hits.mean() * (maxx - minx) * (maxy - miny)


def shoelace(ring) -> float:
    total = 0.0
    n = len(ring)
    for i in range(n):
        x1, y1 = ring[i]
        x2, y2 = ring[(i + 1) % n]
        total += x1 * y2 - x2 * y1
    return abs(total) / 2.0


def random_star_ring(rng, center=(0.0, 0.0), n_vertices: int = 8,
                     r_min: float = 0.4, r_max: float = 1.0, scale: float = 1.0,
                     max_gap: float = 2.0 * math.pi):
    """Random simple (star-shaped) polygon ring around ``center``.

    With ``max_gap`` bounded, every edge chord stays at distance
    >= r_min*cos(max_gap/2) from the center, so the polygon provably
    contains that disc.
    """
    while True:
        angles = np.sort(rng.uniform(0.0, 2.0 * math.pi, n_vertices))
        gaps = np.diff(np.concatenate([angles, [angles[0] + 2 * math.pi]]))
        if gaps.min() > 0.05 and gaps.max() <= max_gap:
            break
    radii = rng.uniform(r_min, r_max, n_vertices) * scale
    return [
        (center[0] + r * math.cos(a), center[1] + r * math.sin(a))
        for a, r in zip(angles, radii)
    ]


def random_overlapping_pair(rng):
    """Two random simple rings with a guaranteed substantial overlap.

    Both stars contain the disc of radius 0.55*cos(0.8) ~ 0.38 around
    their center, and centers sit within 0.3 of each other, so the exact
    intersection always holds a fat lens. That keeps the Monte-Carlo hit
    rate high enough for a 10^6-sample estimate to resolve inside 1%.
    """
    ring_a = random_star_ring(
        rng, center=(0.0, 0.0), n_vertices=int(rng.integers(5, 13)),
        r_min=0.55, max_gap=1.6,
    )
    cx = float(rng.uniform(-0.15, 0.15))
    cy = float(rng.uniform(-0.15, 0.15))
    ring_b = random_star_ring(
        rng, center=(cx, cy), n_vertices=int(rng.integers(5, 13)),
        r_min=0.55, max_gap=1.6,
    )
    return ring_a, ring_b


def bbox_of(ring):
    xs = [p[0] for p in ring]
    ys = [p[1] for p in ring]
    return (min(xs), min(ys), max(xs), max(ys))


def bbox_intersection(b1, b2):
    return (
        max(b1[0], b2[0]),
        max(b1[1], b2[1]),
        min(b1[2], b2[2]),
        min(b1[3], b2[3]),
    )


def brute_force_overlap_pairs(polygons, overlap_fn):
    """All unordered polygon-id pairs with a positive overlap, via O(n^2) scan."""
    pairs = {}
    items = sorted(polygons, key=lambda p: p.id)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            area = overlap_fn(items[i], items[j])
            if area is not None:
                key = tuple(sorted((items[i].id, items[j].id)))
                pairs[key] = area
    return pairs
