from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from georestrict.geometry import GeoPoint, GeoPolygon


def rect(pid: str, lon0: float, lat0: float, dlon: float, dlat: float,
         category: str = "test") -> GeoPolygon:
    return GeoPolygon(
        id=pid,
        ring=(
            GeoPoint(lon0, lat0),
            GeoPoint(lon0 + dlon, lat0),
            GeoPoint(lon0 + dlon, lat0 + dlat),
            GeoPoint(lon0, lat0 + dlat),
        ),
        category=category,
    )


def small_region_polygons() -> list[GeoPolygon]:
    """Hand-placed set around the fictional lake: overlaps are known by
    construction (r1/r2 overlap, r2/r3 overlap, r4 contains r5, r6 apart)."""
    return [
        rect("r1", 12.400, 51.200, 0.010, 0.010, "nature reserve"),
        rect("r2", 12.405, 51.205, 0.010, 0.010, "active dismantling"),
        rect("r3", 12.412, 51.212, 0.010, 0.010, "forestry"),
        rect("r4", 12.440, 51.240, 0.020, 0.020, "wildlife park"),
        rect("r5", 12.445, 51.245, 0.005, 0.005, "flooding area"),
        rect("r6", 12.500, 51.300, 0.008, 0.008, "residential"),
    ]
