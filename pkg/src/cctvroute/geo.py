"""Planar projection and computational-geometry primitives.

Everything here works in a local tangent plane: an equirectangular
projection around a per-dataset origin (x east, y north, meters).  At
city scale the projection error is sub-centimeter, and it is exactly
invertible, which the round-trip tests rely on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import kernels
from .errors import DegenerateGeometry, InvalidCamera, InvalidCoordinate

EARTH_RADIUS_M = 6_371_000.0

#: Tolerance (meters) under which a boundary grazing is not a real crossing.
GRAZE_EPS = 1e-9

#: Default arc discretization step (degrees) for FoV rings.
DEFAULT_ARC_STEP = 10.0

#: Minimum number of vertices in any FoV ring.
MIN_RING_VERTICES = 8

MITER_LIMIT = 4.0


@dataclass(frozen=True)
class GeoPoint:
    lat: float
    lon: float

    def __post_init__(self):
        if not (math.isfinite(self.lat) and math.isfinite(self.lon)):
            raise InvalidCoordinate(f"non-finite coordinate ({self.lat}, {self.lon})")
        if not (-90.0 <= self.lat <= 90.0):
            raise InvalidCoordinate(f"latitude {self.lat} out of [-90, 90]")
        if not (-180.0 <= self.lon <= 180.0):
            raise InvalidCoordinate(f"longitude {self.lon} out of [-180, 180]")


@dataclass(frozen=True)
class LocalPoint:
    x: float
    y: float

    def dist(self, other: "LocalPoint") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(eq=False)
class FovPolygon:
    """Simple counter-clockwise ring approximating a camera's surveilled
    area.  The closing edge (last vertex back to the first) is implicit."""

    vertices: tuple[LocalPoint, ...]
    camera_id: str
    apex: LocalPoint = field(default=LocalPoint(0.0, 0.0))
    radius: float = 0.0

    @cached_property
    def xs(self) -> np.ndarray:
        return np.fromiter((v.x for v in self.vertices), dtype=np.float64)

    @cached_property
    def ys(self) -> np.ndarray:
        return np.fromiter((v.y for v in self.vertices), dtype=np.float64)

    def area(self) -> float:
        x = self.xs
        y = self.ys
        return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def project(origin: GeoPoint, p: GeoPoint) -> LocalPoint:
    """Equirectangular projection of ``p`` into the plane anchored at
    ``origin``: x = R * dlon * cos(lat0), y = R * dlat (radians)."""
    dlat = math.radians(p.lat - origin.lat)
    dlon = math.radians(p.lon - origin.lon)
    k = math.cos(math.radians(origin.lat))
    return LocalPoint(EARTH_RADIUS_M * dlon * k, EARTH_RADIUS_M * dlat)


def unproject(origin: GeoPoint, q: LocalPoint) -> GeoPoint:
    k = math.cos(math.radians(origin.lat))
    lat = origin.lat + math.degrees(q.y / EARTH_RADIUS_M)
    lon = origin.lon + math.degrees(q.x / (EARTH_RADIUS_M * k))
    return GeoPoint(lat, lon)


def _bearing_vector(bearing_deg: float) -> tuple[float, float]:
    # bearings run clockwise from north; the plane has x east, y north
    b = math.radians(bearing_deg)
    return math.sin(b), math.cos(b)


def build_fov_polygon(camera, arc_step: float = DEFAULT_ARC_STEP,
                      apex: LocalPoint = LocalPoint(0.0, 0.0)) -> FovPolygon:
    """Discretize a camera's field of vision into a polygon around ``apex``.

    Round cameras (angle >= 360) become a regular polygon inscribed in
    the view circle; directed ones an apex-plus-arc sector.  ``arc_step``
    bounds the angular span of each arc segment.
    """
    radius = float(camera.radius)
    angle = float(camera.angle)
    if not (radius > 0.0):
        raise InvalidCamera(f"camera {camera.id}: radius must be > 0, got {radius}")
    if not (0.0 < angle <= 360.0):
        raise InvalidCamera(f"camera {camera.id}: angle must be in (0, 360], got {angle}")
    if not (0.0 < arc_step <= 45.0):
        raise ValueError(f"arc_step must be in (0, 45], got {arc_step}")

    if angle >= 360.0:
        n = max(MIN_RING_VERTICES, math.ceil(360.0 / arc_step))
        pts = []
        for i in range(n):
            theta = 2.0 * math.pi * i / n
            pts.append(LocalPoint(apex.x + radius * math.cos(theta),
                                  apex.y + radius * math.sin(theta)))
        return FovPolygon(tuple(pts), str(camera.id), apex=apex, radius=radius)

    direction = float(camera.direction)
    nseg = max(MIN_RING_VERTICES - 1, math.ceil(angle / arc_step))
    # walking from the high bearing down to the low one keeps the ring CCW
    start = direction + angle / 2.0
    pts = [apex]
    for i in range(nseg + 1):
        b = start - angle * i / nseg
        ux, uy = _bearing_vector(b)
        pts.append(LocalPoint(apex.x + radius * ux, apex.y + radius * uy))
    return FovPolygon(tuple(pts), str(camera.id), apex=apex, radius=radius)


def point_in_polygon(p: LocalPoint, poly: FovPolygon) -> bool:
    """Even-odd containment; boundary points count as inside."""
    return bool(kernels.point_in_ring(p.x, p.y, poly.xs, poly.ys, GRAZE_EPS))


@dataclass(frozen=True)
class SegmentCoverage:
    """Crossings of a segment with a FoV ring plus the resulting
    inside/outside intervals (in segment parameter space)."""

    crossings: tuple[tuple[float, LocalPoint], ...]
    intervals: tuple[tuple[float, float, bool], ...]

    @property
    def inside(self) -> bool:
        return any(flag for _, _, flag in self.intervals)

    def covered_length(self, seg_length: float) -> float:
        return sum((t1 - t0) * seg_length for t0, t1, flag in self.intervals if flag)


def intersect_segment_polygon(a: LocalPoint, b: LocalPoint, poly: FovPolygon) -> SegmentCoverage:
    """Crossing parameters of segment a->b with the ring of ``poly``.

    Grazing contacts (an inside interval shorter than GRAZE_EPS meters)
    are dropped and treated as outside.
    """
    length = a.dist(b)
    if length == 0.0:
        inside = point_in_polygon(a, poly)
        return SegmentCoverage((), ((0.0, 1.0, inside),))

    raw = kernels.segment_ring_params(a.x, a.y, b.x, b.y, poly.xs, poly.ys)
    tol_t = GRAZE_EPS / length
    ts: list[float] = []
    for t in raw:
        if not ts or t - ts[-1] > tol_t:
            ts.append(t)
    # merge hits at the very ends into the endpoints themselves
    if ts and ts[0] <= tol_t:
        ts[0] = 0.0
    if ts and ts[-1] >= 1.0 - tol_t:
        ts[-1] = 1.0

    cuts = [0.0] + [t for t in ts if 0.0 < t < 1.0] + [1.0]
    flags = []
    for t0, t1 in zip(cuts, cuts[1:]):
        tm = 0.5 * (t0 + t1)
        mid = LocalPoint(a.x + (b.x - a.x) * tm, a.y + (b.y - a.y) * tm)
        inside = point_in_polygon(mid, poly)
        if inside and (t1 - t0) * length < GRAZE_EPS:
            inside = False
        flags.append(inside)

    intervals: list[tuple[float, float, bool]] = []
    crossings: list[tuple[float, LocalPoint]] = []
    for (t0, t1), flag in zip(zip(cuts, cuts[1:]), flags):
        if intervals and intervals[-1][2] == flag:
            prev = intervals[-1]
            intervals[-1] = (prev[0], t1, flag)
        else:
            if intervals:
                pt = LocalPoint(a.x + (b.x - a.x) * t0, a.y + (b.y - a.y) * t0)
                crossings.append((t0, pt))
            intervals.append((t0, t1, flag))
    return SegmentCoverage(tuple(crossings), tuple(intervals))


def _dedupe(points: list[LocalPoint]) -> list[LocalPoint]:
    out: list[LocalPoint] = []
    for p in points:
        if not out or p.dist(out[-1]) > 0.0:
            out.append(p)
    return out


def offset_polyline_indexed(line, distance: float, side: str):
    """Offset a polyline, returning (points, index_map) where index_map[i]
    is the output index corresponding to input vertex i.  Joints are
    mitered up to MITER_LIMIT, beveled beyond it."""
    if distance <= 0.0:
        raise ValueError(f"offset distance must be > 0, got {distance}")
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    pts = _dedupe(list(line))
    if len(pts) < 2:
        raise DegenerateGeometry("polyline has fewer than 2 distinct points")

    sign = 1.0 if side == "left" else -1.0
    normals = []
    for p, q in zip(pts, pts[1:]):
        dx = q.x - p.x
        dy = q.y - p.y
        ln = math.hypot(dx, dy)
        normals.append((sign * -dy / ln, sign * dx / ln))

    out: list[LocalPoint] = []
    index_map: list[int] = []
    nx0, ny0 = normals[0]
    out.append(LocalPoint(pts[0].x + distance * nx0, pts[0].y + distance * ny0))
    index_map.append(0)
    for i in range(1, len(pts) - 1):
        n1 = normals[i - 1]
        n2 = normals[i]
        v = pts[i]
        p1 = LocalPoint(v.x + distance * n1[0], v.y + distance * n1[1])
        p2 = LocalPoint(v.x + distance * n2[0], v.y + distance * n2[1])
        d1 = (pts[i].x - pts[i - 1].x, pts[i].y - pts[i - 1].y)
        d2 = (pts[i + 1].x - pts[i].x, pts[i + 1].y - pts[i].y)
        cross = d1[0] * d2[1] - d1[1] * d2[0]
        if abs(cross) < 1e-12 * (math.hypot(*d1) * math.hypot(*d2)):
            # collinear continuation: one shared offset point
            index_map.append(len(out))
            out.append(p1)
            continue
        # intersect the two offset lines (directions d1 through p1, d2 through p2)
        denom = d1[0] * d2[1] - d1[1] * d2[0]
        t = ((p2.x - p1.x) * d2[1] - (p2.y - p1.y) * d2[0]) / denom
        miter = LocalPoint(p1.x + d1[0] * t, p1.y + d1[1] * t)
        if miter.dist(v) / distance <= MITER_LIMIT:
            index_map.append(len(out))
            out.append(miter)
        else:
            index_map.append(len(out))
            out.append(p1)
            out.append(p2)
    nxe, nye = normals[-1]
    index_map.append(len(out))
    out.append(LocalPoint(pts[-1].x + distance * nxe, pts[-1].y + distance * nye))
    return out, index_map


def offset_polyline(line, distance: float, side: str) -> list[LocalPoint]:
    """Parallel copy of ``line`` at ``distance`` on the given side."""
    points, _ = offset_polyline_indexed(line, distance, side)
    return points


def polyline_min_dist(points, p: LocalPoint) -> float:
    """Minimum distance from ``p`` to the polyline through ``points``."""
    xs = np.fromiter((q.x for q in points), dtype=np.float64)
    ys = np.fromiter((q.y for q in points), dtype=np.float64)
    return float(kernels.polyline_point_min_dist(xs, ys, p.x, p.y))
