"""Synthetic grid maps with seeded-random cameras, for evaluation."""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import geo
from .geo import GeoPoint
from .osm import Camera, OsmModel, OsmNode, OsmWay

GRID_BASE = GeoPoint(62.2400, 25.7400)

RADIUS_RANGE = (5.0, 30.0)
ANGLE_CHOICES = tuple(range(60, 361, 30))


@dataclass(frozen=True)
class GridSpec:
    rows: int
    cols: int
    spacing: float
    width: float = 6.0
    highway: str = "residential"

    def __post_init__(self):
        if self.rows < 2 or self.cols < 2:
            raise ValueError("grid needs rows >= 2 and cols >= 2")
        if self.spacing <= 0.0:
            raise ValueError("spacing must be > 0")


def grid_model(spec: GridSpec) -> OsmModel:
    """R x C street grid; every grid edge is its own way."""
    nodes = {}
    node_id = {}
    nid = 1
    for r in range(spec.rows):
        for c in range(spec.cols):
            pt = geo.LocalPoint(c * spec.spacing, r * spec.spacing)
            nodes[nid] = OsmNode(nid, geo.unproject(GRID_BASE, pt))
            node_id[(r, c)] = nid
            nid += 1
    ways = {}
    wid = 1
    tags = {"highway": spec.highway, "width": f"{spec.width:g}"}
    for r in range(spec.rows):
        for c in range(spec.cols):
            if c + 1 < spec.cols:
                ways[wid] = OsmWay(wid, [node_id[(r, c)], node_id[(r, c + 1)]], dict(tags))
                wid += 1
            if r + 1 < spec.rows:
                ways[wid] = OsmWay(wid, [node_id[(r, c)], node_id[(r + 1, c)]], dict(tags))
                wid += 1
    return OsmModel(nodes=nodes, ways=ways)


def random_cameras(model: OsmModel, count: int, seed: int,
                   radius_range=RADIUS_RANGE, angle_choices=ANGLE_CHOICES) -> list[Camera]:
    """Seeded-random cameras positioned on the model's ways."""
    rng = random.Random(seed)
    way_ids = sorted(model.ways)
    cameras = []
    for i in range(count):
        way = model.ways[rng.choice(way_ids)]
        seg = rng.randrange(len(way.node_refs) - 1)
        a = model.nodes[way.node_refs[seg]].location
        b = model.nodes[way.node_refs[seg + 1]].location
        t = rng.random()
        loc = GeoPoint(a.lat + (b.lat - a.lat) * t, a.lon + (b.lon - a.lon) * t)
        radius = round(rng.uniform(*radius_range), 1)
        angle = float(rng.choice(angle_choices))
        direction = round(rng.uniform(0.0, 360.0), 1) % 360.0
        cam_type = "round" if angle >= 360.0 else "directed"
        cameras.append(Camera(str(i + 1), loc, cam_type, radius, angle,
                              0.0 if cam_type == "round" else direction))
    return cameras
