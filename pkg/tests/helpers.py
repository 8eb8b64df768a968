"""Shared builders for synthetic test scenarios."""

import random

from cctvroute import geo
from cctvroute.geo import GeoPoint, LocalPoint
from cctvroute.osm import Camera, OsmModel, OsmNode, OsmWay
from cctvroute.synth import GRID_BASE

BASE = GRID_BASE


def local_node(nid, x, y, tags=None):
    return OsmNode(nid, geo.unproject(BASE, LocalPoint(x, y)), dict(tags or {}))


def model_from_local(nodes_xy, ways, default_tags=None):
    """nodes_xy: {id: (x, y)}; ways: {id: ([refs], tags)}."""
    nodes = {nid: local_node(nid, x, y) for nid, (x, y) in nodes_xy.items()}
    way_objs = {}
    for wid, (refs, tags) in ways.items():
        merged = dict(default_tags or {})
        merged.update(tags)
        way_objs[wid] = OsmWay(wid, list(refs), merged)
    return OsmModel(nodes=nodes, ways=way_objs)


def round_camera(cam_id, x, y, radius):
    return Camera(str(cam_id), geo.unproject(BASE, LocalPoint(x, y)),
                  "round", float(radius), 360.0, 0.0)


def directed_camera(cam_id, x, y, radius, angle, direction):
    return Camera(str(cam_id), geo.unproject(BASE, LocalPoint(x, y)),
                  "directed", float(radius), float(angle), float(direction))


def geopoint_at(x, y):
    return geo.unproject(BASE, LocalPoint(x, y))


def two_route_model(short_len, long_len, width=0.2, highway="footway"):
    """Two routes between A=(0,0) and B=(short_len,0): the straight short
    way, and a U-shaped detour of total length long_len."""
    h = (long_len - short_len) / 2.0
    assert h > 0
    nodes = {1: (0.0, 0.0), 2: (short_len, 0.0), 3: (0.0, h), 4: (short_len, h)}
    tags = {"highway": highway, "width": f"{width:g}"}
    ways = {1: ([1, 2], tags), 2: ([1, 3, 4, 2], tags)}
    return model_from_local(nodes, ways), h


def graph_edges(graph):
    """RoutingGraph -> [(u, v, length)] for the oracles."""
    return [(e.u, e.v, e.length) for e in graph.edges]


def uncovered_edges(graph):
    return [(e.u, e.v, e.length) for e in graph.edges if not e.covered]


def ring_dist(fov, p):
    """Distance from a local point to a FoV ring (closed)."""
    pts = list(fov.vertices) + [fov.vertices[0]]
    return geo.polyline_min_dist(pts, p)


def random_grid_instance(seed, max_cameras=40):
    """Seeded random grid + cameras + augmented data, as the acceptance
    criteria use them."""
    from cctvroute import preprocess as pp, synth

    rng = random.Random(seed)
    rows = rng.randint(3, 5)
    cols = rng.randint(3, 5)
    spacing = rng.choice([50.0, 60.0, 80.0])
    spec = synth.GridSpec(rows=rows, cols=cols, spacing=spacing)
    model = synth.grid_model(spec)
    n_cams = rng.randint(0, max_cameras)
    cameras = synth.random_cameras(model, n_cams, seed=seed)
    augmented = pp.augment(model, cameras)
    return model, cameras, augmented, spec
