"""Routing graph construction and the three query modes.

default  - plain shortest path.
privacy  - shortest path on the subgraph with every surveilled edge
           removed; falls back to the closest reachable vertex (partial)
           or reports no route at all rather than cross a camera's FoV.
safety   - shortest weighted path where surveillance coverage discounts
           edge cost, with a detour cap falling back to the default
           route when the surveilled alternative is too long.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

import numpy as np

from . import geo
from .errors import DisconnectedPath, NoSnapCandidate
from .geo import GeoPoint, LocalPoint
from .osm import Camera, OsmModel, parse_osm
from .preprocess import (AugmentedModel, WeightRow, _edge_key, is_travellable,
                         parse_weights)

MODES = ("default", "privacy", "safety")


@dataclass(frozen=True)
class RouteConfig:
    safety_beta: float = 1.0
    detour_cap: float = 1.6
    snap_radius_m: float = 500.0

    def __post_init__(self):
        if self.safety_beta <= 0.0:
            raise ValueError("safety_beta must be > 0")
        if self.detour_cap < 1.0:
            raise ValueError("detour_cap must be >= 1")


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    length: float
    covered: bool
    coverage_count: int
    way_id: int
    cameras: frozenset[str]


@dataclass(frozen=True)
class RouteRequest:
    from_pt: GeoPoint
    to_pt: GeoPoint
    mode: str = "default"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass
class RouteResult:
    geometry: list[GeoPoint]
    distance: float
    surveilled_distance: float
    cameras_passed: int
    status: str  # complete | partial | none
    snapped_from: GeoPoint | None
    snapped_to: GeoPoint | None
    path: list[int] = field(default_factory=list)


class RoutingGraph:
    """Immutable after construction; safe for concurrent queries."""

    def __init__(self, origin: GeoPoint, vertices: dict[int, LocalPoint],
                 edges: list[Edge]):
        self.origin = origin
        self.vertices = vertices
        self.edges = edges
        self.adjacency: dict[int, list[tuple[int, int]]] = {v: [] for v in vertices}
        for idx, e in enumerate(edges):
            self.adjacency[e.u].append((e.v, idx))
            self.adjacency[e.v].append((e.u, idx))
        for nbrs in self.adjacency.values():
            nbrs.sort()
        self._ids = np.array(sorted(vertices), dtype=np.int64)
        self._xs = np.array([vertices[i].x for i in self._ids], dtype=np.float64)
        self._ys = np.array([vertices[i].y for i in self._ids], dtype=np.float64)
        self.uncovered_incident = {
            v for v, nbrs in self.adjacency.items()
            if any(not edges[i].covered for _, i in nbrs)}

    def __len__(self):
        return len(self.vertices)

    def edge_between(self, u: int, v: int) -> Edge | None:
        for w, idx in self.adjacency.get(u, ()):
            if w == v:
                return self.edges[idx]
        return None


def build_graph(augmented: AugmentedModel) -> RoutingGraph:
    """One edge per consecutive node pair of every travellable way."""
    model = augmented.model
    model.validate()
    origin = augmented.origin
    counts = {}
    for row in augmented.weights:
        counts[_edge_key(row.from_node, row.to_node)] = row.coverage_count

    vertices: dict[int, LocalPoint] = {}
    edges: list[Edge] = []
    seen: set[tuple[int, int]] = set()
    for wid in sorted(model.ways):
        way = model.ways[wid]
        if not is_travellable(way):
            continue
        for ref in way.node_refs:
            if ref not in vertices:
                vertices[ref] = geo.project(origin, model.nodes[ref].location)
        for u, v in zip(way.node_refs, way.node_refs[1:]):
            key = _edge_key(u, v)
            if key in seen:
                continue
            seen.add(key)
            length = vertices[u].dist(vertices[v])
            count = counts.get(key, 0)
            cams = augmented.edge_cameras.get(key, frozenset())
            edges.append(Edge(u, v, length, count >= 1, count, wid, cams))
    return RoutingGraph(origin, vertices, edges)


def load_augmented(osm_bytes: bytes, weights_bytes: bytes) -> AugmentedModel:
    """Rebuild an AugmentedModel from on-disk artifacts.

    Cameras are recovered from their surveillance-tagged nodes; per-edge
    camera sets are re-derived geometrically, coverage counts come from
    the weights CSV.
    """
    model = parse_osm(osm_bytes)
    weights = parse_weights(weights_bytes)
    origin = model.centroid()
    cameras = []
    for node in model.nodes.values():
        tags = node.tags
        if tags.get("man_made") == "surveillance" and "camera:radius" in tags:
            cameras.append(Camera(
                id=tags.get("ref", str(node.id)),
                location=node.location,
                cam_type=tags.get("camera:type", "round"),
                radius=float(tags["camera:radius"]),
                angle=float(tags.get("camera:angle", "360")),
                direction=float(tags.get("camera:direction", "0")),
            ))
    fov_index = {}
    for cam in sorted(cameras, key=Camera.sort_key):
        apex = geo.project(origin, cam.location)
        fov_index[cam.id] = geo.build_fov_polygon(cam, apex=apex)

    edge_cameras: dict[tuple[int, int], frozenset[str]] = {}
    covered_keys = {_edge_key(r.from_node, r.to_node) for r in weights}
    for u, v in covered_keys:
        a = geo.project(origin, model.nodes[u].location)
        b = geo.project(origin, model.nodes[v].location)
        mid = LocalPoint((a.x + b.x) / 2.0, (a.y + b.y) / 2.0)
        cams = frozenset(cid for cid, fov in fov_index.items()
                         if geo.point_in_polygon(mid, fov))
        edge_cameras[(u, v)] = cams
    return AugmentedModel(model=model, weights=weights, fov_index=fov_index,
                          origin=origin, edge_cameras=edge_cameras)


# -- snapping -----------------------------------------------------------


def snap(graph: RoutingGraph, p: GeoPoint, mode: str = "default",
         config: RouteConfig | None = None) -> int:
    """Nearest vertex to ``p``; privacy mode restricts candidates to
    vertices with at least one unsurveilled incident edge within the snap
    radius.  Distance ties break to the lowest vertex id."""
    config = config or RouteConfig()
    if len(graph) == 0:
        raise NoSnapCandidate("empty graph")
    q = geo.project(graph.origin, p)
    d2 = (graph._xs - q.x) ** 2 + (graph._ys - q.y) ** 2
    if mode == "privacy":
        mask = np.array([int(i) in graph.uncovered_incident for i in graph._ids])
        if not mask.any():
            raise NoSnapCandidate("no vertex with an unsurveilled incident edge")
        d2 = np.where(mask, d2, np.inf)
    best = float(d2.min())
    if mode == "privacy" and best > config.snap_radius_m ** 2:
        raise NoSnapCandidate(
            f"no unsurveilled vertex within {config.snap_radius_m} m")
    if not math.isfinite(best):
        raise NoSnapCandidate("no snap candidate")
    candidates = graph._ids[d2 <= best + 1e-9]
    return int(candidates.min())


# -- search -------------------------------------------------------------


def _dijkstra_from(graph: RoutingGraph, src: int, weight_fn, allowed_fn):
    dist: dict[int, float] = {src: 0.0}
    heap = [(0.0, src)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist.get(u, math.inf):
            continue
        for v, idx in graph.adjacency[u]:
            e = graph.edges[idx]
            if not allowed_fn(e):
                continue
            nd = d + weight_fn(e)
            if nd < dist.get(v, math.inf):
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def _lexico_shortest(graph: RoutingGraph, src: int, dst: int,
                     weight_fn, allowed_fn) -> list[int] | None:
    """Lexicographically-smallest (by vertex-id sequence) minimum-weight
    path, or None when dst is unreachable."""
    if src == dst:
        return [src]
    dist = _dijkstra_from(graph, dst, weight_fn, allowed_fn)
    if src not in dist:
        return None
    path = [src]
    u = src
    guard = len(graph.vertices) + len(graph.edges) + 2
    while u != dst:
        best = None
        du = dist[u]
        for v, idx in graph.adjacency[u]:
            e = graph.edges[idx]
            if not allowed_fn(e):
                continue
            dv = dist.get(v)
            if dv is None or dv >= du:
                continue
            if abs(dv + weight_fn(e) - du) <= 1e-9:
                if best is None or v < best:
                    best = v
        if best is None:  # numerical dead end; cannot happen on sane graphs
            return None
        path.append(best)
        u = best
        guard -= 1
        if guard < 0:
            raise RuntimeError("path reconstruction did not terminate")
    return path


def _path_length(graph: RoutingGraph, path: list[int]) -> float:
    total = 0.0
    for u, v in zip(path, path[1:]):
        e = graph.edge_between(u, v)
        total += e.length
    return total


def _reachable(graph: RoutingGraph, src: int, allowed_fn) -> set[int]:
    seen = {src}
    stack = [src]
    while stack:
        u = stack.pop()
        for v, idx in graph.adjacency[u]:
            if v not in seen and allowed_fn(graph.edges[idx]):
                seen.add(v)
                stack.append(v)
    return seen


def exposure(graph: RoutingGraph, path: list[int]) -> tuple[float, int]:
    """Surveilled distance along ``path`` and the number of distinct
    cameras whose FoV it enters."""
    surveilled = 0.0
    cams: set[str] = set()
    for u, v in zip(path, path[1:]):
        e = graph.edge_between(u, v)
        if e is None:
            raise DisconnectedPath(f"no edge between {u} and {v}")
        if e.covered:
            surveilled += e.length
            cams |= e.cameras
    return surveilled, len(cams)


# -- routing ------------------------------------------------------------


def _allow_all(e: Edge) -> bool:
    return True


def _allow_uncovered(e: Edge) -> bool:
    return not e.covered


def _length_weight(e: Edge) -> float:
    return e.length


def _result(graph: RoutingGraph, path: list[int], status: str,
            to_vertex: int | None = None) -> RouteResult:
    geometry = [geo.unproject(graph.origin, graph.vertices[v]) for v in path]
    surveilled, cams = exposure(graph, path)
    return RouteResult(
        geometry=geometry,
        distance=_path_length(graph, path),
        surveilled_distance=surveilled,
        cameras_passed=cams,
        status=status,
        snapped_from=geometry[0] if geometry else None,
        snapped_to=geometry[-1] if geometry else None,
        path=list(path),
    )


def route(graph: RoutingGraph, req: RouteRequest,
          config: RouteConfig | None = None) -> RouteResult:
    """Answer a route query in the requested mode."""
    config = config or RouteConfig()
    if req.mode == "privacy":
        return _route_privacy(graph, req, config)
    s = snap(graph, req.from_pt, "default", config)
    t = snap(graph, req.to_pt, "default", config)
    default_path = _lexico_shortest(graph, s, t, _length_weight, _allow_all)
    if default_path is None:
        return RouteResult([], 0.0, 0.0, 0, "none", None, None)
    if req.mode == "default":
        return _result(graph, default_path, "complete")

    beta = config.safety_beta

    def safety_weight(e: Edge) -> float:
        return e.length / (1.0 + beta * e.coverage_count)

    safety_path = _lexico_shortest(graph, s, t, safety_weight, _allow_all)
    if _path_length(graph, safety_path) > config.detour_cap * _path_length(graph, default_path):
        return _result(graph, default_path, "complete")
    return _result(graph, safety_path, "complete")


def _route_privacy(graph: RoutingGraph, req: RouteRequest,
                   config: RouteConfig) -> RouteResult:
    s = snap(graph, req.from_pt, "privacy", config)
    plain_t = snap(graph, req.to_pt, "default", config)
    try:
        priv_t = snap(graph, req.to_pt, "privacy", config)
    except NoSnapCandidate:
        # destination enclosed by surveillance: refuse rather than cross
        return RouteResult([], 0.0, 0.0, 0, "none", None, None)

    path = _lexico_shortest(graph, s, priv_t, _length_weight, _allow_uncovered)
    if path is not None:
        status = "complete" if priv_t == plain_t else "partial"
        return _result(graph, path, status)

    # destination unreachable without surveillance: get as close as we can
    target = geo.project(graph.origin, req.to_pt)
    reachable = _reachable(graph, s, _allow_uncovered)
    best = min(reachable,
               key=lambda v: (graph.vertices[v].dist(target), v))
    path = _lexico_shortest(graph, s, best, _length_weight, _allow_uncovered)
    return _result(graph, path, "partial")
