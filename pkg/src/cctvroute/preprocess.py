"""Augment an OSM model with camera data.

Per camera (ascending id): add a camera node, build its field-of-vision
polygon, split every travellable way near it into left/middle/right
parallels with connector stubs, inject entrance/exit nodes where ways
cross the FoV ring, and accumulate per-edge coverage counts for the
safety-mode weight table.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from . import geo
from .errors import AlreadyAugmentedError, DegenerateGeometry
from .geo import FovPolygon, GeoPoint, LocalPoint
from .osm import Camera, OsmModel, OsmNode, OsmWay

#: Fallback way widths (meters) when the `width` tag is absent or junk.
DEFAULT_WIDTHS = {
    "footway": 3.0,
    "path": 3.0,
    "cycleway": 3.0,
    "residential": 6.0,
    "service": 6.0,
}
DEFAULT_WIDTH_OTHER = 8.0

SURVEILLANCE_TAGS = {"man_made": "surveillance", "surveillance:type": "camera"}


@dataclass(frozen=True)
class PreprocessConfig:
    arc_step: float = geo.DEFAULT_ARC_STEP
    min_extract_radius: float = 25.0
    extract_pad: float = 5.0


@dataclass
class SplitWaySet:
    original_way_id: int
    left_way_id: int
    middle_way_id: int
    right_way_id: int
    offset: float
    connector_way_ids: list[int] = field(default_factory=list)


@dataclass(frozen=True)
class WeightRow:
    from_node: int
    to_node: int
    coverage_count: int


@dataclass
class AugmentedModel:
    model: OsmModel
    weights: list[WeightRow]
    fov_index: dict[str, FovPolygon]
    origin: GeoPoint
    edge_cameras: dict[tuple[int, int], frozenset[str]]
    splits: dict[int, SplitWaySet] = field(default_factory=dict)
    stats: dict[str, int] = field(default_factory=dict)


def is_travellable(way: OsmWay) -> bool:
    return "highway" in way.tags


def effective_width(way: OsmWay) -> float:
    raw = way.tags.get("width")
    if raw is not None:
        try:
            width = float(raw)
            if width > 0.0:
                return width
        except ValueError:
            pass
    highway = way.tags.get("highway", "")
    return DEFAULT_WIDTHS.get(highway, DEFAULT_WIDTH_OTHER)


def _looks_augmented(model: OsmModel) -> bool:
    for way in model.ways.values():
        if "cctv:parent" in way.tags or "cctv:connector" in way.tags:
            return True
    for node in model.nodes.values():
        if node.tags.get("man_made") == "surveillance" and "camera:radius" in node.tags:
            return True
    return False


def _copy_model(model: OsmModel) -> OsmModel:
    nodes = {nid: OsmNode(n.id, n.location, dict(n.tags)) for nid, n in model.nodes.items()}
    ways = {wid: OsmWay(w.id, list(w.node_refs), dict(w.tags)) for wid, w in model.ways.items()}
    return OsmModel(nodes=nodes, ways=ways, bounds=model.bounds, extras=list(model.extras))


class _Augmenter:
    """Mutable workspace shared across the per-camera processing steps."""

    def __init__(self, model: OsmModel, config: PreprocessConfig):
        self.model = model
        self.config = config
        self.origin = model.centroid()
        self.local: dict[int, LocalPoint] = {}
        self.coverage: dict[tuple[int, int], set[str]] = {}
        self.splits: dict[int, SplitWaySet] = {}
        self.fov_index: dict[str, FovPolygon] = {}
        self.boundary_nodes = 0
        self._next_node_id = min([-1] + [nid - 1 for nid in model.nodes if nid < 0])
        self._next_way_id = min([-1] + [wid - 1 for wid in model.ways if wid < 0])
        self.max_width = max(
            [effective_width(w) for w in model.ways.values() if is_travellable(w)],
            default=0.0)

    # -- coordinates ----------------------------------------------------

    def local_pt(self, node_id: int) -> LocalPoint:
        pt = self.local.get(node_id)
        if pt is None:
            pt = geo.project(self.origin, self.model.nodes[node_id].location)
            self.local[node_id] = pt
        return pt

    def way_line(self, way: OsmWay) -> list[LocalPoint]:
        return [self.local_pt(ref) for ref in way.node_refs]

    # -- id allocation --------------------------------------------------

    def new_node(self, pt: LocalPoint, tags: dict[str, str]) -> int:
        nid = self._next_node_id
        self._next_node_id -= 1
        self.model.nodes[nid] = OsmNode(nid, geo.unproject(self.origin, pt), tags)
        self.local[nid] = pt
        return nid

    def new_way(self, refs: list[int], tags: dict[str, str]) -> int:
        wid = self._next_way_id
        self._next_way_id -= 1
        self.model.ways[wid] = OsmWay(wid, refs, tags)
        return wid

    # -- splitting ------------------------------------------------------

    def extract_radius(self, camera: Camera) -> float:
        return max(self.config.min_extract_radius,
                   camera.radius + self.max_width / 2.0 + self.config.extract_pad)

    def way_near(self, way: OsmWay, center: LocalPoint, radius: float) -> bool:
        line = self.way_line(way)
        return geo.polyline_min_dist(line, center) <= radius

    def _junction_indices(self, way: OsmWay) -> list[int]:
        shared: set[int] = set()
        for other in self.model.ways.values():
            if other.id == way.id or not is_travellable(other):
                continue
            for ref in other.node_refs:
                shared.add(ref)
        idx = {0, len(way.node_refs) - 1}
        for i, ref in enumerate(way.node_refs):
            if ref in shared:
                idx.add(i)
        return sorted(idx)

    def split_way(self, way: OsmWay, width: float) -> SplitWaySet:
        if width <= 0.0:
            raise ValueError(f"width must be > 0, got {width}")
        line = self.way_line(way)
        offset = width / 2.0
        left_pts, left_map = geo.offset_polyline_indexed(line, offset, "left")
        right_pts, right_map = geo.offset_polyline_indexed(line, offset, "right")
        if len(left_map) != len(way.node_refs):
            # duplicate coordinates collapsed during offsetting
            raise DegenerateGeometry(f"way {way.id} has coincident nodes")

        side_tags = {"cctv:parent": str(way.id)}
        left_refs = [self.new_node(p, {}) for p in left_pts]
        right_refs = [self.new_node(p, {}) for p in right_pts]
        left_id = self.new_way(left_refs, {**way.tags, "cctv:side": "left", **side_tags})
        right_id = self.new_way(right_refs, {**way.tags, "cctv:side": "right", **side_tags})
        way.tags.update({"cctv:side": "middle", **side_tags})

        split = SplitWaySet(way.id, left_id, way.id, right_id, offset)
        connector_tags = {"highway": way.tags.get("highway", "footway"),
                          "cctv:connector": "yes", "cctv:parent": str(way.id)}
        for i in self._junction_indices(way):
            refs = [left_refs[left_map[i]], way.node_refs[i], right_refs[right_map[i]]]
            split.connector_way_ids.append(self.new_way(refs, dict(connector_tags)))
        self.splits[way.id] = split
        return split

    # -- boundary injection ---------------------------------------------

    def inject_boundary_nodes(self, way: OsmWay, fov: FovPolygon) -> None:
        cam_id = fov.camera_id
        new_refs = [way.node_refs[0]]
        for u, v in zip(way.node_refs, way.node_refs[1:]):
            a = self.local_pt(u)
            b = self.local_pt(v)
            seg_len = a.dist(b)
            cov = geo.intersect_segment_polygon(a, b, fov)
            cut_ts = [t for t, _ in cov.crossings
                      if t * seg_len > geo.GRAZE_EPS and (1.0 - t) * seg_len > geo.GRAZE_EPS]
            mids: list[int] = []
            for t in cut_ts:
                pt = LocalPoint(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t)
                mids.append(self.new_node(
                    pt, {"access": "surveillance", "cctv:camera": cam_id}))
                self.boundary_nodes += 1
            chain = [u] + mids + [v]
            old = self.coverage.pop(_edge_key(u, v), set())
            ts = [0.0] + cut_ts + [1.0]
            for (p, q), (t0, t1) in zip(zip(chain, chain[1:]), zip(ts, ts[1:])):
                key = _edge_key(p, q)
                cams = self.coverage.setdefault(key, set())
                cams |= old
                tm = 0.5 * (t0 + t1)
                mid = LocalPoint(a.x + (b.x - a.x) * tm, a.y + (b.y - a.y) * tm)
                if geo.point_in_polygon(mid, fov) and (t1 - t0) * seg_len > geo.GRAZE_EPS:
                    cams.add(cam_id)
                if not cams:
                    del self.coverage[key]
            new_refs.extend(mids)
            new_refs.append(v)
        way.node_refs = new_refs

    # -- per-camera driver ----------------------------------------------

    def process_camera(self, camera: Camera) -> None:
        center = geo.project(self.origin, camera.location)
        cam_tags = dict(SURVEILLANCE_TAGS)
        cam_tags.update({
            "camera:type": camera.cam_type,
            "camera:radius": f"{camera.radius:g}",
            "camera:angle": f"{camera.angle:g}",
            "camera:direction": f"{camera.direction:g}",
            "ref": camera.id,
        })
        self.new_node(center, cam_tags)
        fov = geo.build_fov_polygon(camera, self.config.arc_step, apex=center)
        self.fov_index[camera.id] = fov

        radius = self.extract_radius(camera)
        to_split = [w for w in sorted(self.model.ways.values(), key=lambda w: w.id)
                    if is_travellable(w) and "cctv:parent" not in w.tags
                    and self.way_near(w, center, radius)]
        for way in to_split:
            self.split_way(way, effective_width(way))
        for way in sorted(self.model.ways.values(), key=lambda w: w.id):
            if is_travellable(way) and self.way_near(way, center, radius):
                self.inject_boundary_nodes(way, fov)


def _edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u <= v else (v, u)


def augment(model: OsmModel, cameras: list[Camera],
            config: PreprocessConfig | None = None) -> AugmentedModel:
    """Run the full camera-augmentation pipeline on a copy of ``model``."""
    config = config or PreprocessConfig()
    if _looks_augmented(model):
        raise AlreadyAugmentedError("model already contains CCTV augmentation")
    model.validate()
    work = _copy_model(model)
    aug = _Augmenter(work, config)
    for camera in sorted(cameras, key=Camera.sort_key):
        aug.process_camera(camera)
    work.refresh_bounds()

    weights = []
    edge_cameras = {}
    for (u, v), cams in aug.coverage.items():
        edge_cameras[(u, v)] = frozenset(cams)
        weights.append(WeightRow(u, v, len(cams)))
        weights.append(WeightRow(v, u, len(cams)))
    weights.sort(key=lambda r: (r.from_node, r.to_node))

    stats = {
        "cameras_added": len(cameras),
        "ways_split": len(aug.splits),
        "boundary_nodes": aug.boundary_nodes,
    }
    return AugmentedModel(model=work, weights=weights, fov_index=aug.fov_index,
                          origin=aug.origin, edge_cameras=edge_cameras,
                          splits=aug.splits, stats=stats)


def process_camera(camera: Camera, model: OsmModel, accumulator: _Augmenter) -> None:
    """Single-camera step of :func:`augment` (exposed for tests/tools)."""
    assert accumulator.model is model
    accumulator.process_camera(camera)


def split_way(way: OsmWay, width: float, model: OsmModel,
              config: PreprocessConfig | None = None) -> SplitWaySet:
    """Split one way into left/middle/right parallels within ``model``."""
    aug = _Augmenter(model, config or PreprocessConfig())
    return aug.split_way(way, width)


def inject_boundary_nodes(way: OsmWay, fov: FovPolygon, model: OsmModel,
                          weights: dict[tuple[int, int], set[str]],
                          config: PreprocessConfig | None = None) -> None:
    """Insert entrance/exit nodes for one way against one FoV polygon."""
    aug = _Augmenter(model, config or PreprocessConfig())
    aug.coverage = weights
    aug.inject_boundary_nodes(way, fov)


def create_local_extract(model: OsmModel, center: GeoPoint, radius: float) -> OsmModel:
    """Sub-model with every way having at least one node inside the circle
    (whole ways), plus all loose nodes inside it."""
    if radius <= 0.0:
        raise ValueError(f"radius must be > 0, got {radius}")
    origin = model.centroid()
    c = geo.project(origin, center)
    inside = {nid for nid, node in model.nodes.items()
              if geo.project(origin, node.location).dist(c) <= radius}
    ways = {wid: OsmWay(w.id, list(w.node_refs), dict(w.tags))
            for wid, w in model.ways.items()
            if any(ref in inside for ref in w.node_refs)}
    keep = set(inside)
    for way in ways.values():
        keep.update(way.node_refs)
    nodes = {nid: OsmNode(n.id, n.location, dict(n.tags))
             for nid, n in model.nodes.items() if nid in keep}
    return OsmModel(nodes=nodes, ways=ways)


def emit_weights(augmented: AugmentedModel) -> bytes:
    """Serialize the safety-weight table as CSV (from,to,coverage)."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["from", "to", "coverage"])
    for row in sorted(augmented.weights, key=lambda r: (r.from_node, r.to_node)):
        writer.writerow([row.from_node, row.to_node, row.coverage_count])
    return out.getvalue().encode("utf-8")


def parse_weights(csv_bytes: bytes) -> list[WeightRow]:
    """Read a weights CSV back into WeightRows."""
    text = csv_bytes.decode("utf-8")
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    rows = []
    for row in reader:
        if not row:
            continue
        rows.append(WeightRow(int(row[0]), int(row[1]), int(row[2])))
    return rows
