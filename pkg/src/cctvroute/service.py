"""HTTP API: /route, /cameras, /health.

One process serves all three modes; the mode is a plain query parameter
because the router applies it at query time.  The dataset is held in an
immutable holder and swapped atomically on reload.
"""

from __future__ import annotations

import hashlib
import json
import threading
from contextlib import asynccontextmanager
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Query, Response
from fastapi.middleware.cors import CORSMiddleware

from . import geo
from . import router as routing
from .errors import InvalidCoordinate, NoSnapCandidate
from .geo import GeoPoint


@dataclass(frozen=True)
class ServiceConfig:
    osm_path: str = ""
    weights_path: str = ""
    host: str = "127.0.0.1"
    port: int = 8000
    safety_beta: float = 1.0
    detour_cap: float = 1.6
    cors_origins: tuple[str, ...] = ()

    def __post_init__(self):
        if self.safety_beta <= 0.0:
            raise ValueError("safety_beta must be > 0")
        if self.detour_cap < 1.0:
            raise ValueError("detour_cap must be >= 1")
        if not (0 < self.port < 65536):
            raise ValueError(f"invalid port {self.port}")

    @classmethod
    def from_file(cls, path: str) -> "ServiceConfig":
        raw = json.loads(Path(path).read_text())
        if "cors_origins" in raw:
            raw["cors_origins"] = tuple(raw["cors_origins"])
        return cls(**raw)


@dataclass
class Dataset:
    augmented: routing.AugmentedModel
    graph: routing.RoutingGraph
    cameras: list
    dataset_hash: str
    camera_geojson: dict = field(default_factory=dict)


def load_dataset(osm_bytes: bytes, weights_bytes: bytes) -> Dataset:
    augmented = routing.load_augmented(osm_bytes, weights_bytes)
    graph = routing.build_graph(augmented)
    cameras = []
    for node in augmented.model.nodes.values():
        tags = node.tags
        if tags.get("man_made") == "surveillance" and "camera:radius" in tags:
            cameras.append(node)
    cameras.sort(key=lambda n: n.id, reverse=True)
    return Dataset(
        augmented=augmented,
        graph=graph,
        cameras=cameras,
        dataset_hash=hashlib.sha256(osm_bytes).hexdigest(),
        camera_geojson=_camera_collection(augmented, cameras),
    )


def _camera_collection(augmented, camera_nodes) -> dict:
    features = []
    for node in camera_nodes:
        tags = node.tags
        cam_id = tags.get("ref", str(node.id))
        props = {
            "id": cam_id,
            "type": tags.get("camera:type", "round"),
            "radius": float(tags.get("camera:radius", "0")),
            "angle": float(tags.get("camera:angle", "360")),
            "direction": float(tags.get("camera:direction", "0")),
        }
        features.append({
            "type": "Feature",
            "geometry": {"type": "Point",
                         "coordinates": [node.location.lon, node.location.lat]},
            "properties": props,
        })
        fov = augmented.fov_index.get(cam_id)
        if fov is not None:
            ring = [[pt.lon, pt.lat] for pt in
                    (geo.unproject(augmented.origin, v) for v in fov.vertices)]
            ring.append(ring[0])
            features.append({
                "type": "Feature",
                "geometry": {"type": "Polygon", "coordinates": [ring]},
                "properties": {"id": cam_id, "kind": "fov"},
            })
    return {"type": "FeatureCollection", "features": features}


class DatasetHolder:
    def __init__(self):
        self._lock = threading.Lock()
        self._dataset: Dataset | None = None

    def get(self) -> Dataset | None:
        return self._dataset

    def swap(self, dataset: Dataset) -> None:
        with self._lock:
            self._dataset = dataset


def _json_response(payload: dict, status_code: int = 200) -> Response:
    # deterministic bodies: stable key order, no whitespace variance
    body = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return Response(content=body, status_code=status_code,
                    media_type="application/json")


def _parse_latlon(value: str) -> GeoPoint:
    parts = value.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected lat,lon, got {value!r}")
    return GeoPoint(float(parts[0]), float(parts[1]))


def create_app(config: ServiceConfig, holder: DatasetHolder | None = None) -> FastAPI:
    holder = holder or DatasetHolder()

    @asynccontextmanager
    async def _lifespan(app: FastAPI):
        if holder.get() is None and config.osm_path and config.weights_path:
            holder.swap(load_dataset(Path(config.osm_path).read_bytes(),
                                     Path(config.weights_path).read_bytes()))
        yield

    app = FastAPI(title="cctvroute", lifespan=_lifespan)
    app.state.holder = holder
    app.state.config = config
    route_config = routing.RouteConfig(safety_beta=config.safety_beta,
                                       detour_cap=config.detour_cap)
    if config.cors_origins:
        app.add_middleware(CORSMiddleware, allow_origins=list(config.cors_origins),
                           allow_methods=["GET"], allow_headers=["*"])

    @app.get("/health")
    def health():
        ds = holder.get()
        if ds is None:
            return _json_response({"status": "loading"}, 503)
        return _json_response({
            "status": "ok",
            "dataset_hash": ds.dataset_hash,
            "camera_count": len(ds.cameras),
        })

    @app.get("/cameras")
    def cameras():
        ds = holder.get()
        if ds is None:
            return _json_response({"error": "dataset not loaded"}, 503)
        return _json_response(ds.camera_geojson)

    @app.get("/route")
    def route_query(from_: str = Query("", alias="from"), to: str = Query(""),
                    mode: str = Query("default")):
        ds = holder.get()
        if ds is None:
            return _json_response({"error": "dataset not loaded"}, 503)
        try:
            from_pt = _parse_latlon(from_)
            to_pt = _parse_latlon(to)
            req = routing.RouteRequest(from_pt, to_pt, mode)
        except (ValueError, InvalidCoordinate) as exc:
            return _json_response({"error": str(exc)}, 400)
        try:
            result = routing.route(ds.graph, req, route_config)
        except NoSnapCandidate as exc:
            return _json_response({"error": str(exc)}, 422)
        return _json_response({
            "geometry": {
                "type": "LineString",
                "coordinates": [[p.lon, p.lat] for p in result.geometry],
            },
            "distance_m": result.distance,
            "surveilled_distance_m": result.surveilled_distance,
            "cameras_passed": result.cameras_passed,
            "status": result.status,
            "snapped_from": _point(result.snapped_from),
            "snapped_to": _point(result.snapped_to),
        })

    return app


def _point(p: GeoPoint | None):
    if p is None:
        return None
    return {"lat": p.lat, "lon": p.lon}
