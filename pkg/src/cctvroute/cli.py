"""Command-line entry points.

Every command prints exactly one JSON document on stdout; diagnostics go
to stderr.  Exit codes: 0 success, 2 bad input, 3 no route found.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import preprocess as pp
from . import router as routing
from . import service, synth
from .errors import CctvRouteError
from .geo import GeoPoint
from .osm import parse_camera_csv, parse_osm, write_camera_csv, write_osm


def _emit(payload: dict) -> None:
    click.echo(json.dumps(payload, sort_keys=True))


def _fail(message: str, code: int = 2) -> None:
    _emit({"error": message})
    sys.exit(code)


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        _fail(f"cannot read {path}: {exc}")
        raise  # unreachable


@click.group()
def cli():
    """CCTV-aware routing toolkit."""


@cli.command("preprocess")
@click.option("--osm", "osm_path", required=True)
@click.option("--cameras", "cameras_path", required=True)
@click.option("--out-osm", "out_osm", required=True)
@click.option("--out-weights", "out_weights", required=True)
def cmd_preprocess(osm_path, cameras_path, out_osm, out_weights):
    """Augment an OSM file with cameras; write OSM + weights CSV."""
    try:
        model = parse_osm(_read(osm_path))
        cameras = parse_camera_csv(_read(cameras_path))
        augmented = pp.augment(model, cameras)
        Path(out_osm).write_bytes(write_osm(augmented.model))
        Path(out_weights).write_bytes(pp.emit_weights(augmented))
    except CctvRouteError as exc:
        _fail(str(exc))
    _emit(augmented.stats)


@cli.command("route")
@click.option("--osm", "osm_path", required=True)
@click.option("--weights", "weights_path", required=True)
@click.option("--from", "from_s", required=True, help="lat,lon")
@click.option("--to", "to_s", required=True, help="lat,lon")
@click.option("--mode", type=click.Choice(routing.MODES), default="default")
@click.option("--geojson", is_flag=True, help="print full GeoJSON geometry")
@click.option("--beta", type=float, default=1.0, show_default=True)
@click.option("--cap", type=float, default=1.6, show_default=True)
def cmd_route(osm_path, weights_path, from_s, to_s, mode, geojson, beta, cap):
    """Answer a single route query against a preprocessed dataset."""
    try:
        from_pt = _parse_latlon(from_s)
        to_pt = _parse_latlon(to_s)
        augmented = routing.load_augmented(_read(osm_path), _read(weights_path))
        graph = routing.build_graph(augmented)
        config = routing.RouteConfig(safety_beta=beta, detour_cap=cap)
        result = routing.route(graph, routing.RouteRequest(from_pt, to_pt, mode), config)
    except (CctvRouteError, ValueError) as exc:
        _fail(str(exc))
    payload = {
        "status": result.status,
        "mode": mode,
        "distance_m": result.distance,
        "surveilled_distance_m": result.surveilled_distance,
        "cameras_passed": result.cameras_passed,
    }
    if geojson:
        payload["geometry"] = {
            "type": "LineString",
            "coordinates": [[p.lon, p.lat] for p in result.geometry],
        }
    else:
        payload["points"] = [[p.lat, p.lon] for p in result.geometry]
    _emit(payload)
    if result.status == "none":
        sys.exit(3)


@cli.command("serve")
@click.option("--config", "config_path", required=True)
def cmd_serve(config_path):
    """Run the HTTP API until interrupted."""
    import uvicorn

    try:
        config = service.ServiceConfig.from_file(config_path)
    except (OSError, TypeError, ValueError) as exc:
        _fail(f"bad config: {exc}")
    app = service.create_app(config)
    click.echo(f"listening on {config.host}:{config.port}", err=True)
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")


@cli.command("synth")
@click.option("--rows", type=int, required=True)
@click.option("--cols", type=int, required=True)
@click.option("--spacing", type=float, required=True)
@click.option("--cameras", "camera_count", type=int, required=True)
@click.option("--seed", type=int, required=True)
@click.option("--out-osm", "out_osm", required=True)
@click.option("--out-cameras", "out_cameras", required=True)
def cmd_synth(rows, cols, spacing, camera_count, seed, out_osm, out_cameras):
    """Generate a deterministic synthetic grid map plus random cameras."""
    try:
        spec = synth.GridSpec(rows=rows, cols=cols, spacing=spacing)
        model = synth.grid_model(spec)
        cameras = synth.random_cameras(model, camera_count, seed)
        Path(out_osm).write_bytes(write_osm(model))
        Path(out_cameras).write_bytes(write_camera_csv(cameras))
    except (CctvRouteError, ValueError) as exc:
        _fail(str(exc))
    _emit({"nodes": len(model.nodes), "ways": len(model.ways),
           "cameras": len(cameras), "seed": seed})


def _parse_latlon(value: str) -> GeoPoint:
    parts = value.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected lat,lon, got {value!r}")
    return GeoPoint(float(parts[0]), float(parts[1]))


def main():
    cli(prog_name="cctvroute")


if __name__ == "__main__":
    main()
