"""OSM XML parsing/serialization, camera CSV parsing, in-memory model.

Both input formats are accepted plain or gzip-compressed (sniffed from
the magic bytes).  Serialization is deterministic: nodes then ways in
ascending id order, tags in insertion order, coordinates at 7 decimals.
"""

from __future__ import annotations

import csv
import gzip
import io
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from xml.sax.saxutils import quoteattr

from .errors import CsvSchemaError, IntegrityError, InvalidCamera, InvalidCoordinate, ParseError
from .geo import GeoPoint

CAMERA_CSV_HEADER = ["id", "lat", "lon", "type", "radius", "angle", "direction"]


@dataclass
class OsmNode:
    id: int
    location: GeoPoint
    tags: dict[str, str] = field(default_factory=dict)


@dataclass
class OsmWay:
    id: int
    node_refs: list[int]
    tags: dict[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class Camera:
    id: str
    location: GeoPoint
    cam_type: str  # "round" | "directed"
    radius: float
    angle: float
    direction: float

    def sort_key(self):
        return (0, int(self.id), "") if self.id.lstrip("-").isdigit() else (1, 0, self.id)


class OsmModel:
    """Nodes, ways and (verbatim-preserved) unknown elements."""

    def __init__(self, nodes=None, ways=None, bounds=None, extras=None):
        self.nodes: dict[int, OsmNode] = dict(nodes or {})
        self.ways: dict[int, OsmWay] = dict(ways or {})
        self.extras: list[bytes] = list(extras or [])
        self.bounds = bounds if bounds is not None else self.computed_bounds()

    def computed_bounds(self):
        if not self.nodes:
            return (0.0, 0.0, 0.0, 0.0)
        lats = [n.location.lat for n in self.nodes.values()]
        lons = [n.location.lon for n in self.nodes.values()]
        return (min(lats), min(lons), max(lats), max(lons))

    def refresh_bounds(self):
        self.bounds = self.computed_bounds()

    def centroid(self) -> GeoPoint:
        minlat, minlon, maxlat, maxlon = self.bounds
        return GeoPoint((minlat + maxlat) / 2.0, (minlon + maxlon) / 2.0)

    def validate(self):
        for way in self.ways.values():
            if len(way.node_refs) < 2:
                raise IntegrityError(f"way {way.id} has fewer than 2 node refs",
                                     way_id=way.id)
            prev = None
            for ref in way.node_refs:
                if ref not in self.nodes:
                    raise IntegrityError(
                        f"way {way.id} references missing node {ref}",
                        way_id=way.id, node_ref=ref)
                if ref == prev:
                    raise IntegrityError(
                        f"way {way.id} has consecutive duplicate node {ref}",
                        way_id=way.id, node_ref=ref)
                prev = ref


def _decompress(data: bytes) -> bytes:
    if data[:2] == b"\x1f\x8b":
        return gzip.decompress(data)
    return data


def parse_osm(xml_bytes: bytes) -> OsmModel:
    """Parse an OSM XML document into an :class:`OsmModel`."""
    raw = _decompress(xml_bytes)
    try:
        root = ET.fromstring(raw)
    except ET.ParseError as exc:
        line, column = getattr(exc, "position", (None, None))
        raise ParseError(str(exc), line=line, column=column) from exc
    if root.tag != "osm":
        raise ParseError(f"expected <osm> root element, got <{root.tag}>")

    model = OsmModel(bounds=(0.0, 0.0, 0.0, 0.0))
    bounds = None
    for child in root:
        if child.tag == "bounds":
            bounds = (float(child.get("minlat")), float(child.get("minlon")),
                      float(child.get("maxlat")), float(child.get("maxlon")))
        elif child.tag == "node":
            tags = {t.get("k"): t.get("v") for t in child if t.tag == "tag"}
            try:
                loc = GeoPoint(float(child.get("lat")), float(child.get("lon")))
            except (TypeError, ValueError, InvalidCoordinate) as exc:
                raise ParseError(f"bad node coordinates: {exc}") from exc
            nid = int(child.get("id"))
            model.nodes[nid] = OsmNode(nid, loc, tags)
        elif child.tag == "way":
            refs = [int(nd.get("ref")) for nd in child if nd.tag == "nd"]
            tags = {t.get("k"): t.get("v") for t in child if t.tag == "tag"}
            wid = int(child.get("id"))
            model.ways[wid] = OsmWay(wid, refs, tags)
        else:
            model.extras.append(ET.tostring(child))
    model.bounds = bounds if bounds is not None else model.computed_bounds()
    model.validate()
    return model


def _fmt_coord(value: float) -> str:
    return f"{value:.7f}"


def write_osm(model: OsmModel) -> bytes:
    """Serialize a model to deterministic OSM XML bytes."""
    model.validate()
    out = io.StringIO()
    out.write("<?xml version='1.0' encoding='UTF-8'?>\n")
    out.write('<osm version="0.6" generator="cctvroute">\n')
    minlat, minlon, maxlat, maxlon = model.bounds
    out.write(f'  <bounds minlat={quoteattr(_fmt_coord(minlat))}'
              f' minlon={quoteattr(_fmt_coord(minlon))}'
              f' maxlat={quoteattr(_fmt_coord(maxlat))}'
              f' maxlon={quoteattr(_fmt_coord(maxlon))}/>\n')
    for nid in sorted(model.nodes):
        node = model.nodes[nid]
        lat = _fmt_coord(node.location.lat)
        lon = _fmt_coord(node.location.lon)
        if node.tags:
            out.write(f'  <node id="{nid}" lat={quoteattr(lat)} lon={quoteattr(lon)}>\n')
            for k, v in node.tags.items():
                out.write(f'    <tag k={quoteattr(str(k))} v={quoteattr(str(v))}/>\n')
            out.write("  </node>\n")
        else:
            out.write(f'  <node id="{nid}" lat={quoteattr(lat)} lon={quoteattr(lon)}/>\n')
    for wid in sorted(model.ways):
        way = model.ways[wid]
        out.write(f'  <way id="{wid}">\n')
        for ref in way.node_refs:
            out.write(f'    <nd ref="{ref}"/>\n')
        for k, v in way.tags.items():
            out.write(f'    <tag k={quoteattr(str(k))} v={quoteattr(str(v))}/>\n')
        out.write("  </way>\n")
    for extra in model.extras:
        out.write("  " + extra.decode("utf-8").strip() + "\n")
    out.write("</osm>\n")
    return out.getvalue().encode("utf-8")


def parse_camera_csv(csv_bytes: bytes) -> list[Camera]:
    """Parse the camera CSV (columns id,lat,lon,type,radius,angle,direction).

    Round cameras may leave angle/direction blank; they default to 360
    and 0.  Out-of-range values raise InvalidCamera with the 1-based data
    row number.
    """
    text = _decompress(csv_bytes).decode("utf-8-sig")
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise CsvSchemaError("empty camera CSV") from None
    header = [h.strip().lower() for h in header]
    if header != CAMERA_CSV_HEADER:
        raise CsvSchemaError(
            f"expected header {','.join(CAMERA_CSV_HEADER)}, got {','.join(header)}")

    cameras = []
    for row_no, row in enumerate(reader, start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(CAMERA_CSV_HEADER):
            raise InvalidCamera(f"row {row_no}: expected {len(CAMERA_CSV_HEADER)} "
                                f"columns, got {len(row)}", row=row_no)
        cam_id, lat_s, lon_s, type_s, radius_s, angle_s, dir_s = (c.strip() for c in row)
        cam_type = type_s.lower()
        if cam_type not in ("round", "directed"):
            raise InvalidCamera(f"row {row_no}: unknown camera type {type_s!r}", row=row_no)
        try:
            location = GeoPoint(float(lat_s), float(lon_s))
            radius = float(radius_s)
            angle = float(angle_s) if angle_s else (360.0 if cam_type == "round" else None)
            direction = float(dir_s) if dir_s else 0.0
        except InvalidCoordinate as exc:
            raise InvalidCamera(f"row {row_no}: {exc}", row=row_no) from exc
        except ValueError as exc:
            raise InvalidCamera(f"row {row_no}: non-numeric field ({exc})", row=row_no) from exc
        if angle is None:
            raise InvalidCamera(f"row {row_no}: directed camera needs an angle", row=row_no)
        if radius <= 0.0:
            raise InvalidCamera(f"row {row_no}: radius must be > 0, got {radius}", row=row_no)
        if not (0.0 < angle <= 360.0):
            raise InvalidCamera(f"row {row_no}: angle must be in (0, 360], got {angle}", row=row_no)
        if not (0.0 <= direction < 360.0):
            raise InvalidCamera(f"row {row_no}: direction must be in [0, 360), got {direction}",
                                row=row_no)
        if (cam_type == "round") != (angle >= 360.0):
            raise InvalidCamera(
                f"row {row_no}: type {cam_type!r} inconsistent with angle {angle}", row=row_no)
        cameras.append(Camera(cam_id, location, cam_type, radius, angle, direction))
    return cameras


def write_camera_csv(cameras: list[Camera]) -> bytes:
    """Inverse of parse_camera_csv; used by the synthetic map generator."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CAMERA_CSV_HEADER)
    for cam in cameras:
        angle = "" if cam.cam_type == "round" else f"{cam.angle:g}"
        direction = "" if cam.cam_type == "round" else f"{cam.direction:g}"
        writer.writerow([cam.id, _fmt_coord(cam.location.lat), _fmt_coord(cam.location.lon),
                         cam.cam_type, f"{cam.radius:g}", angle, direction])
    return out.getvalue().encode("utf-8")
