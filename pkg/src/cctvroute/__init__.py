"""CCTV-aware routing: OSM augmentation with camera fields of vision and
point-to-point queries in default, privacy and safety modes."""

from .errors import (AlreadyAugmentedError, CctvRouteError, CsvSchemaError,
                     DegenerateGeometry, DisconnectedPath, IntegrityError,
                     InvalidCamera, InvalidCoordinate, NoSnapCandidate,
                     ParseError)
from .geo import GeoPoint, LocalPoint

__version__ = "0.1.0"

__all__ = [
    "GeoPoint",
    "LocalPoint",
    "CctvRouteError",
    "InvalidCoordinate",
    "InvalidCamera",
    "DegenerateGeometry",
    "ParseError",
    "IntegrityError",
    "AlreadyAugmentedError",
    "CsvSchemaError",
    "NoSnapCandidate",
    "DisconnectedPath",
    "__version__",
]
