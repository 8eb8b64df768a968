"""Exception hierarchy shared by all cctvroute modules."""


class CctvRouteError(Exception):
    """Base class for all errors raised by this package."""


class InvalidCoordinate(CctvRouteError):
    """Latitude/longitude outside valid WGS84 bounds or non-finite."""


class InvalidCamera(CctvRouteError):
    """Camera attributes out of range (radius <= 0, bad angle, ...)."""

    def __init__(self, message, row=None):
        super().__init__(message)
        self.row = row


class DegenerateGeometry(CctvRouteError):
    """Zero-length polyline or otherwise unusable geometry."""


class ParseError(CctvRouteError):
    """Malformed OSM XML input."""

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class IntegrityError(CctvRouteError):
    """Referential integrity violation in an OSM model (dangling refs...)."""

    def __init__(self, message, way_id=None, node_ref=None):
        super().__init__(message)
        self.way_id = way_id
        self.node_ref = node_ref


class AlreadyAugmentedError(CctvRouteError):
    """Augmentation requested on a model that already carries CCTV data."""


class CsvSchemaError(CctvRouteError):
    """Camera CSV header does not match the expected schema."""


class NoSnapCandidate(CctvRouteError):
    """No suitable graph vertex found near the requested point."""


class DisconnectedPath(CctvRouteError):
    """A vertex sequence that is not a connected path in the graph."""
