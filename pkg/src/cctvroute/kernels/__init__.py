"""Kernel dispatch: compiled extension when available, pure Python otherwise.

Set ``CCTVROUTE_PURE=1`` to force the pure implementation (used by the
benchmark and by CI environments without a compiler).
"""

import os

from . import _pure

if os.environ.get("CCTVROUTE_PURE") == "1":
    _impl = _pure
    USING_COMPILED = False
else:
    try:
        from . import _fast as _impl  # type: ignore[no-redef]

        USING_COMPILED = True
    except ImportError:
        _impl = _pure
        USING_COMPILED = False

point_in_ring = _impl.point_in_ring
segment_ring_params = _impl.segment_ring_params
polyline_point_min_dist = _impl.polyline_point_min_dist

__all__ = [
    "USING_COMPILED",
    "point_in_ring",
    "segment_ring_params",
    "polyline_point_min_dist",
]
