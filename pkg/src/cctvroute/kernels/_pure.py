"""Pure-Python geometry kernels.

These are the hot inner loops of the whole pipeline (ray casting,
segment/ring crossing scans, point-to-polyline distances).  A compiled
twin lives in ``_fast.pyx``; both must stay behaviorally identical, the
dispatcher in ``kernels/__init__`` picks one at import time.
"""

from math import sqrt


def point_in_ring(px, py, xs, ys, eps):
    """Even-odd containment test; points within ``eps`` of the boundary
    count as inside."""
    n = len(xs)
    eps2 = eps * eps
    inside = False
    j = n - 1
    for i in range(n):
        xi = xs[i]
        yi = ys[i]
        xj = xs[j]
        yj = ys[j]
        # boundary proximity against edge (j, i)
        dx = xi - xj
        dy = yi - yj
        seg2 = dx * dx + dy * dy
        if seg2 > 0.0:
            t = ((px - xj) * dx + (py - yj) * dy) / seg2
            if t < 0.0:
                t = 0.0
            elif t > 1.0:
                t = 1.0
            cx = xj + t * dx - px
            cy = yj + t * dy - py
        else:
            cx = xj - px
            cy = yj - py
        if cx * cx + cy * cy <= eps2:
            return True
        if (yi > py) != (yj > py):
            if px < (xj - xi) * (py - yi) / (yj - yi) + xi:
                inside = not inside
        j = i
    return inside


def segment_ring_params(ax, ay, bx, by, xs, ys):
    """Parameters t in [0, 1] where segment a->b meets the ring boundary.

    Raw hits only: duplicates from vertex touches and parallel edges are
    resolved by the caller.  Returns a sorted list of floats.
    """
    n = len(xs)
    rx = bx - ax
    ry = by - ay
    out = []
    j = n - 1
    for i in range(n):
        sx = xs[i] - xs[j]
        sy = ys[i] - ys[j]
        denom = rx * sy - ry * sx
        if denom != 0.0:
            qpx = xs[j] - ax
            qpy = ys[j] - ay
            t = (qpx * sy - qpy * sx) / denom
            u = (qpx * ry - qpy * rx) / denom
            if -1e-12 <= t <= 1.0 + 1e-12 and -1e-12 <= u <= 1.0 + 1e-12:
                if t < 0.0:
                    t = 0.0
                elif t > 1.0:
                    t = 1.0
                out.append(t)
        j = i
    out.sort()
    return out


def polyline_point_min_dist(xs, ys, px, py):
    """Minimum distance from point (px, py) to the open polyline xs/ys."""
    n = len(xs)
    if n == 0:
        return float("inf")
    if n == 1:
        dx = xs[0] - px
        dy = ys[0] - py
        return sqrt(dx * dx + dy * dy)
    best = float("inf")
    for i in range(n - 1):
        x0 = xs[i]
        y0 = ys[i]
        dx = xs[i + 1] - x0
        dy = ys[i + 1] - y0
        seg2 = dx * dx + dy * dy
        if seg2 > 0.0:
            t = ((px - x0) * dx + (py - y0) * dy) / seg2
            if t < 0.0:
                t = 0.0
            elif t > 1.0:
                t = 1.0
        else:
            t = 0.0
        cx = x0 + t * dx - px
        cy = y0 + t * dy - py
        d2 = cx * cx + cy * cy
        if d2 < best:
            best = d2
    return sqrt(best)
