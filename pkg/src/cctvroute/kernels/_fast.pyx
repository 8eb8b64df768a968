# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of kernels._pure.  Same contracts, same results."""

from libc.math cimport sqrt, INFINITY


def point_in_ring(double px, double py, double[::1] xs, double[::1] ys, double eps):
    cdef Py_ssize_t n = xs.shape[0]
    cdef double eps2 = eps * eps
    cdef bint inside = False
    cdef Py_ssize_t i, j
    cdef double xi, yi, xj, yj, dx, dy, seg2, t, cx, cy
    j = n - 1
    for i in range(n):
        xi = xs[i]
        yi = ys[i]
        xj = xs[j]
        yj = ys[j]
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


def segment_ring_params(double ax, double ay, double bx, double by,
                        double[::1] xs, double[::1] ys):
    cdef Py_ssize_t n = xs.shape[0]
    cdef double rx = bx - ax
    cdef double ry = by - ay
    cdef Py_ssize_t i, j
    cdef double sx, sy, denom, qpx, qpy, t, u
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


def polyline_point_min_dist(double[::1] xs, double[::1] ys, double px, double py):
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t i
    cdef double best, x0, y0, dx, dy, seg2, t, cx, cy, d2
    if n == 0:
        return INFINITY
    if n == 1:
        dx = xs[0] - px
        dy = ys[0] - py
        return sqrt(dx * dx + dy * dy)
    best = INFINITY
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
