"""Compares the compiled geometry kernels against the pure-Python twins.

Usage: python3 benchmarks/bench_kernels.py [repeats]
"""

import math
import random
import sys
import time

import numpy as np

from cctvroute.kernels import _pure

try:
    from cctvroute.kernels import _fast
except ImportError:
    _fast = None


def make_inputs(n_rings=200, ring_size=36, seed=1):
    rng = random.Random(seed)
    rings = []
    for _ in range(n_rings):
        cx, cy = rng.uniform(-50, 50), rng.uniform(-50, 50)
        r = rng.uniform(5, 30)
        xs = np.array([cx + r * math.cos(2 * math.pi * k / ring_size)
                       for k in range(ring_size)])
        ys = np.array([cy + r * math.sin(2 * math.pi * k / ring_size)
                       for k in range(ring_size)])
        rings.append((xs, ys))
    points = [(rng.uniform(-80, 80), rng.uniform(-80, 80)) for _ in range(n_rings)]
    segs = [(rng.uniform(-80, 80), rng.uniform(-80, 80),
             rng.uniform(-80, 80), rng.uniform(-80, 80)) for _ in range(n_rings)]
    return rings, points, segs


def run(mod, rings, points, segs):
    t0 = time.perf_counter()
    acc = 0
    for (xs, ys), (px, py), (ax, ay, bx, by) in zip(rings, points, segs):
        acc += mod.point_in_ring(px, py, xs, ys, 1e-9)
        acc += len(mod.segment_ring_params(ax, ay, bx, by, xs, ys))
        acc += mod.polyline_point_min_dist(xs, ys, px, py)
    return time.perf_counter() - t0, acc


def main():
    repeats = int(sys.argv[1]) if len(sys.argv) > 1 else 50
    rings, points, segs = make_inputs()

    run(_pure, rings, points, segs)  # warm up
    pure_t = min(run(_pure, rings, points, segs)[0] for _ in range(repeats))
    print(f"pure python : {pure_t * 1e3:8.3f} ms per pass")

    if _fast is None:
        print("compiled    : unavailable (extension not built)")
        return
    run(_fast, rings, points, segs)
    fast_t = min(run(_fast, rings, points, segs)[0] for _ in range(repeats))
    print(f"compiled    : {fast_t * 1e3:8.3f} ms per pass")
    print(f"speedup     : {pure_t / fast_t:8.1f}x")

    _, a = run(_pure, rings, points, segs)
    _, b = run(_fast, rings, points, segs)
    assert abs(a - b) < 1e-6, "kernel outputs diverged"
    print("outputs agree")


if __name__ == "__main__":
    main()
