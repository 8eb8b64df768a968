import importlib
import math
import random

import numpy as np
import pytest

import cctvroute.kernels as kernels
from cctvroute.kernels import _pure


def _compiled():
    try:
        from cctvroute.kernels import _fast
        return _fast
    except ImportError:
        return None


def _random_ring(rng, n):
    cx, cy = rng.uniform(-5, 5), rng.uniform(-5, 5)
    angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(n))
    xs = np.array([cx + rng.uniform(2, 10) * math.cos(a) for a in angles])
    ys = np.array([cy + rng.uniform(2, 10) * math.sin(a) for a in angles])
    return xs, ys


def test_dispatcher_exposes_flag():
    assert isinstance(kernels.USING_COMPILED, bool)
    assert callable(kernels.point_in_ring)
    assert callable(kernels.segment_ring_params)
    assert callable(kernels.polyline_point_min_dist)


def test_pure_env_forces_fallback(monkeypatch):
    monkeypatch.setenv("CCTVROUTE_PURE", "1")
    mod = importlib.reload(kernels)
    try:
        assert mod.USING_COMPILED is False
        assert mod.point_in_ring is _pure.point_in_ring
    finally:
        monkeypatch.delenv("CCTVROUTE_PURE")
        importlib.reload(kernels)


@pytest.mark.skipif(_compiled() is None, reason="compiled kernels unavailable")
class TestCompiledEquivalence:
    def test_point_in_ring_matches(self):
        fast = _compiled()
        rng = random.Random(3)
        for _ in range(200):
            xs, ys = _random_ring(rng, rng.randint(3, 24))
            px, py = rng.uniform(-20, 20), rng.uniform(-20, 20)
            assert (fast.point_in_ring(px, py, xs, ys, 1e-9)
                    == _pure.point_in_ring(px, py, xs, ys, 1e-9))

    def test_segment_ring_params_match(self):
        fast = _compiled()
        rng = random.Random(5)
        for _ in range(200):
            xs, ys = _random_ring(rng, rng.randint(3, 24))
            ax, ay = rng.uniform(-20, 20), rng.uniform(-20, 20)
            bx, by = rng.uniform(-20, 20), rng.uniform(-20, 20)
            tf = fast.segment_ring_params(ax, ay, bx, by, xs, ys)
            tp = _pure.segment_ring_params(ax, ay, bx, by, xs, ys)
            assert list(tf) == pytest.approx(list(tp), abs=1e-12)

    def test_polyline_min_dist_matches(self):
        fast = _compiled()
        rng = random.Random(7)
        for _ in range(200):
            n = rng.randint(2, 12)
            xs = np.array([rng.uniform(-30, 30) for _ in range(n)])
            ys = np.array([rng.uniform(-30, 30) for _ in range(n)])
            px, py = rng.uniform(-40, 40), rng.uniform(-40, 40)
            df = fast.polyline_point_min_dist(xs, ys, px, py)
            dp = _pure.polyline_point_min_dist(xs, ys, px, py)
            assert df == pytest.approx(dp, abs=1e-12)


class TestPureKernels:
    def test_point_in_unit_square(self):
        xs = np.array([0.0, 1.0, 1.0, 0.0])
        ys = np.array([0.0, 0.0, 1.0, 1.0])
        assert _pure.point_in_ring(0.5, 0.5, xs, ys, 1e-9)
        assert not _pure.point_in_ring(1.5, 0.5, xs, ys, 1e-9)
        # boundary and corner count as inside
        assert _pure.point_in_ring(1.0, 0.5, xs, ys, 1e-9)
        assert _pure.point_in_ring(0.0, 0.0, xs, ys, 1e-9)

    def test_segment_square_params(self):
        xs = np.array([0.0, 1.0, 1.0, 0.0])
        ys = np.array([0.0, 0.0, 1.0, 1.0])
        ts = _pure.segment_ring_params(-1.0, 0.5, 2.0, 0.5, xs, ys)
        assert list(ts) == pytest.approx([1.0 / 3.0, 2.0 / 3.0], abs=1e-12)

    def test_min_dist_to_segment(self):
        xs = np.array([0.0, 10.0])
        ys = np.array([0.0, 0.0])
        assert _pure.polyline_point_min_dist(xs, ys, 5.0, 3.0) == pytest.approx(3.0)
        assert _pure.polyline_point_min_dist(xs, ys, 13.0, 4.0) == pytest.approx(5.0)
