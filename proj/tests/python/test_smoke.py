import math
import os
from pathlib import Path

import numpy as np
import pytest

import minklab as mk

SCENARIOS = Path(os.environ.get("MINKLAB_SCENARIOS", Path(__file__).resolve().parents[2] / "scenarios"))


def test_bodies():
    sq = mk.make_polytope([[1, 1], [-1, 1], [-1, -1], [1, -1]])
    assert mk.support(sq, np.array([1.0, 2.0])) == 3.0
    assert mk.gauge(sq, np.array([0.5, -0.25])) == 0.5
    assert mk.diameter(sq) == pytest.approx(2 * math.sqrt(2))
    assert len(mk.polar(sq).vertices) == 4
    assert mk.containment_constants(mk.make_ball(2, 2.0)) == pytest.approx((0.5, 0.5))


def test_errors_are_raised():
    with pytest.raises(mk.Error, match="OriginNotInterior"):
        mk.make_interval(0.0, 1.0)


def test_exact_interval_with_point():
    e = mk.Shape.unite(mk.Shape.closed_interval(0, 1), mk.Shape.point(2))
    d = mk.Domain.whole(mk.AxisBox(np.array([-2.0]), np.array([4.0])))
    c = mk.make_interval(-1, 1)
    assert mk.exact_1d_content(e, d, c, mk.Functional.SM, mk.Target.set, 0.125) == 4.0
    assert mk.exact_1d_content(e, d, c, mk.Functional.M, mk.Target.reduced, 0.125) == 2.0


def test_raster_circle():
    disc = mk.Shape.ball(np.zeros(2), 1.0)
    d = mk.Domain.whole(mk.AxisBox(np.full(2, -1.5), np.full(2, 1.5)))
    m = mk.raster_content(disc, d, mk.make_ball(2, 1.0), mk.Functional.M, mk.Target.topological, 0.05, 1024)
    assert m == pytest.approx(2 * math.pi, rel=0.02)
    theta, label = mk.density(disc, np.array([1.0, 0.0]), 0.1)
    assert theta == pytest.approx(0.5, abs=0.02)
    assert label == "half"


def test_scenario_run():
    rows = mk.run_scenario(SCENARIOS / "interval_point.json")
    sm = [r for r in rows if r.functional == "SM"]
    assert sm and all(v == 4.0 for v in sm[0].values)


def test_verify_filter():
    results = mk.verify("convex")
    assert len(results) == 6
    assert all(r.passed for r in results)
