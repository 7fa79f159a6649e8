"""Instance construction, curves, and serialization."""
import math

import numpy as np
import pytest

from geofrechet.geometry import (MatchingPath, ParamPoint, PolyCurve,
                                 build_instance, instance_from_json_dict,
                                 instance_to_json_dict)


SQUARE_R = [(0, 0), (1, 0)]
SQUARE_B = [(0, 0), (0, 1), (1, 1), (1, 0)]


def test_square_split_builds():
    inst = build_instance(SQUARE_R, SQUARE_B)
    assert inst.n == 2 and inst.m == 4
    assert not inst.degenerate
    assert inst.area() == pytest.approx(1.0)


def test_boundary_is_ccw_cycle():
    inst = build_instance(SQUARE_R, SQUARE_B)
    pts = np.asarray(inst.boundary)
    x, y = pts[:, 0], pts[:, 1]
    area2 = float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))
    assert area2 > 0


def test_shared_endpoints_required():
    with pytest.raises(ValueError):
        build_instance([(0, 0), (1, 0)], [(0, 0.5), (0, 1), (1, 1), (1, 0)])


def test_crossing_curves_rejected():
    with pytest.raises(ValueError):
        build_instance([(0, 0), (2, 2)], [(0, 0), (2, 0), (0, 2), (2, 2)])


def test_degenerate_strip_accepted():
    inst = build_instance([(0, 0), (2, 0)], [(0, 0), (1, 0), (2, 0)])
    assert inst.degenerate
    assert inst.area() == pytest.approx(0.0)


def test_curve_eval_and_clamp():
    c = PolyCurve([(0, 0), (1, 0), (1, 2)])
    assert tuple(c.eval(1.5)) == (0.5, 0.0)
    assert tuple(c.eval(3.0)) == (1.0, 2.0)
    with pytest.raises(ValueError):
        c.eval(0.0)
    with pytest.raises(ValueError):
        c.eval(99)


def test_subcurve_vertices():
    c = PolyCurve([(0, 0), (1, 0), (2, 0), (3, 0)])
    s = c.subcurve(1.5, 3.0)
    assert s.n == 3
    assert tuple(s.pts[0]) == (0.5, 0.0)
    assert tuple(s.pts[-1]) == (2.0, 0.0)
    point = c.subcurve(2.0, 2.0)
    assert point.n == 1


def test_is_simple():
    assert PolyCurve([(0, 0), (1, 0), (1, 1)]).is_simple()
    assert not PolyCurve([(0, 0), (2, 2), (2, 0), (0, 2)]).is_simple()


def test_matching_path_bimonotone():
    good = MatchingPath([ParamPoint(1, 1), ParamPoint(2, 1), ParamPoint(2, 3)], 0.0)
    assert good.check_bimonotone()
    bad = MatchingPath([ParamPoint(1, 1), ParamPoint(2, 3), ParamPoint(1.5, 3)], 0.0)
    assert not bad.check_bimonotone()


def test_json_round_trip():
    inst = build_instance(SQUARE_R, SQUARE_B)
    d = instance_to_json_dict(inst)
    inst2 = instance_from_json_dict(d)
    assert np.allclose(inst.R.pts, inst2.R.pts)
    assert np.allclose(inst.B.pts, inst2.B.pts)


def test_triangulation_covers_area():
    inst = build_instance(SQUARE_R, SQUARE_B)
    total = 0.0
    bd = inst.boundary
    for (a, b, c) in inst.triangles:
        pa, pb, pc = bd[a], bd[b], bd[c]
        total += 0.5 * abs((pb[0] - pa[0]) * (pc[1] - pa[1]) -
                           (pb[1] - pa[1]) * (pc[0] - pa[0]))
    assert total == pytest.approx(inst.area())
