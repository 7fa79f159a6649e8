"""Nearest-neighbor profiles, fans, and the slab partition."""
import math
import random

import pytest

from geofrechet.generators import gen_convex, gen_pocket, gen_simple
from geofrechet.geodesic import get_engine
from geofrechet.nnprofile import (EmptyFanLeaf, build_slabs, fan_leaf,
                                  nn_profile, nn_profile_reverse)


def dense_nn(inst, x, samples=400):
    eng = get_engine(inst)
    p = tuple(inst.R.eval(x))
    best = (None, math.inf)
    for k in range(samples + 1):
        y = 1 + (inst.B.n - 1) * k / samples
        d = eng.distance(p, tuple(inst.B.eval(y)))
        if d < best[1]:
            best = (y, d)
    return best


@pytest.mark.parametrize("seed", range(5))
def test_profile_values_dominate_sampling(seed):
    """nn_at never exceeds the dense-sampling minimum (it may be smaller:
    the sampler's resolution is the only gap)."""
    inst = gen_pocket(seed) if seed % 2 == 0 else gen_simple(seed, spikes=1)
    prof = nn_profile(inst)
    rng = random.Random(seed)
    for _ in range(25):
        x = rng.uniform(1, inst.R.n)
        y, v = prof.nn_at(x)
        ys, vs = dense_nn(inst, x)
        assert v <= vs + 1e-9
        assert v >= vs - 0.05  # sampling resolution bound


def test_regimes_cover_parameter_range():
    for seed in range(4):
        inst = gen_pocket(seed)
        prof = nn_profile(inst)
        assert prof.regimes[0][0] == pytest.approx(1.0)
        assert prof.regimes[-1][1] == pytest.approx(float(inst.R.n))
        for k in range(len(prof.regimes) - 1):
            assert prof.regimes[k][1] == pytest.approx(prof.regimes[k + 1][0], abs=1e-9)


def test_breakpoints_have_distinct_sides():
    inst = gen_pocket(0)
    prof = nn_profile(inst)
    for (x, y0, y1) in prof.breakpoints:
        assert abs(y1 - y0) > 1e-3


def test_x_for_target_inverts_profile():
    inst = gen_pocket(1)
    prof = nn_profile(inst)
    for (x0, x1, y0, y1) in prof.regimes:
        if y1 - y0 < 1e-6:
            continue
        y = 0.5 * (y0 + y1)
        x = prof.x_for_target(y)
        ygot, _ = prof.nn_at(x)
        assert ygot == pytest.approx(y, abs=1e-5)


@pytest.mark.parametrize("seed", range(5))
def test_fan_leaf_matches_dense_scan(seed):
    inst = gen_pocket(seed) if seed % 2 == 0 else gen_simple(seed, spikes=1)
    eng = get_engine(inst)
    prof = nn_profile(inst)
    rng = random.Random(seed)
    for _ in range(6):
        x = rng.uniform(1, inst.R.n)
        y, v = prof.nn_at(x)
        delta = v + rng.uniform(0.05, 0.8)
        apex = tuple(inst.B.eval(y))
        fan = fan_leaf(inst, apex, x, delta)
        lo, hi = fan.leaf
        assert lo - 1e-9 <= x <= hi + 1e-9
        # interval points are free, points just outside are not
        for t in (lo, hi, 0.5 * (lo + hi)):
            d = eng.distance(tuple(inst.R.eval(t)), apex)
            assert d <= delta * (1 + 1e-9) + 1e-9
        step = 1e-4
        if lo > 1 + step:
            assert eng.distance(tuple(inst.R.eval(lo - step)), apex) > delta - 1e-9
        if hi < inst.R.n - step:
            assert eng.distance(tuple(inst.R.eval(hi + step)), apex) > delta - 1e-9


def test_fan_leaf_rejects_far_seed():
    inst = gen_pocket(0)
    prof = nn_profile(inst)
    y, v = prof.nn_at(1.5)
    with pytest.raises(ValueError):
        fan_leaf(inst, tuple(inst.B.eval(y)), 1.5, v * 0.1)


@pytest.mark.parametrize("seed", range(5))
def test_slabs_tile_and_alternate(seed):
    inst = gen_pocket(seed)
    prof = nn_profile(inst)
    delta = prof.max_value() * 1.3
    slabs = build_slabs(inst, prof, delta)
    assert slabs[0].y_lo == pytest.approx(1.0)
    assert slabs[-1].y_hi == pytest.approx(float(inst.B.n))
    for k in range(len(slabs) - 1):
        assert slabs[k].y_hi == pytest.approx(slabs[k + 1].y_lo, abs=1e-9)
        if slabs[k].kind == "far":
            assert slabs[k + 1].kind == "near"
    for s in slabs:
        assert s.kind in ("near", "far")
        assert s.entrance[0] <= s.entrance[1] + 1e-12
        assert s.exit[0] <= s.exit[1] + 1e-12


def test_far_slab_interiors_are_far(seed=0):
    """No y strictly inside a far slab appears as a nearest-neighbor image."""
    inst = gen_pocket(seed)
    prof = nn_profile(inst)
    delta = prof.max_value() * 1.2
    slabs = build_slabs(inst, prof, delta)
    images = [prof.nn_at(1 + (inst.R.n - 1) * k / 400)[0] for k in range(401)]
    for s in slabs:
        if s.kind != "far":
            continue
        for y in images:
            assert not (s.y_lo + 1e-6 < y < s.y_hi - 1e-6)


def test_small_delta_raises_empty_fan():
    inst = gen_pocket(2)
    prof = nn_profile(inst)
    with pytest.raises(EmptyFanLeaf):
        build_slabs(inst, prof, prof.max_value() * 1e-3)


def test_reverse_profile_swaps_roles():
    inst = gen_pocket(3)
    prof = nn_profile_reverse(inst)
    assert prof.regimes[-1][1] == pytest.approx(float(inst.B.n))
    y, v = prof.nn_at(1.0)
    assert v == pytest.approx(0.0, abs=1e-9)  # shared endpoint


def test_convex_profile_monotone_images():
    inst = gen_convex(10, 5)
    prof = nn_profile(inst)
    ys = [prof.nn_at(1 + (inst.R.n - 1) * k / 100)[0] for k in range(101)]
    for a, b in zip(ys, ys[1:]):
        assert b >= a - 1e-6
