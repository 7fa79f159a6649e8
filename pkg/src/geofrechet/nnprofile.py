"""Nearest-neighbor profile of R onto B, near/far classification, slab
partition with entrance/exit intervals, and nearest-neighbor fans.

The profile is built as the lower envelope of the per-edge distance
profiles along R; envelope breakpoints are located by bisection on the
difference of the two competing edge distances.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .geometry import Point2, PolyCurve, PolygonInstance
from .geodesic import get_engine

_BP_TOL = 1e-10
_JUMP = 0.02  # minimal NN-parameter jump treated as a candidate breakpoint


class EmptyFanLeaf(Exception):
    """Raised when a near apex has no fan leaf; only possible for δ < δ_H."""


@dataclass
class Fan:
    apex: Point2
    leaf: tuple  # (x_lo, x_hi) on R
    apex_y: Optional[float] = None


@dataclass
class Slab:
    kind: str  # "near" | "far"
    y_lo: float
    y_hi: float
    entrance: tuple  # x-interval at y_lo
    exit: tuple      # x-interval at y_hi


@dataclass
class NNProfile:
    """Envelope of nearest points on `target` seen from along `source`."""
    breakpoints: list  # (x, y_before, y_after)
    regimes: list      # (x0, x1, y0, y1)
    inst: PolygonInstance = field(repr=False)
    source: PolyCurve = field(repr=False)
    target: PolyCurve = field(repr=False)

    def nn_at(self, x: float):
        """(nearest parameter on target, distance) for source point x."""
        return _nn_point(self.inst, self.source, self.target, x)

    def max_value(self) -> float:
        """sup_x d(source(x), target); seeded at regime ends and vertices,
        sharpened by golden-section around interior local maxima."""
        if getattr(self, "_maxv", None) is not None:
            return self._maxv
        xs = set()
        for (x0, x1, _, _) in self.regimes:
            xs.add(x0)
            xs.add(x1)
            for i in range(int(math.ceil(x0)), int(math.floor(x1)) + 1):
                if x0 <= i <= x1:
                    xs.add(float(i))
        if not xs:
            self._maxv = 0.0
            return 0.0
        grid = sorted(xs)
        best = max(self.nn_at(x)[1] for x in grid)
        for a, b in zip(grid, grid[1:]):
            if b - a <= 1e-9:
                continue
            pts = [a + (b - a) * k / 8 for k in range(9)]
            vals = [self.nn_at(x)[1] for x in pts]
            best = max(best, max(vals))
            for k in range(1, 8):
                if vals[k] < vals[k - 1] or vals[k] < vals[k + 1]:
                    continue
                lo, hi = pts[k - 1], pts[k + 1]
                for _ in range(50):
                    m1 = lo + (hi - lo) * 0.382
                    m2 = lo + (hi - lo) * 0.618
                    if self.nn_at(m1)[1] < self.nn_at(m2)[1]:
                        lo = m1
                    else:
                        hi = m2
                best = max(best, self.nn_at(0.5 * (lo + hi))[1])
        self._maxv = best
        return best

    def x_for_target(self, y: float) -> float:
        """Some x whose nearest neighbor is target(y); y must be near."""
        for (x0, x1, y0, y1) in self.regimes:
            if y0 - 1e-9 <= y <= y1 + 1e-9:
                if y <= y0:
                    return x0
                if y >= y1:
                    return x1
                lo, hi = x0, x1
                for _ in range(80):
                    mid = 0.5 * (lo + hi)
                    ym, _v = self.nn_at(mid)
                    if ym < y:
                        lo = mid
                    else:
                        hi = mid
                    if hi - lo < _BP_TOL:
                        break
                return 0.5 * (lo + hi)
        raise ValueError(f"target parameter {y} is not a near point")


def _edge_min(inst, p, curve, j):
    """(t_min in [0,1], value) of d(p, curve edge j)."""
    eng = get_engine(inst)
    prof = eng.segment_profile(p, curve.pts[j - 1], curve.pts[j])
    return prof.minimum()


def _nn_point(inst, source, target, x):
    """(global parameter on target, distance) of the nearest point."""
    p = source.eval(x)
    best = None
    for j in range(1, max(target.n, 2)):
        if target.n == 1:
            eng = get_engine(inst)
            v = eng.distance(p, tuple(target.pts[0]))
            cand = (1.0, v)
        else:
            t, v = _edge_min(inst, p, target, j)
            cand = (j + t, v)
        if best is None or cand[1] < best[1] - 1e-12 or \
                (abs(cand[1] - best[1]) <= 1e-12 and cand[0] < best[0]):
            best = cand
    return best


def _build_profile(inst, source: PolyCurve, target: PolyCurve,
                   samples_per_edge: int = 12) -> NNProfile:
    n = source.n
    if n == 1 or target.n == 1 or inst.degenerate:
        y0 = _nn_point(inst, source, target, 1.0)[0] if not inst.degenerate else 1.0
        y1 = (_nn_point(inst, source, target, float(n))[0]
              if not inst.degenerate else float(target.n))
        return NNProfile([], [(1.0, float(n), min(y0, y1), max(y0, y1))],
                         inst, source, target)
    xs = []
    for i in range(1, n):
        for k in range(samples_per_edge):
            xs.append(i + k / samples_per_edge)
    xs.append(float(n))
    ys = [_nn_point(inst, source, target, x)[0] for x in xs]

    cuts = []  # (x_before, x_after, y_before, y_after)
    k = 0
    stack = [(xs[i], xs[i + 1], ys[i], ys[i + 1]) for i in range(len(xs) - 1)][::-1]
    while stack:
        xa, xb, ya, yb = stack.pop()
        k += 1
        if k > 20000:
            break
        if abs(yb - ya) <= _JUMP:
            continue
        if xb - xa <= _BP_TOL:
            cuts.append((xa, xb, ya, yb))
            continue
        xm = 0.5 * (xa + xb)
        ym = _nn_point(inst, source, target, xm)[0]
        stack.append((xm, xb, ym, yb))
        stack.append((xa, xm, ya, ym))

    cuts.sort()
    breakpoints = []
    regimes = []
    prev_x = 1.0
    prev_y = ys[0]
    for (xa, xb, ya, yb) in cuts:
        x = 0.5 * (xa + xb)
        breakpoints.append((x, ya, yb))
        regimes.append((prev_x, x, min(prev_y, ya), max(prev_y, ya)))
        prev_x, prev_y = x, yb
    regimes.append((prev_x, float(n), min(prev_y, ys[-1]), max(prev_y, ys[-1])))
    return NNProfile(breakpoints, regimes, inst, source, target)


def nn_profile(inst: PolygonInstance) -> NNProfile:
    """Nearest-neighbor profile of R onto B."""
    key = "nn_profile_RB"
    if key not in inst._cache:
        inst._cache[key] = _build_profile(inst, inst.R, inst.B)
    return inst._cache[key]


def nn_profile_reverse(inst: PolygonInstance) -> NNProfile:
    """Nearest-neighbor profile of B onto R (used for the Hausdorff bound)."""
    key = "nn_profile_BR"
    if key not in inst._cache:
        inst._cache[key] = _build_profile(inst, inst.B, inst.R)
    return inst._cache[key]


def fan_leaf(inst: PolygonInstance, apex, seed_x: float, delta: float) -> Fan:
    """Maximal interval of R containing seed_x within distance δ of apex."""
    eng = get_engine(inst)
    R = inst.R
    n = R.n
    apex = (float(apex[0]), float(apex[1]))
    if eng.distance(tuple(R.eval(seed_x)), apex) > delta * (1 + 1e-9) + 1e-12:
        raise ValueError("seed point is farther than delta from the apex")
    if n == 1:
        return Fan(Point2(*apex), (1.0, 1.0))

    def edge_free(i):
        prof = eng.segment_profile(apex, R.pts[i - 1], R.pts[i])
        return prof.free_interval(delta)

    i0 = min(max(int(math.floor(seed_x)), 1), n - 1)
    iv = edge_free(i0)
    if iv is None:
        # seed sits on a vertex shared with the neighbor edge
        if seed_x <= i0 + 1e-9 and i0 > 1:
            i0 -= 1
            iv = edge_free(i0)
        if iv is None:
            raise ValueError("seed point is farther than delta from the apex")
    lo = i0 + iv[0]
    hi = i0 + iv[1]
    i = i0
    while iv[0] <= 1e-12 and i > 1:
        i -= 1
        iv2 = edge_free(i)
        if iv2 is None or iv2[1] < 1.0 - 1e-12:
            break
        iv = iv2
        lo = i + iv[0]
    i = i0
    iv = edge_free(i0)
    while iv[1] >= 1.0 - 1e-12 and i < n - 1:
        i += 1
        iv2 = edge_free(i)
        if iv2 is None or iv2[0] > 1e-12:
            break
        iv = iv2
        hi = i + iv[1]
    return Fan(Point2(*apex), (lo, hi))


def build_slabs(inst: PolygonInstance, profile: NNProfile, delta: float) -> list[Slab]:
    """Tile [1, m] into alternating maximal near/far slabs for R onto B."""
    m = inst.B.n
    near = sorted((y0, y1) for (_, _, y0, y1) in profile.regimes)
    merged = [list(near[0])] if near else [[1.0, 1.0]]
    for (a, b) in near[1:]:
        if a <= merged[-1][1] + 1e-9:
            merged[-1][1] = max(merged[-1][1], b)
        else:
            merged.append([a, b])
    # the shared endpoints are always near (distance 0 to the other curve)
    merged[0][0] = 1.0
    if merged[-1][1] < float(m) - 1e-9:
        merged.append([float(m), float(m)])
    else:
        merged[-1][1] = float(m)

    def fan_at(y):
        y = min(max(y, 1.0), float(m))
        apex = inst.B.eval(y)
        if y <= 1.0 + 1e-12:
            seed = 1.0
        elif y >= float(m) - 1e-12:
            seed = float(inst.R.n)
        else:
            seed = profile.x_for_target(y)
        try:
            fan = fan_leaf(inst, apex, seed, delta)
        except ValueError as exc:
            raise EmptyFanLeaf(str(exc)) from exc
        return fan.leaf

    slabs = []
    for (a, b) in merged:
        if slabs and a > slabs[-1].y_hi + 1e-12:
            prev_hi = slabs[-1].y_hi
            slabs.append(Slab("far", prev_hi, a, fan_at(prev_hi), fan_at(a)))
        slabs.append(Slab("near", a, max(a, b), fan_at(a), fan_at(b)))
    return slabs
