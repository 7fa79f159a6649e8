"""Crossing a far slab through anchored separators.

Inside a far slab every matched pair is joined by a geodesic crossing the
separator between the slab's bounding B-vertices. Distances are snapped to
sums through evenly spaced anchor points on the separator, which turns the
2D decision into a chain of 1D separated-curve propagations between gate
sets. Snapped sums always dominate true geodesic distances, so a YES
answer certifies a valid matching at the inflated threshold.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import ParamPoint, Point2, PolyCurve, PolygonInstance
from .geodesic import GeodesicPath, get_engine, ray_shoot
from .oned import Curve1D, GridPoint, propagate_reachability
from .nearslab import TransitPoint, transit_exits_on_interval
from .nnprofile import Slab

_NUDGE = 1e-9
_EPS_CLAMP = 1e-12


@dataclass
class AnchorSet:
    separator: GeodesicPath
    anchors: list  # K+1 points, endpoints included
    K: int


@dataclass
class GateSet:
    anchor: Point2
    points: list  # ParamPoint pairs (x on R-hat, y on B-hat)


def _polyline_eval(waypoints, prefix, s):
    """Point at arc length s along the waypoint polyline."""
    s = min(max(s, 0.0), prefix[-1])
    for k in range(1, len(prefix)):
        if s <= prefix[k] + 1e-15:
            seg = prefix[k] - prefix[k - 1]
            t = 0.0 if seg <= 1e-15 else (s - prefix[k - 1]) / seg
            a, b = waypoints[k - 1], waypoints[k]
            return (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)
    return tuple(waypoints[-1])


def build_separator_anchors(inst: PolygonInstance, b1, b2, delta: float,
                            eps: float):
    """Evenly spaced anchors on the geodesic b1-b2, spacing at most
    eps*delta. Returns None when the separator is longer than 2*delta,
    in which case no delta-matching can cross the slab."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    eng = get_engine(inst)
    sep = eng.shortest_path(tuple(b1), tuple(b2))
    L = sep.length
    if L > 2.0 * delta * (1 + 1e-9) + 1e-12:
        return None
    w = sep.waypoints
    prefix = [0.0]
    for k in range(1, len(w)):
        prefix.append(prefix[-1] + math.hypot(w[k][0] - w[k - 1][0],
                                              w[k][1] - w[k - 1][1]))
    K = 1 if delta <= 0 or L <= 0 else max(1, int(math.ceil(L / (eps * delta))))
    anchors = []
    for k in range(K + 1):
        s = L * k / K
        p = _polyline_eval(w, prefix, s)
        if 0 < k < K:
            # keep interior anchors off polygon vertices
            for v in w:
                if math.hypot(p[0] - v[0], p[1] - v[1]) <= 1e-12:
                    p = _polyline_eval(w, prefix, s + _NUDGE * L)
                    break
        anchors.append(Point2(float(p[0]), float(p[1])))
    return AnchorSet(sep, anchors, K)


def _param_on_curve(curve: PolyCurve, p, tol: float = 1e-7):
    """Curve parameter of point p, or None if p is not on the curve."""
    best = None
    for i in range(1, max(curve.n, 2)):
        a = curve.pts[min(i, curve.n) - 1]
        b = curve.pts[min(i + 1, curve.n) - 1]
        dx, dy = b[0] - a[0], b[1] - a[1]
        L2 = dx * dx + dy * dy
        if L2 <= 1e-30:
            t = 0.0
        else:
            t = min(max(((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / L2, 0.0), 1.0)
        d = math.hypot(p[0] - a[0] - t * dx, p[1] - a[1] - t * dy)
        if d <= tol and (best is None or d < best[1]):
            best = (min(i + t, float(curve.n)), d)
    return None if best is None else best[0]


def _extend_through(inst, eng, p, anchor, target: PolyCurve):
    """Parameter where the geodesic p -> anchor, extended straight past the
    anchor, first meets the target curve; None when it misses."""
    path = eng.shortest_path(tuple(p), tuple(anchor))
    w = path.waypoints
    if len(w) < 2:
        return None
    prev = w[-2]
    d = (anchor[0] - prev[0], anchor[1] - prev[1])
    if math.hypot(d[0], d[1]) <= 1e-15:
        return None
    try:
        hit = ray_shoot(inst, tuple(anchor), d)
    except ValueError:
        return None
    return _param_on_curve(target, hit)


def _gate_candidates(inst, eng, curve: PolyCurve, anchor):
    """Curve points whose geodesic to the anchor is locally extremal:
    the vertices plus each edge's closest point."""
    out = [float(i) for i in range(1, curve.n + 1)]
    for i in range(1, curve.n):
        prof = eng.segment_profile(tuple(anchor), curve.pts[i - 1], curve.pts[i])
        t, _v = prof.minimum()
        if 1e-9 < t < 1 - 1e-9:
            out.append(i + t)
    return out


def build_gate_sets(inst: PolygonInstance, Rhat: PolyCurve, Bhat: PolyCurve,
                    anchorset: AnchorSet) -> list[GateSet]:
    """Gate pairs for the interior anchors: each candidate point on one
    curve is paired with the ray extension of its geodesic through the
    anchor onto the other curve."""
    eng = get_engine(inst)
    out = []
    for a in anchorset.anchors[1:-1]:
        pts = []
        seen = set()

        def add(x, y):
            key = (round(x, 9), round(y, 9))
            if key not in seen:
                seen.add(key)
                pts.append(ParamPoint(float(x), float(y)))

        rc = _gate_candidates(inst, eng, Rhat, a)
        bc = _gate_candidates(inst, eng, Bhat, a)
        for x in rc:
            p = Rhat.eval(x)
            if eng.distance(tuple(p), tuple(a)) <= 1e-9:
                # the anchor sits on R itself: the crossing column is free,
                # pair it with every candidate row
                for y in bc:
                    add(x, y)
                continue
            y = _extend_through(inst, eng, p, a, Bhat)
            if y is not None:
                add(x, y)
        for y in bc:
            q = Bhat.eval(y)
            if eng.distance(tuple(q), tuple(a)) <= 1e-9:
                for x in rc:
                    add(x, y)
                continue
            x = _extend_through(inst, eng, q, a, Rhat)
            if x is not None:
                add(x, y)
        out.append(GateSet(a, pts))
    return out


def _snap_params(inst, curve: PolyCurve, anchor):
    """Parameters at which the snapped distance is sampled: vertices,
    profile piece boundaries, per-piece minima and piece midpoints."""
    if curve.n == 1:
        return [1.0]
    eng = get_engine(inst)
    ps = []
    for i in range(1, curve.n):
        prof = eng.segment_profile(tuple(anchor), curve.pts[i - 1], curve.pts[i])
        ps.append(float(i))
        for (t0, t1, apex, _D) in prof.pieces:
            dx = curve.pts[i][0] - curve.pts[i - 1][0]
            dy = curve.pts[i][1] - curve.pts[i - 1][1]
            L2 = dx * dx + dy * dy
            if L2 > 1e-30:
                tm = ((apex[0] - curve.pts[i - 1][0]) * dx +
                      (apex[1] - curve.pts[i - 1][1]) * dy) / L2
                tm = min(max(tm, t0), t1)
            else:
                tm = t0
            for t in (t0, 0.5 * (t0 + tm), tm, 0.5 * (tm + t1), t1):
                ps.append(i + t)
    ps.append(float(curve.n))
    ps.sort()
    out = [ps[0]]
    for x in ps[1:]:
        if x > out[-1] + 1e-9:
            out.append(x)
    return out


def _snap_value(inst, curve: PolyCurve, anchor, x: float) -> float:
    eng = get_engine(inst)
    if curve.n == 1:
        return eng.distance(tuple(curve.pts[0]), tuple(anchor))
    i = min(max(int(math.floor(x)), 1), curve.n - 1)
    prof = eng.segment_profile(tuple(anchor), curve.pts[i - 1], curve.pts[i])
    return prof.eval(x - i)


def _snapped_with_params(inst, Rhat: PolyCurve, Bhat: PolyCurve, anchor,
                         extra_x=(), extra_y=()):
    xs = sorted(set(_snap_params(inst, Rhat, anchor)) | {float(x) for x in extra_x})
    ys = sorted(set(_snap_params(inst, Bhat, anchor)) | {float(y) for y in extra_y})
    rv = [-max(_snap_value(inst, Rhat, anchor, x), _EPS_CLAMP) for x in xs]
    bv = [max(_snap_value(inst, Bhat, anchor, y), _EPS_CLAMP) for y in ys]
    return Curve1D(rv, "left"), Curve1D(bv, "right"), xs, ys


def snapped_curves(inst: PolygonInstance, Rhat: PolyCurve, Bhat: PolyCurve,
                   anchor):
    """Separated 1D curves of the snapped distances through the anchor:
    R maps to -d(R(x), a), B to +d(a, B(y))."""
    r, b, _xs, _ys = _snapped_with_params(inst, Rhat, Bhat, anchor)
    return r, b


def _nearest_index(vals, x):
    import bisect
    k = bisect.bisect_left(vals, x)
    best = None
    for c in (k - 1, k, k + 1):
        if 0 <= c < len(vals):
            d = abs(vals[c] - x)
            if best is None or d < best[1]:
                best = (c, d)
    return best[0]


def _propagate_space(inst, Rhat, Bhat, anchor, sources, targets, thr):
    """Points of `targets` reachable from `sources` inside the snapped
    free space of the anchor at threshold thr."""
    r, b, xs, ys = _snapped_with_params(
        inst, Rhat, Bhat, anchor,
        extra_x=[p[0] for p in sources] + [p[0] for p in targets],
        extra_y=[p[1] for p in sources] + [p[1] for p in targets])
    dl = thr * (1 + 1e-9) + 1e-12

    def grid(p):
        return GridPoint(_nearest_index(xs, p[0]) + 1, _nearest_index(ys, p[1]) + 1)

    S = []
    for p in sources:
        g = grid(p)
        if r.a(g.i) + b.a(g.j) <= dl:
            S.append(g)
    E = []
    for p in targets:
        g = grid(p)
        if r.a(g.i) + b.a(g.j) <= dl:
            E.append(g)
    if not S or not E:
        return []
    reach = propagate_reachability(r, b, dl, S, E)
    return [ParamPoint(xs[g.i - 1], ys[g.j - 1]) for g in reach]


def far_decide(inst: PolygonInstance, Rhat: PolyCurve, Bhat: PolyCurve,
               delta: float, eps: float) -> bool:
    """Can a bimonotone matching of Rhat to Bhat stay within (1+eps)*delta,
    assuming every matched geodesic crosses the Bhat-endpoint separator?

    YES answers are sound at (1+eps)*delta; NO answers are reliable for
    true cost above delta.
    """
    anch = build_separator_anchors(inst, Bhat.pts[0], Bhat.pts[-1], delta, eps)
    if anch is None:
        return False
    thr = (1 + eps) * delta
    K = anch.K
    mids = [Point2(0.5 * (anch.anchors[k][0] + anch.anchors[k + 1][0]),
                   0.5 * (anch.anchors[k][1] + anch.anchors[k + 1][1]))
            for k in range(K)]
    gates = build_gate_sets(inst, Rhat, Bhat, anch)
    seq = ([[ParamPoint(1.0, 1.0)]] + [g.points for g in gates] +
           [[ParamPoint(float(Rhat.n), float(Bhat.n))]])
    cur = seq[0]
    for k in range(K):
        cur = _propagate_space(inst, Rhat, Bhat, mids[k], cur, seq[k + 1], thr)
        if not cur:
            return False
    return True


def far_find_exit(inst: PolygonInstance, slab: Slab, entrance: TransitPoint,
                  delta: float, eps: float):
    """Leftmost transit exit of a far slab reachable from the entrance at
    threshold (1+eps)*delta, found by exponential then binary search over
    the candidate exits; None when the slab cannot be crossed."""
    if slab.kind != "far":
        raise ValueError("far_find_exit requires a far slab")
    x0 = entrance.point.x
    cands = [tp for tp in transit_exits_on_interval(inst, slab.y_hi, slab.exit)
             if tp.point.x >= x0 - 1e-12]
    if not cands:
        return None
    Bhat = inst.B.subcurve(slab.y_lo, slab.y_hi)
    memo = {}

    def ok(k):
        if k not in memo:
            x1 = max(cands[k].point.x, x0)
            Rhat = inst.R.subcurve(x0, x1)
            memo[k] = far_decide(inst, Rhat, Bhat, delta, eps)
        return memo[k]

    last = len(cands) - 1
    if ok(0):
        return cands[0]
    step = 1
    lo = 0  # largest known failing index
    hi = None
    while step <= last:
        if ok(step):
            hi = step
            break
        lo = step
        step *= 2
    if hi is None:
        if lo >= last or not ok(last):
            return None
        hi = last
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return cands[hi]
