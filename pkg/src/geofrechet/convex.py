"""Exact Fréchet matching for curves bounding a convex polygon.

A candidate matching is built per antipodal tangent pair: two endpoint
fans around the shared endpoints plus a middle part that matches points
lying on a common line parallel to r*-b*. The minimum over all caliper
pairs is the exact Fréchet distance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .geometry import MatchingPath, ParamPoint, Point2, PolygonInstance
from .geodesic import get_engine

_TOL = 1e-9


@dataclass(frozen=True)
class TangentPair:
    r_star: Point2
    b_star: Point2
    direction: Point2  # unit direction of the parallel tangent lines


@dataclass
class ParallelMatching:
    fan1: tuple
    parallel: tuple  # (x1, x2, y1, y2)
    fan2: tuple
    cost: float
    d_star: float
    waypoints: list


def _seg_seg_closest(a0, a1, b0, b1):
    """Closest pair of points between segments a0-a1 and b0-b1."""
    def pt_on_seg(p, s0, s1):
        dx, dy = s1[0] - s0[0], s1[1] - s0[1]
        L2 = dx * dx + dy * dy
        t = 0.0 if L2 == 0 else min(max(((p[0] - s0[0]) * dx + (p[1] - s0[1]) * dy) / L2, 0.0), 1.0)
        return (s0[0] + t * dx, s0[1] + t * dy)

    cands = []
    for p in (a0, a1):
        q = pt_on_seg(p, b0, b1)
        cands.append((p, q))
    for q in (b0, b1):
        p = pt_on_seg(q, a0, a1)
        cands.append((p, q))
    # parallel overlap handled by the endpoint projections above
    best = min(cands, key=lambda pq: math.hypot(pq[0][0] - pq[1][0], pq[0][1] - pq[1][1]))
    return best


def _param_on(curve, pt, tol=1e-7):
    """Parameter of a point lying on the curve, or None."""
    for i in range(1, max(curve.n, 2)):
        if curve.n == 1:
            a = b = curve.pts[0]
        else:
            a, b = curve.pts[i - 1], curve.pts[i]
        dx, dy = b[0] - a[0], b[1] - a[1]
        L2 = dx * dx + dy * dy
        if L2 == 0:
            if math.hypot(pt[0] - a[0], pt[1] - a[1]) <= tol:
                return float(i)
            continue
        t = ((pt[0] - a[0]) * dx + (pt[1] - a[1]) * dy) / L2
        t = min(max(t, 0.0), 1.0)
        if math.hypot(pt[0] - a[0] - t * dx, pt[1] - a[1] - t * dy) <= tol:
            return i + t
    return None


def _check_convex(inst: PolygonInstance):
    if inst.degenerate:
        return
    if not get_engine(inst).convex:
        raise ValueError("instance is not convex")


def tangent_pairs(inst: PolygonInstance) -> list[TangentPair]:
    """Antipodal tangent pairs with one contact on R and the other on B."""
    _check_convex(inst)
    if inst.degenerate:
        return []
    bd = inst.boundary
    nb = len(bd)
    # candidate caliper angles: every edge normal plus midpoints between
    # consecutive normals (covers vertex-vertex antipodal events)
    angles = set()
    for k in range(nb):
        a, b = bd[k], bd[(k + 1) % nb]
        theta = math.atan2(b[1] - a[1], b[0] - a[0])
        angles.add((theta + 0.5 * math.pi) % math.pi)
        angles.add((theta - 0.5 * math.pi) % math.pi)
    ang = sorted(angles)
    mids = [(ang[k] + ang[(k + 1) % len(ang)] + (math.pi if k + 1 == len(ang) else 0)) * 0.5 % math.pi
            for k in range(len(ang))]
    directions = sorted(set(round(t, 12) for t in ang + mids))

    def contact(vals, target):
        """Indices of boundary vertices achieving target (vertex or edge)."""
        scale = max(1.0, float(np.max(np.abs(vals))))
        return [k for k in range(nb) if abs(vals[k] - target) <= 1e-9 * scale]

    def memberships(ks):
        """Split contact vertex set into geometry on R and on B."""
        pts = [tuple(bd[k]) for k in ks]
        on_r, on_b = [], []
        for p in pts:
            if _param_on(inst.R, p) is not None:
                on_r.append(p)
            if _param_on(inst.B, p) is not None:
                on_b.append(p)
        return on_r, on_b

    seen = set()
    out = []
    for theta in directions:
        nhat = (math.cos(theta), math.sin(theta))
        vals = bd @ np.array(nhat)
        hi = contact(vals, float(np.max(vals)))
        lo = contact(vals, float(np.min(vals)))
        hi_r, hi_b = memberships(hi)
        lo_r, lo_b = memberships(lo)
        for (rset, bset) in ((hi_r, lo_b), (lo_r, hi_b)):
            if not rset or not bset:
                continue
            ra = (rset[0], rset[-1])
            bb = (bset[0], bset[-1])
            rp, bp = _seg_seg_closest(ra[0], ra[1], bb[0], bb[1])
            key = (round(rp[0], 9), round(rp[1], 9), round(bp[0], 9), round(bp[1], 9))
            if key in seen:
                continue
            seen.add(key)
            tang = (-math.sin(theta), math.cos(theta))
            out.append(TangentPair(Point2(*rp), Point2(*bp), Point2(*tang)))

    def sort_key(pair):
        xr = _param_on(inst.R, pair.r_star)
        yb = _param_on(inst.B, pair.b_star)
        return (xr if xr is not None else 0.0, -(yb if yb is not None else 0.0))

    out.sort(key=sort_key)
    return out


def _psi_values(curve, u):
    return curve.pts @ np.array(u)


def _first_up_crossing(psi, c, start, tol):
    """Smallest parameter >= start where psi rises strictly above level c.

    Returns the crossing parameter, or None when psi stays <= c."""
    n = len(psi)
    if n == 1:
        return None
    x = start
    i0 = int(math.floor(start))
    for i in range(max(1, i0), n):
        t0 = max(start, float(i))
        v0 = psi[i - 1] + (psi[i] - psi[i - 1]) * (t0 - i)
        v1 = psi[i]
        if v0 > c + tol:
            return t0
        if v1 > c + tol:
            if abs(v1 - v0) < 1e-18:
                return t0
            t = t0 + (c - v0) / (v1 - v0) * (float(i + 1) - t0) if v0 < c else t0
            return min(max(t, t0), float(i + 1))
    return None


def _monotone_on(psi, a, b, tol):
    """psi non-decreasing along the curve parameters [a, b]."""
    lo = int(math.ceil(a - 1e-12))
    hi = int(math.floor(b + 1e-12))
    vals = []

    def at(x):
        if len(psi) == 1:
            return psi[0]
        i = min(int(math.floor(x)), len(psi) - 1)
        i = max(i, 1)
        return psi[i - 1] + (psi[i] - psi[i - 1]) * (x - i)

    vals.append(at(a))
    vals.extend(psi[i - 1] for i in range(lo, hi + 1) if a - 1e-12 < i < b + 1e-12)
    vals.append(at(b))
    return all(vals[k + 1] >= vals[k] - tol for k in range(len(vals) - 1))


def _max_dist_to_point(curve, a, b, p):
    """max_{x in [a,b]} |curve(x) - p|; per-edge convexity -> vertex maxima."""
    if b < a:
        return 0.0
    cands = [a, b] + [float(i) for i in range(int(math.ceil(a)), int(math.floor(b)) + 1)]
    return max(math.hypot(curve.eval(x)[0] - p[0], curve.eval(x)[1] - p[1]) for x in cands)


def _level_nodes(curve, psi, a, b, ca, cb):
    """Ordered (param, level) nodes of the monotone piece [a, b]."""
    nodes = [(a, ca)]
    for i in range(int(math.ceil(a - 1e-12)), int(math.floor(b + 1e-12)) + 1):
        if a + 1e-12 < i < b - 1e-12:
            nodes.append((float(i), float(psi[i - 1])))
    nodes.append((b, cb))
    # clamp tiny numeric dips so the merge below stays monotone
    out = [nodes[0]]
    for (x, c) in nodes[1:]:
        out.append((x, max(c, out[-1][1])))
    return out


def _merge_parallel(rn, bn):
    """Merge level-node lists into matched waypoints at every event level."""
    wps = [ParamPoint(rn[0][0], bn[0][0])]
    ir, ib = 0, 0

    def interp(nodes, k, c):
        (x0, c0), (x1, c1) = nodes[k], nodes[k + 1]
        if c1 - c0 < 1e-15:
            return x1
        t = (c - c0) / (c1 - c0)
        return x0 + (x1 - x0) * min(max(t, 0.0), 1.0)

    while ir < len(rn) - 1 or ib < len(bn) - 1:
        nr = rn[ir + 1][1] if ir < len(rn) - 1 else math.inf
        nb = bn[ib + 1][1] if ib < len(bn) - 1 else math.inf
        c = min(nr, nb)
        if nr <= nb + 1e-15 and ir < len(rn) - 1:
            ir += 1
        if nb <= nr + 1e-15 and ib < len(bn) - 1:
            ib += 1
        x = rn[ir][0] if rn[ir][1] >= c - 1e-15 else interp(rn, ir, c)
        y = bn[ib][0] if bn[ib][1] >= c - 1e-15 else interp(bn, ib, c)
        x = max(x, wps[-1].x)
        y = max(y, wps[-1].y)
        wps.append(ParamPoint(x, y))
    return wps


def parallel_matching_cost(inst: PolygonInstance, pair: TangentPair) -> Optional[ParallelMatching]:
    """Candidate matching for one tangent pair, or None when the level
    function is not monotone on the middle part (invalid split)."""
    _check_convex(inst)
    R, B = inst.R, inst.B
    n, m = R.n, B.n
    s1 = R.vertex(1)
    s2 = R.vertex(n)
    vx, vy = pair.r_star[0] - pair.b_star[0], pair.r_star[1] - pair.b_star[1]
    d_star = math.hypot(vx, vy)
    if d_star < 1e-15:
        u = (pair.direction[0], pair.direction[1])
    else:
        u = (-vy / d_star, vx / d_star)
    if u[0] * (s2[0] - s1[0]) + u[1] * (s2[1] - s1[1]) < 0:
        u = (-u[0], -u[1])
    psir = _psi_values(R, u)
    psib = _psi_values(B, u)
    c1 = u[0] * s1[0] + u[1] * s1[1]
    c2 = u[0] * s2[0] + u[1] * s2[1]
    scale = max(1.0, float(np.max(np.abs(psir))), float(np.max(np.abs(psib))))
    tol = _TOL * scale

    x1 = _first_up_crossing(psir, c1, 1.0, tol)
    y1 = _first_up_crossing(psib, c1, 1.0, tol)
    x1 = float(n) if x1 is None else x1
    y1 = float(m) if y1 is None else y1
    x2 = _first_up_crossing(psir, c2, x1, tol)
    y2 = _first_up_crossing(psib, c2, y1, tol)
    x2 = float(n) if x2 is None else x2
    y2 = float(m) if y2 is None else y2
    if not (_monotone_on(psir, x1, x2, tol) and _monotone_on(psib, y1, y2, tol)):
        return None

    fan1_cost = max(_max_dist_to_point(B, 1.0, y1, s1),
                    _max_dist_to_point(R, 1.0, x1, s1))
    fan2_cost = max(_max_dist_to_point(B, y2, float(m), s2),
                    _max_dist_to_point(R, x2, float(n), s2))

    rn = _level_nodes(R, psir, x1, x2, c1, c2)
    bn = _level_nodes(B, psib, y1, y2, c1, c2)
    mid = _merge_parallel(rn, bn)
    par_cost = max(math.hypot(R.eval(w.x)[0] - B.eval(w.y)[0],
                              R.eval(w.x)[1] - B.eval(w.y)[1]) for w in mid)

    wps = [ParamPoint(1.0, 1.0)]
    if y1 > 1.0:
        wps.append(ParamPoint(1.0, y1))
    if x1 > 1.0:
        wps.append(ParamPoint(x1, y1))
    for w in mid:
        if w.x > wps[-1].x + 1e-15 or w.y > wps[-1].y + 1e-15:
            wps.append(w)
    if wps[-1] != ParamPoint(x2, y2):
        wps.append(ParamPoint(max(x2, wps[-1].x), max(y2, wps[-1].y)))
    if wps[-1].y < float(m):
        wps.append(ParamPoint(wps[-1].x, float(m)))
    if wps[-1].x < float(n):
        wps.append(ParamPoint(float(n), float(m)))

    cost = max(fan1_cost, par_cost, fan2_cost)
    return ParallelMatching(fan1=(s1, (1.0, x1), (1.0, y1)),
                            parallel=(x1, x2, y1, y2),
                            fan2=(s2, (x2, float(n)), (y2, float(m))),
                            cost=cost, d_star=d_star, waypoints=wps)


def convex_frechet(inst: PolygonInstance) -> MatchingPath:
    """Exact Fréchet matching between R and B bounding a convex polygon."""
    _check_convex(inst)
    n, m = inst.R.n, inst.B.n
    if inst.degenerate:
        wps = [ParamPoint(1.0, 1.0), ParamPoint(float(n), float(m))]
        return MatchingPath(wps, 0.0)
    best = None
    for pair in tangent_pairs(inst):
        pm = parallel_matching_cost(inst, pair)
        if pm is None:
            continue
        if best is None or pm.cost < best.cost:
            best = pm
    if best is None:
        raise RuntimeError("no valid tangent pair produced a matching")
    return MatchingPath(best.waypoints, best.cost)
