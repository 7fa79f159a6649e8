"""Geodesic shortest paths, distances, unimodal point-to-edge distance
profiles, and ray shooting inside a triangulated simple polygon.

Queries run a triangulation-sleeve + funnel walk; sleeves, distances and
profiles are cached on the instance. Numeric slack contract: bisection
tolerances 1e-10 in parameter and 1e-9 in distance; callers comparing
against a threshold delta should allow delta * (1 + 1e-9).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import PolygonInstance, PolyCurve, Point2, orient

PAR_TOL = 1e-10
DIST_TOL = 1e-9
SLACK = 1e-9


@dataclass
class GeodesicPath:
    waypoints: list[Point2]
    length: float


def _is_between(a, b, c, tol=1e-9) -> bool:
    """b on segment a-c (collinearity assumed by the caller)."""
    dax, day = b[0] - a[0], b[1] - a[1]
    dcx, dcy = c[0] - b[0], c[1] - b[1]
    return dax * dcx + day * dcy >= -tol


def _triarea2(a, b, c) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _funnel(portals, start, goal):
    """Simple stupid funnel over (right, left) portal pairs."""
    pts = [tuple(start)]
    portals = [(tuple(start), tuple(start))] + portals + [(tuple(goal), tuple(goal))]
    apex = pleft = pright = tuple(start)
    left_i = right_i = apex_i = 0
    i = 0
    while i < len(portals):
        right, left = portals[i]
        if _triarea2(apex, pright, right) >= 0.0:
            if apex == pright or _triarea2(apex, pleft, right) < 0.0 or \
                    (_triarea2(apex, pleft, right) == 0.0 and _is_between(pleft, right, apex)):
                pright = right
                right_i = i
            else:
                if pts[-1] != pleft:
                    pts.append(pleft)
                apex = pleft
                apex_i = left_i
                pleft = pright = apex
                left_i = right_i = apex_i
                i = apex_i + 1
                continue
        if _triarea2(apex, pleft, left) <= 0.0:
            if apex == pleft or _triarea2(apex, pright, left) > 0.0 or \
                    (_triarea2(apex, pright, left) == 0.0 and _is_between(pright, left, apex)):
                pleft = left
                left_i = i
            else:
                if pts[-1] != pright:
                    pts.append(pright)
                apex = pright
                apex_i = right_i
                pleft = pright = apex
                left_i = right_i = apex_i
                i = apex_i + 1
                continue
        i += 1
    if pts[-1] != tuple(goal):
        pts.append(tuple(goal))
    return pts


class SegmentProfile:
    """Geodesic distance from a fixed source to points of a segment a-b.

    Piecewise representation: on piece k, for t in [t0, t1],
    d(t) = D_k + |apex_k - s(t)| with s(t) = (1-t) a + t b. The profile is
    unimodal: it decreases to a single minimum and increases after it.
    """

    def __init__(self, pieces, a, b):
        self.pieces = pieces  # list of (t0, t1, (ax, ay), D)
        self.a = (float(a[0]), float(a[1]))
        self.b = (float(b[0]), float(b[1]))
        self._min = None

    def _s(self, t):
        return (self.a[0] + (self.b[0] - self.a[0]) * t,
                self.a[1] + (self.b[1] - self.a[1]) * t)

    def eval(self, t: float) -> float:
        t = min(max(t, 0.0), 1.0)
        for (t0, t1, apex, D) in self.pieces:
            if t <= t1 + PAR_TOL:
                s = self._s(t)
                return D + math.hypot(s[0] - apex[0], s[1] - apex[1])
        t0, t1, apex, D = self.pieces[-1]
        s = self._s(t)
        return D + math.hypot(s[0] - apex[0], s[1] - apex[1])

    def minimum(self):
        """(t_min, value) of the global minimum."""
        if self._min is not None:
            return self._min
        best = (0.0, self.eval(0.0))
        for (t0, t1, apex, D) in self.pieces:
            dx, dy = self.b[0] - self.a[0], self.b[1] - self.a[1]
            L2 = dx * dx + dy * dy
            if L2 > 0:
                tp = ((apex[0] - self.a[0]) * dx + (apex[1] - self.a[1]) * dy) / L2
                tp = min(max(tp, t0), t1)
            else:
                tp = t0
            for t in (t0, t1, tp):
                s = self._s(t)
                v = D + math.hypot(s[0] - apex[0], s[1] - apex[1])
                if v < best[1]:
                    best = (t, v)
        self._min = best
        return best

    def free_interval(self, delta: float):
        """{t : d(t) <= delta} as one interval (unimodality), or None.
        Comparisons use the engine slack delta * (1 + SLACK)."""
        dl = delta * (1.0 + SLACK) + 1e-15
        tmin, vmin = self.minimum()
        if vmin > dl:
            return None
        lo, hi = None, None
        for (t0, t1, apex, D) in self.pieces:
            rem = dl - D
            if rem < 0:
                continue
            dx, dy = self.b[0] - self.a[0], self.b[1] - self.a[1]
            vx, vy = self.a[0] - apex[0], self.a[1] - apex[1]
            A = dx * dx + dy * dy
            if A < 1e-18:
                if math.hypot(vx, vy) <= rem:
                    lo = t0 if lo is None else min(lo, t0)
                    hi = t1 if hi is None else max(hi, t1)
                continue
            Bc = vx * dx + vy * dy
            C = vx * vx + vy * vy - rem * rem
            disc = Bc * Bc - A * C
            if disc < 0:
                continue
            s = math.sqrt(disc)
            r0 = max((-Bc - s) / A, t0)
            r1 = min((-Bc + s) / A, t1)
            if r0 > r1:
                continue
            lo = r0 if lo is None else min(lo, r0)
            hi = r1 if hi is None else max(hi, r1)
        if lo is None:
            return None
        return (max(lo, 0.0), min(hi, 1.0))

    def threshold_crossings(self, delta: float):
        """Parameters strictly inside (0,1) where d = delta, at most 2."""
        iv = self.free_interval(delta)
        if iv is None:
            return []
        out = []
        if iv[0] > PAR_TOL:
            out.append(iv[0])
        if iv[1] < 1.0 - PAR_TOL:
            out.append(iv[1])
        return out


@dataclass
class EdgeDistanceProfile:
    """Distance profile from a source to one curve edge, unimodal.

    min_param lives in the curve parameterization [i, i+1]."""
    source: Point2
    edge: tuple
    min_param: float
    min_value: float
    profile: SegmentProfile

    def eval_at(self, x: float) -> float:
        i = self.edge[1]
        return self.profile.eval(x - i)


class GeodesicEngine:
    def __init__(self, inst: PolygonInstance):
        self.inst = inst
        self.boundary = inst.boundary
        self.triangles = inst.triangles
        self.adjacency = inst.adjacency
        self.degenerate = inst.degenerate
        self._dist_cache: dict = {}
        self._path_cache: dict = {}
        self._sleeve_cache: dict = {}
        self._profile_cache: dict = {}
        self._bsegs = [(tuple(self.boundary[k]), tuple(self.boundary[(k + 1) % len(self.boundary)]))
                       for k in range(len(self.boundary))] if len(self.boundary) >= 3 else []
        self._centroids = [tuple(np.mean(self.boundary[list(t)], axis=0)) for t in self.triangles]
        # convexity: all boundary turns non-right (CCW cycle)
        self.convex = True
        nb = len(self.boundary)
        for k in range(nb):
            if orient(self.boundary[k - 1], self.boundary[k], self.boundary[(k + 1) % nb]) < -1e-12:
                self.convex = False
                break

    # -- point location ----------------------------------------------------
    def contains(self, p, tol: float = 1e-9) -> bool:
        if self.degenerate:
            return self._on_degenerate(p, tol)
        if self._on_boundary(p, tol):
            return True
        inside = False
        x, y = p[0], p[1]
        bd = self.boundary
        nb = len(bd)
        for k in range(nb):
            x0, y0 = bd[k]
            x1, y1 = bd[(k + 1) % nb]
            if (y0 > y) != (y1 > y):
                xint = (x1 - x0) * (y - y0) / (y1 - y0) + x0
                if x < xint:
                    inside = not inside
        return inside

    def _on_degenerate(self, p, tol):
        a = self.inst.R.pts[0]
        b = self.inst.R.pts[-1]
        d = b - a
        L = math.hypot(d[0], d[1])
        if L == 0:
            return math.hypot(p[0] - a[0], p[1] - a[1]) <= tol
        t = ((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / (L * L)
        off = abs((p[0] - a[0]) * (-d[1]) + (p[1] - a[1]) * d[0]) / L
        return -tol <= t <= 1 + tol and off <= tol

    def _on_boundary(self, p, tol: float = 1e-9) -> bool:
        for (a, b) in self._bsegs:
            if _point_seg_dist(p, a, b) <= tol:
                return True
        return False

    def _tri_contains(self, t_i, p, tol: float = 1e-9) -> bool:
        a, b, c = (self.boundary[k] for k in self.triangles[t_i])
        return (orient(a, b, p) >= -tol and orient(b, c, p) >= -tol and
                orient(c, a, p) >= -tol)

    def _find_tris(self, p) -> list[int]:
        out = [t_i for t_i in range(len(self.triangles)) if self._tri_contains(t_i, p)]
        if not out:
            # fall back with looser tolerance
            out = [t_i for t_i in range(len(self.triangles)) if self._tri_contains(t_i, p, 1e-6)]
        if not out:
            raise ValueError(f"point {tuple(p)} outside polygon")
        return out

    # -- visibility --------------------------------------------------------
    def _visible(self, p, q) -> bool:
        """Conservative: True only when segment pq certainly stays in P."""
        if self.degenerate:
            return True
        if self.convex:
            return True
        for (a, b) in self._bsegs:
            o1 = orient(p, q, a)
            o2 = orient(p, q, b)
            o3 = orient(a, b, p)
            o4 = orient(a, b, q)
            if o1 * o2 < 0 and o3 * o4 < 0:
                return False
            # boundary vertex strictly inside pq: be conservative
            if o1 == 0 and _strictly_inside(p, a, q):
                return False
        mx = (0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1]))
        return self.contains(mx)

    # -- shortest paths ----------------------------------------------------
    def shortest_path(self, p, q) -> GeodesicPath:
        p = (float(p[0]), float(p[1]))
        q = (float(q[0]), float(q[1]))
        key = (round(p[0], 12), round(p[1], 12), round(q[0], 12), round(q[1], 12))
        if key in self._path_cache:
            return self._path_cache[key]
        out = self._shortest_path_impl(p, q)
        self._path_cache[key] = out
        return out

    def _shortest_path_impl(self, p, q) -> GeodesicPath:
        if not self.contains(p) or not self.contains(q):
            raise ValueError("point outside polygon")
        if p == q:
            return GeodesicPath([Point2(*p)], 0.0)
        if self._visible(p, q):
            return GeodesicPath([Point2(*p), Point2(*q)],
                                math.hypot(q[0] - p[0], q[1] - p[1]))
        tp = self._find_tris(p)
        tq = self._find_tris(q)
        if set(tp) & set(tq):
            return GeodesicPath([Point2(*p), Point2(*q)],
                                math.hypot(q[0] - p[0], q[1] - p[1]))
        portals = self._portals(tp, tq)
        pts = _funnel(portals, p, q)
        pts = _dedup(pts)
        length = sum(math.hypot(pts[k + 1][0] - pts[k][0], pts[k + 1][1] - pts[k][1])
                     for k in range(len(pts) - 1))
        return GeodesicPath([Point2(*w) for w in pts], length)

    def _portals(self, tp, tq):
        key = (tuple(tp), tuple(tq))
        if key in self._sleeve_cache:
            return self._sleeve_cache[key]
        # BFS in the dual tree
        from collections import deque
        prev = {t: None for t in tp}
        dq = deque(tp)
        hit = None
        tq_set = set(tq)
        while dq:
            cur = dq.popleft()
            if cur in tq_set:
                hit = cur
                break
            for edge, nxt in self.adjacency[cur].items():
                if nxt not in prev:
                    prev[nxt] = (cur, edge)
                    dq.append(nxt)
        if hit is None:
            raise RuntimeError("dual graph disconnected")
        chain = []
        cur = hit
        while prev[cur] is not None:
            par, edge = prev[cur]
            chain.append((par, edge, cur))
            cur = par
        chain.reverse()
        portals = []
        for (t1, edge, t2) in chain:
            u, v = self.boundary[edge[0]], self.boundary[edge[1]]
            c1 = self._centroids[t1]
            c2 = self._centroids[t2]
            d = (c2[0] - c1[0], c2[1] - c1[1])
            cu = d[0] * (u[1] - c1[1]) - d[1] * (u[0] - c1[0])
            cv = d[0] * (v[1] - c1[1]) - d[1] * (v[0] - c1[0])
            left, right = (u, v) if cu > cv else (v, u)
            portals.append((tuple(right), tuple(left)))
        self._sleeve_cache[key] = portals
        return portals

    def distance(self, p, q) -> float:
        key = (round(p[0], 12), round(p[1], 12), round(q[0], 12), round(q[1], 12))
        if key in self._dist_cache:
            return self._dist_cache[key]
        d = self.shortest_path(p, q).length
        self._dist_cache[key] = d
        self._dist_cache[(key[2], key[3], key[0], key[1])] = d
        return d

    # -- profiles ----------------------------------------------------------
    def _apex(self, src, pt):
        """(apex point, geodesic distance source->apex) for target pt."""
        path = self.shortest_path(src, pt)
        w = path.waypoints
        if len(w) <= 2:
            return (w[0][0], w[0][1]), 0.0
        ap = w[-2]
        return (ap[0], ap[1]), path.length - math.hypot(pt[0] - ap[0], pt[1] - ap[1])

    def segment_profile(self, src, a, b) -> SegmentProfile:
        """Exact profile from the two endpoint funnels: the apex sequence
        along a-b walks one funnel chain up to the split vertex and the
        other chain down, with piece boundaries where consecutive apexes
        line up with the segment."""
        key = (round(float(src[0]), 12), round(float(src[1]), 12),
               round(float(a[0]), 12), round(float(a[1]), 12),
               round(float(b[0]), 12), round(float(b[1]), 12))
        if key in self._profile_cache:
            return self._profile_cache[key]
        src = (float(src[0]), float(src[1]))
        a = (float(a[0]), float(a[1]))
        b = (float(b[0]), float(b[1]))
        if self.degenerate or self.convex:
            prof = SegmentProfile([(0.0, 1.0, src, 0.0)], a, b)
            self._profile_cache[key] = prof
            return prof
        if math.hypot(b[0] - a[0], b[1] - a[1]) < 1e-15:
            ap, D = self._apex(src, a)
            prof = SegmentProfile([(0.0, 1.0, ap, D)], a, b)
            self._profile_cache[key] = prof
            return prof

        pa = [tuple(w) for w in self.shortest_path(src, a).waypoints]
        pb = [tuple(w) for w in self.shortest_path(src, b).waypoints]
        prefa = [0.0]
        for k in range(1, len(pa)):
            prefa.append(prefa[-1] + math.hypot(pa[k][0] - pa[k - 1][0],
                                                pa[k][1] - pa[k - 1][1]))
        prefb = [0.0]
        for k in range(1, len(pb)):
            prefb.append(prefb[-1] + math.hypot(pb[k][0] - pb[k - 1][0],
                                                pb[k][1] - pb[k - 1][1]))
        c = 0
        while c < len(pa) and c < len(pb) and \
                abs(pa[c][0] - pb[c][0]) <= 1e-12 and abs(pa[c][1] - pb[c][1]) <= 1e-12:
            c += 1

        chain = []  # (apex, source distance), ordered from the a end
        if c == len(pa):
            # a lies on the path to b; its predecessor may still see past it
            if c >= 2:
                chain.append((pa[c - 2], prefa[c - 2]))
            chain.append((pa[c - 1], prefa[c - 1]))
        else:
            for k in range(len(pa) - 2, c - 2, -1):
                chain.append((pa[k], prefa[k]))
        if c == len(pb):
            if c >= 2:
                chain.append((pb[c - 2], prefb[c - 2]))
        else:
            for k in range(c, len(pb) - 1):
                chain.append((pb[k], prefb[k]))

        pieces = []
        ex, ey = b[0] - a[0], b[1] - a[1]
        t_prev = 0.0
        for k in range(len(chain) - 1):
            (u, Du), (w, _) = chain[k], chain[k + 1]
            ux, uy = u[0] - w[0], u[1] - w[1]
            den = ex * uy - ey * ux
            if abs(den) < 1e-15:
                t_cut = t_prev
            else:
                t_cut = ((w[0] - a[0]) * uy - (w[1] - a[1]) * ux) / den
                t_cut = min(1.0, max(t_prev, t_cut))
            if t_cut > t_prev:
                pieces.append((t_prev, t_cut, u, Du))
                t_prev = t_cut
        pieces.append((t_prev, 1.0, chain[-1][0], chain[-1][1]))
        merged = [list(pieces[0])]
        for pc in pieces[1:]:
            if math.hypot(pc[2][0] - merged[-1][2][0], pc[2][1] - merged[-1][2][1]) < 1e-12:
                merged[-1][1] = pc[1]
            else:
                merged.append(list(pc))
        prof = SegmentProfile([tuple(pc) for pc in merged], a, b)
        self._profile_cache[key] = prof
        return prof

    def segment_profile_bisect(self, src, a, b) -> SegmentProfile:
        """Independent profile builder: recursive apex-identity bisection.
        Slower; kept as a cross-check route for the funnel construction."""
        key = ("bis", round(float(src[0]), 12), round(float(src[1]), 12),
               round(float(a[0]), 12), round(float(a[1]), 12),
               round(float(b[0]), 12), round(float(b[1]), 12))
        if key in self._profile_cache:
            return self._profile_cache[key]
        src = (float(src[0]), float(src[1]))
        a = (float(a[0]), float(a[1]))
        b = (float(b[0]), float(b[1]))
        if self.degenerate or self.convex:
            prof = SegmentProfile([(0.0, 1.0, src, 0.0)], a, b)
            self._profile_cache[key] = prof
            return prof

        def s(t):
            return (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)

        def same(ap1, ap2):
            return math.hypot(ap1[0] - ap2[0], ap1[1] - ap2[1]) < 1e-9

        pieces = []

        def rec(t0, ap0, D0, t1, ap1, D1, depth):
            if same(ap0, ap1):
                tm = 0.5 * (t0 + t1)
                apm, Dm = self._apex(src, s(tm))
                if same(apm, ap0) or t1 - t0 < PAR_TOL:
                    pieces.append((t0, t1, ap0, D0))
                    return
                rec(t0, ap0, D0, tm, apm, Dm, depth + 1)
                rec(tm, apm, Dm, t1, ap1, D1, depth + 1)
                return
            if t1 - t0 < PAR_TOL or depth > 60:
                pieces.append((t0, 0.5 * (t0 + t1), ap0, D0))
                pieces.append((0.5 * (t0 + t1), t1, ap1, D1))
                return
            tm = 0.5 * (t0 + t1)
            apm, Dm = self._apex(src, s(tm))
            rec(t0, ap0, D0, tm, apm, Dm, depth + 1)
            rec(tm, apm, Dm, t1, ap1, D1, depth + 1)

        ap0, D0 = self._apex(src, a)
        ap1, D1 = self._apex(src, b)
        rec(0.0, ap0, D0, 1.0, ap1, D1, 0)
        # merge adjacent pieces with identical apex
        merged = [list(pieces[0])]
        for pc in pieces[1:]:
            if same(pc[2], merged[-1][2]) and abs(pc[3] - merged[-1][3]) < 1e-9:
                merged[-1][1] = pc[1]
            else:
                merged.append(list(pc))
        prof = SegmentProfile([tuple(pc) for pc in merged], a, b)
        self._profile_cache[key] = prof
        return prof


def _dedup(pts):
    out = [pts[0]]
    for p in pts[1:]:
        if math.hypot(p[0] - out[-1][0], p[1] - out[-1][1]) > 1e-12:
            out.append(p)
    return out


def _strictly_inside(p, x, q, tol=1e-12) -> bool:
    """x strictly inside segment p-q (collinear assumed)."""
    d1 = (x[0] - p[0]) * (q[0] - p[0]) + (x[1] - p[1]) * (q[1] - p[1])
    L2 = (q[0] - p[0]) ** 2 + (q[1] - p[1]) ** 2
    return tol < d1 < L2 - tol


def _point_seg_dist(p, a, b) -> float:
    dx, dy = b[0] - a[0], b[1] - a[1]
    L2 = dx * dx + dy * dy
    if L2 == 0:
        return math.hypot(p[0] - a[0], p[1] - a[1])
    t = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / L2
    t = min(max(t, 0.0), 1.0)
    return math.hypot(p[0] - a[0] - t * dx, p[1] - a[1] - t * dy)


def get_engine(inst: PolygonInstance) -> GeodesicEngine:
    if inst._engine is None:
        inst._engine = GeodesicEngine(inst)
    return inst._engine


# -- module-level operations ----------------------------------------------

def shortest_path(inst: PolygonInstance, p, q) -> GeodesicPath:
    return get_engine(inst).shortest_path(p, q)


def geodesic_distance(inst: PolygonInstance, p, q) -> float:
    return get_engine(inst).distance(p, q)


def edge_profile(inst: PolygonInstance, source, curve: PolyCurve, i: int) -> EdgeDistanceProfile:
    """Unimodal distance profile from source to curve edge [i, i+1]."""
    if not (1 <= i <= curve.n - 1):
        raise ValueError("edge index out of range")
    eng = get_engine(inst)
    prof = eng.segment_profile(source, curve.pts[i - 1], curve.pts[i])
    t, v = prof.minimum()
    cid = "R" if curve is inst.R else ("B" if curve is inst.B else "?")
    return EdgeDistanceProfile(Point2(float(source[0]), float(source[1])),
                               (cid, i), i + t, v, prof)


def ray_shoot(inst: PolygonInstance, origin, direction) -> Point2:
    """First boundary point hit by the ray from origin along direction."""
    eng = get_engine(inst)
    if not eng.contains(origin):
        raise ValueError("origin outside polygon")
    ox, oy = float(origin[0]), float(origin[1])
    dx, dy = float(direction[0]), float(direction[1])
    nrm = math.hypot(dx, dy)
    if nrm == 0:
        raise ValueError("zero direction")
    dx, dy = dx / nrm, dy / nrm
    best = None
    for (a, b) in eng._bsegs:
        ex, ey = b[0] - a[0], b[1] - a[1]
        den = dx * ey - dy * ex
        if abs(den) < 1e-15:
            continue
        t = ((a[0] - ox) * ey - (a[1] - oy) * ex) / den
        u = ((a[0] - ox) * dy - (a[1] - oy) * dx) / den
        if t > 1e-9 and -1e-12 <= u <= 1 + 1e-12:
            if best is None or t < best[0]:
                best = (t, (ox + t * dx, oy + t * dy))
    if best is None:
        raise ValueError("ray does not hit the boundary")
    return Point2(*best[1])


def threshold_crossings(profile: EdgeDistanceProfile, delta: float):
    """Edge parameters (curve parameterization) where distance = delta."""
    if delta < 0:
        raise ValueError("delta must be >= 0")
    i = profile.edge[1]
    return [i + t for t in profile.profile.threshold_crossings(delta)]
