"""Planar primitives, curve parameterization, polygon validation, triangulation.

Curves use the edge-affine parameterization C(i+t) = (1-t)*c_i + t*c_{i+1}
with parameters living in [1, n] for a curve with n vertices.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

ORIENT_EPS = 1e-12


class Point2(NamedTuple):
    x: float
    y: float


class ParamPoint(NamedTuple):
    """A point (x, y) in the parameter rectangle [1,n] x [1,m]."""
    x: float
    y: float


@dataclass
class MatchingPath:
    """Bimonotone polyline in parameter space together with its cost.

    cost is the maximum pointwise distance over the path under the metric
    of whatever module produced it.
    """
    waypoints: list[ParamPoint]
    cost: float

    def check_bimonotone(self, tol: float = 1e-12) -> bool:
        w = self.waypoints
        return all(w[k + 1].x >= w[k].x - tol and w[k + 1].y >= w[k].y - tol
                   for k in range(len(w) - 1))


def orient(a, b, c) -> float:
    """Signed twice-area of triangle abc; > 0 when counter-clockwise.

    Uses a tolerance of ORIENT_EPS relative to the coordinate magnitudes;
    near-zero results are recomputed with exact arithmetic.
    """
    det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    scale = max(abs(b[0] - a[0]), abs(c[1] - a[1]), abs(b[1] - a[1]),
                abs(c[0] - a[0]), 1.0)
    if abs(det) > ORIENT_EPS * scale:
        return det
    # exact fallback via integer-free Fraction-less trick: math.fsum of products
    terms = [b[0] * c[1], -b[0] * a[1], -a[0] * c[1],
             -b[1] * c[0], b[1] * a[0], a[1] * c[0]]
    return math.fsum(terms)


def seg_intersect(p1, p2, p3, p4, closed: bool = False) -> bool:
    """True if segment p1-p2 intersects p3-p4.

    With closed=False shared endpoints and collinear overlap do not count.
    """
    o1 = orient(p1, p2, p3)
    o2 = orient(p1, p2, p4)
    o3 = orient(p3, p4, p1)
    o4 = orient(p3, p4, p2)
    if o1 == 0 and o2 == 0 and o3 == 0 and o4 == 0:
        if not closed:
            return False
        # collinear: project on the dominant axis
        ax = 0 if abs(p2[0] - p1[0]) >= abs(p2[1] - p1[1]) else 1
        lo1, hi1 = sorted((p1[ax], p2[ax]))
        lo2, hi2 = sorted((p3[ax], p4[ax]))
        return hi1 >= lo2 and hi2 >= lo1
    if closed:
        return (o1 * o2 <= 0) and (o3 * o4 <= 0)
    return (o1 * o2 < 0) and (o3 * o4 < 0)


class PolyCurve:
    """2D polygonal curve with parameter domain [1, n]."""

    def __init__(self, vertices):
        pts = np.asarray(vertices, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 1:
            raise ValueError("curve needs a (k,2) array of vertices, k >= 1")
        if not np.all(np.isfinite(pts)):
            raise ValueError("non-finite coordinate")
        self.pts = pts

    @property
    def n(self) -> int:
        return self.pts.shape[0]

    def __len__(self) -> int:
        return self.pts.shape[0]

    def vertex(self, i: int) -> Point2:
        return Point2(float(self.pts[i - 1, 0]), float(self.pts[i - 1, 1]))

    def eval(self, x: float) -> Point2:
        n = self.n
        if not (1.0 - 1e-9 <= x <= n + 1e-9):
            raise ValueError(f"parameter {x} outside [1,{n}]")
        x = min(max(x, 1.0), float(n))
        i = min(int(math.floor(x)), n - 1) if n > 1 else 1
        t = x - i
        p = self.pts[i - 1] * (1.0 - t) + self.pts[i] * t if n > 1 else self.pts[0]
        return Point2(float(p[0]), float(p[1]))

    def subcurve(self, x: float, x2: float) -> "PolyCurve":
        if x2 < x:
            raise ValueError("reversed range")
        a = self.eval(x)
        b = self.eval(x2)
        lo = int(math.ceil(x - 1e-12))
        hi = int(math.floor(x2 + 1e-12))
        mids = [self.pts[i - 1] for i in range(lo, hi + 1)
                if x + 1e-12 < i < x2 - 1e-12]
        verts = [list(a)] + [list(p) for p in mids] + [list(b)]
        # drop exact duplicates created when x or x2 sits on a vertex
        out = [verts[0]]
        for v in verts[1:]:
            if v != out[-1]:
                out.append(v)
        return PolyCurve(out)

    def reversed(self) -> "PolyCurve":
        return PolyCurve(self.pts[::-1])

    def is_simple(self) -> bool:
        p = self.pts
        k = len(p) - 1
        for i in range(k):
            for j in range(i + 1, k):
                if j == i + 1:
                    continue
                if seg_intersect(p[i], p[i + 1], p[j], p[j + 1]):
                    return False
        return True


def eval_curve(curve: PolyCurve, x: float) -> Point2:
    return curve.eval(x)


def subcurve(curve: PolyCurve, x: float, x2: float) -> PolyCurve:
    return curve.subcurve(x, x2)


def _merge_duplicates(pts) -> list[list[float]]:
    out = [list(map(float, pts[0]))]
    for p in pts[1:]:
        q = list(map(float, p))
        if q != out[-1]:
            out.append(q)
    return out


def _signed_area(poly: np.ndarray) -> float:
    x = poly[:, 0]
    y = poly[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def _point_in_triangle(p, a, b, c, eps: float = 1e-12) -> bool:
    d1 = orient(a, b, p)
    d2 = orient(b, c, p)
    d3 = orient(c, a, p)
    neg = (d1 < -eps) or (d2 < -eps) or (d3 < -eps)
    pos = (d1 > eps) or (d2 > eps) or (d3 > eps)
    return not (neg and pos)


def ear_clip(poly: np.ndarray) -> list[tuple[int, int, int]]:
    """Triangulate a simple CCW polygon by ear clipping, O(v^2).

    Returns index triples into poly. Collinear vertices are tolerated.
    """
    v = len(poly)
    if v < 3:
        return []
    idx = list(range(v))
    tris: list[tuple[int, int, int]] = []
    guard = 0
    while len(idx) > 3 and guard < 4 * v * v:
        guard += 1
        ear_found = False
        k = len(idx)
        for pos in range(k):
            i0, i1, i2 = idx[pos - 1], idx[pos], idx[(pos + 1) % k]
            a, b, c = poly[i0], poly[i1], poly[i2]
            cross = orient(a, b, c)
            if cross < 0:
                continue
            if cross == 0:
                # degenerate ear: clip it only if a and c coincide-free
                da = math.hypot(*(c - a))
                if da == 0.0:
                    idx.pop(pos)
                    ear_found = True
                    break
            ok = True
            for j in idx:
                if j in (i0, i1, i2):
                    continue
                if _point_in_triangle(poly[j], a, b, c):
                    ok = False
                    break
            if not ok:
                continue
            if cross > 0:
                tris.append((i0, i1, i2))
            idx.pop(pos)
            ear_found = True
            break
        if not ear_found:
            # fall back: clip the convex vertex with smallest area violation
            best = None
            for pos in range(len(idx)):
                i0, i1, i2 = idx[pos - 1], idx[pos], idx[(pos + 1) % len(idx)]
                cr = orient(poly[i0], poly[i1], poly[i2])
                if cr >= 0 and (best is None or cr < best[0]):
                    best = (cr, pos)
            if best is None:
                break
            pos = best[1]
            i0, i1, i2 = idx[pos - 1], idx[pos], idx[(pos + 1) % len(idx)]
            if orient(poly[i0], poly[i1], poly[i2]) > 0:
                tris.append((i0, i1, i2))
            idx.pop(pos)
    if len(idx) == 3:
        if orient(poly[idx[0]], poly[idx[1]], poly[idx[2]]) > 0:
            tris.append((idx[0], idx[1], idx[2]))
    return tris


@dataclass
class PolygonInstance:
    """Validated pair (R, B) bounding a simple polygon.

    boundary holds the polygon cycle in CCW order; triangles index into it.
    degenerate marks zero-area instances where both curves run monotonically
    along one segment (accepted so that identical-boundary strips work).
    """
    R: PolyCurve
    B: PolyCurve
    boundary: np.ndarray
    triangles: list[tuple[int, int, int]]
    adjacency: dict
    degenerate: bool = False
    _engine: object = field(default=None, repr=False, compare=False)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.R.n

    @property
    def m(self) -> int:
        return self.B.n

    def area(self) -> float:
        return abs(_signed_area(self.boundary))


def _collinear_monotone(curve: PolyCurve, a, b) -> bool:
    d = np.array([b[0] - a[0], b[1] - a[1]])
    L = np.hypot(*d)
    if L == 0:
        return False
    d = d / L
    proj = (curve.pts - np.array(a)) @ d
    off = np.abs((curve.pts - np.array(a)) @ np.array([-d[1], d[0]]))
    return bool(np.all(off < 1e-9) and np.all(np.diff(proj) > 0))


def build_instance(R, B) -> PolygonInstance:
    """Validate curves R and B and build the triangulated instance.

    R and B may be PolyCurve or array-like vertex lists. Raises ValueError
    on endpoint mismatch, self-intersection, crossing curves, or a
    degenerate polygon that is not a collinear strip.
    """
    R = R if isinstance(R, PolyCurve) else PolyCurve(_merge_duplicates(np.asarray(R, dtype=float)))
    B = B if isinstance(B, PolyCurve) else PolyCurve(_merge_duplicates(np.asarray(B, dtype=float)))
    R = PolyCurve(_merge_duplicates(R.pts))
    B = PolyCurve(_merge_duplicates(B.pts))
    if R.n < 1 or B.n < 1:
        raise ValueError("empty curve")
    tol = 1e-9
    if (math.hypot(R.pts[0, 0] - B.pts[0, 0], R.pts[0, 1] - B.pts[0, 1]) > tol or
            math.hypot(R.pts[-1, 0] - B.pts[-1, 0], R.pts[-1, 1] - B.pts[-1, 1]) > tol):
        raise ValueError("endpoint mismatch: R and B must share both endpoints")
    if not R.is_simple() or not B.is_simple():
        raise ValueError("self-intersecting curve")

    # boundary cycle: R forward then B backward (drop duplicated endpoints)
    cyc = np.vstack([R.pts, B.pts[::-1][1:-1]]) if B.n > 2 else R.pts.copy()
    if R.n == 1:
        cyc = B.pts[:-1] if B.n > 1 else B.pts
    area2 = _signed_area(cyc)

    if abs(area2) < 1e-12 * max(1.0, float(np.max(np.abs(cyc))) ** 2):
        a = tuple(R.pts[0])
        b = tuple(R.pts[-1])
        if _collinear_monotone(R, a, b) and _collinear_monotone(B, a, b):
            inst = PolygonInstance(R, B, cyc, [], {}, degenerate=True)
            return inst
        raise ValueError("degenerate (zero-area) polygon")

    # crossing check between the two curves (shared endpoints allowed)
    for i in range(R.n - 1):
        for j in range(B.n - 1):
            p1, p2 = R.pts[i], R.pts[i + 1]
            p3, p4 = B.pts[j], B.pts[j + 1]
            if seg_intersect(p1, p2, p3, p4):
                raise ValueError("curves cross")

    if area2 < 0:
        # R clockwise builds a clockwise cycle; flip for CCW triangulation
        cyc = cyc[::-1].copy()
    else:
        cyc = cyc.copy()
    # cyc is now CCW
    tris = ear_clip(cyc)
    if len(tris) != len(cyc) - 2:
        raise ValueError("triangulation failed; polygon may not be simple")
    adjacency: dict = {}
    edge_owner: dict = {}
    for t_i, (a, b, c) in enumerate(tris):
        for e in ((a, b), (b, c), (c, a)):
            key = (min(e), max(e))
            if key in edge_owner:
                other = edge_owner[key]
                adjacency.setdefault(t_i, {})[key] = other
                adjacency.setdefault(other, {})[key] = t_i
            else:
                edge_owner[key] = t_i
    for t_i in range(len(tris)):
        adjacency.setdefault(t_i, {})
    return PolygonInstance(R, B, cyc, tris, adjacency)


def instance_to_json_dict(inst: PolygonInstance) -> dict:
    return {"R": [[float(x), float(y)] for x, y in inst.R.pts],
            "B": [[float(x), float(y)] for x, y in inst.B.pts]}


def instance_from_json_dict(d: dict) -> PolygonInstance:
    return build_instance(d["R"], d["B"])
