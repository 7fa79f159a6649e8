"""Separated one-dimensional curves: prefix minima, linear-time matching,
greedy forests, support indices, bichromatic sweep, reachability propagation.

A Curve1D lives strictly on one side of 0; the distance between a left
point r and a right point b is |r| + |b|. Exact value ties are broken by a
symbolic perturbation rank: key = (|value|, side, original index),
lexicographically smaller meaning closer to 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np
from sortedcontainers import SortedList

from .geometry import MatchingPath, ParamPoint


class GridPoint(NamedTuple):
    i: int
    j: int


class Curve1D:
    """1D curve with all vertices strictly on one side of 0.

    orig_idx carries the perturbation indices; reversal keeps the original
    indices so that forward and reversed structures break ties identically.
    """

    def __init__(self, values, side: Optional[str] = None, orig_idx=None):
        v = np.asarray(values, dtype=np.float64)
        if v.ndim != 1 or v.size < 1:
            raise ValueError("need a non-empty 1D value array")
        if np.any(v == 0.0) or not np.all(np.isfinite(v)):
            raise ValueError("values must be finite and nonzero")
        inferred = "left" if v[0] < 0 else "right"
        side = side or inferred
        if side == "left" and np.any(v >= 0):
            raise ValueError("left curve must be strictly negative")
        if side == "right" and np.any(v <= 0):
            raise ValueError("right curve must be strictly positive")
        self.values = v
        self.side = side
        self.A = np.abs(v)
        if orig_idx is None:
            orig_idx = np.arange(1, v.size + 1, dtype=np.int64)
        self.orig_idx = np.asarray(orig_idx, dtype=np.int64)

    @property
    def n(self) -> int:
        return self.values.size

    def __len__(self) -> int:
        return self.values.size

    def key(self, i: int):
        """Perturbation rank of vertex i (1-based); smaller = closer to 0."""
        s = 0 if self.side == "left" else 1
        return (float(self.A[i - 1]), s, int(self.orig_idx[i - 1]))

    def a(self, i: int) -> float:
        return float(self.A[i - 1])

    def reversed(self) -> "Curve1D":
        return Curve1D(self.values[::-1], self.side, self.orig_idx[::-1])

    def _ranks(self) -> np.ndarray:
        """Dense ranks of the perturbation keys within this curve."""
        order = np.lexsort((self.orig_idx, self.A))
        ranks = np.empty(self.n, dtype=np.int64)
        ranks[order] = np.arange(self.n)
        return ranks


def prefix_minima(c: Curve1D) -> list[int]:
    """Indices i (1-based) with key(i) minimal among the prefix [1, i]."""
    out = []
    best = None
    for i in range(1, c.n + 1):
        k = c.key(i)
        if best is None or k < best:
            out.append(i)
            best = k
    return out


def suffix_minima(c: Curve1D) -> list[int]:
    """Indices i with key(i) minimal among the suffix [i, n], ascending."""
    out = []
    best = None
    for i in range(c.n, 0, -1):
        k = c.key(i)
        if best is None or k < best:
            out.append(i)
            best = k
    out.reverse()
    return out


def closest_pair_1d(r: Curve1D, b: Curve1D) -> GridPoint:
    """Bichromatic closest vertex pair under the perturbation rank.

    For separated curves the pair distance is |r(i)| + |b(j)|, so the two
    argmins are independent.
    """
    ri = min(range(1, r.n + 1), key=r.key)
    bj = min(range(1, b.n + 1), key=b.key)
    return GridPoint(ri, bj)


def _segment_maxima(A: np.ndarray, idx: list[int]) -> list[float]:
    """max of A over [idx[k], idx[k+1]] for consecutive list entries."""
    out = []
    for k in range(len(idx) - 1):
        lo, hi = idx[k], idx[k + 1]
        out.append(float(np.max(A[lo - 1:hi])))
    return out


def _one_sided_greedy(r: Curve1D, b: Curve1D):
    """Greedy cheaper-advance walk over prefix minima up to the closest pair.

    Returns (waypoints, max step cost). Waypoints start at (1,1) and end at
    (i*, j*) in the forward orientation of the given curves.
    """
    pm_r = prefix_minima(r)
    pm_b = prefix_minima(b)
    seg_r = _segment_maxima(r.A, pm_r)
    seg_b = _segment_maxima(b.A, pm_b)
    cost = r.a(1) + b.a(1)
    way = [ParamPoint(1.0, 1.0)]
    a = bnd = 0
    while a < len(pm_r) - 1 or bnd < len(pm_b) - 1:
        can_r = a < len(pm_r) - 1
        can_b = bnd < len(pm_b) - 1
        h = seg_r[a] + b.a(pm_b[bnd]) if can_r else math.inf
        v = r.a(pm_r[a]) + seg_b[bnd] if can_b else math.inf
        if h <= v:
            a += 1
            cost = max(cost, h)
        else:
            bnd += 1
            cost = max(cost, v)
        way.append(ParamPoint(float(pm_r[a]), float(pm_b[bnd])))
    cost = max(cost, r.a(pm_r[-1]) + b.a(pm_b[-1]))
    return way, cost


def frechet_matching_1d(r: Curve1D, b: Curve1D) -> MatchingPath:
    """Exact Fréchet matching between separated 1D curves, O(n + m).

    Runs the prefix-minima greedy forward from (1,1) and backward from
    (n,m); the two meet at the bichromatic closest pair.
    """
    fwd, c1 = _one_sided_greedy(r, b)
    bwd, c2 = _one_sided_greedy(r.reversed(), b.reversed())
    n, m = r.n, b.n
    back = [ParamPoint(n + 1 - p.x, m + 1 - p.y) for p in reversed(bwd)]
    star = closest_pair_1d(r, b)
    assert fwd[-1] == ParamPoint(float(star.i), float(star.j))
    assert back[0] == fwd[-1]
    way = fwd + back[1:]
    return MatchingPath(way, max(c1, c2))


def eval_path_cost(r: Curve1D, b: Curve1D, path: MatchingPath) -> float:
    """Max of |r(x)| + |b(y)| along the path; segment maxima are attained at
    integer parameters because |values| is linear on each edge."""
    def val(x, arr):
        if arr.size == 1:
            return float(arr[0])
        i = min(int(math.floor(x)), arr.size - 1)
        t = x - i
        return float(arr[i - 1] * (1 - t) + arr[i] * t)

    best = 0.0
    w = path.waypoints
    for k in range(len(w)):
        best = max(best, val(w[k].x, r.A) + val(w[k].y, b.A))
        if k + 1 < len(w):
            p, q = w[k], w[k + 1]
            for xi in range(int(math.ceil(p.x)), int(math.floor(q.x)) + 1):
                t = 0.0 if q.x == p.x else (xi - p.x) / (q.x - p.x)
                best = max(best, val(float(xi), r.A) + val(p.y + t * (q.y - p.y), b.A))
            for yj in range(int(math.ceil(p.y)), int(math.floor(q.y)) + 1):
                t = 0.0 if q.y == p.y else (yj - p.y) / (q.y - p.y)
                best = max(best, val(p.x + t * (q.x - p.x), r.A) + val(float(yj), b.A))
    return best


# ---------------------------------------------------------------------------
# support index

class CurveIndex:
    """Range max / range min / rank-argmin sparse tables plus ANSV links.

    All queries are 1-based with inclusive ranges and answer exactly what a
    linear scan over the same curve would.
    """

    def __init__(self, c: Curve1D):
        self.curve = c
        A = c.A
        n = A.size
        self.n = n
        K = max(1, n.bit_length())
        ranks = c._ranks()
        self._maxt = [A.copy()]
        self._mint = [A.copy()]
        argmin0 = np.arange(n, dtype=np.int64)
        self._rankt = [ranks.copy()]
        self._argt = [argmin0]
        k = 1
        while (1 << k) <= n:
            h = 1 << (k - 1)
            pm = self._maxt[-1]
            self._maxt.append(np.maximum(pm[:-h], pm[h:]))
            pmin = self._mint[-1]
            self._mint.append(np.minimum(pmin[:-h], pmin[h:]))
            pr, pa = self._rankt[-1], self._argt[-1]
            left_wins = pr[:-h] <= pr[h:]
            self._rankt.append(np.where(left_wins, pr[:-h], pr[h:]))
            self._argt.append(np.where(left_wins, pa[:-h], pa[h:]))
            k += 1
        # ANSV: next index with strictly smaller rank
        nxt = np.full(n, -1, dtype=np.int64)
        stack: list[int] = []
        for i in range(n):
            while stack and ranks[stack[-1]] > ranks[i]:
                nxt[stack.pop()] = i
            stack.append(i)
        self._next_smaller = nxt
        self._ranks = ranks

    def _check(self, i: int, j: int):
        if not (1 <= i <= j <= self.n):
            raise ValueError(f"bad range [{i},{j}] for n={self.n}")

    def range_max(self, i: int, j: int) -> float:
        self._check(i, j)
        k = (j - i + 1).bit_length() - 1
        t = self._maxt[k]
        return float(max(t[i - 1], t[j - (1 << k)]))

    def range_min(self, i: int, j: int) -> float:
        self._check(i, j)
        k = (j - i + 1).bit_length() - 1
        t = self._mint[k]
        return float(min(t[i - 1], t[j - (1 << k)]))

    def range_argmin(self, i: int, j: int) -> int:
        """Index in [i,j] with the smallest perturbation key."""
        self._check(i, j)
        k = (j - i + 1).bit_length() - 1
        r, a = self._rankt[k], self._argt[k]
        p, q = i - 1, j - (1 << k)
        return int(a[p] + 1) if r[p] <= r[q] else int(a[q] + 1)

    def last_below(self, x: int, U: float) -> Optional[int]:
        """Largest x' >= x with max over [x, x'] <= U; None if A(x) > U."""
        if self.curve.a(x) > U:
            return None
        lo, hi = x, self.n
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.range_max(x, mid) <= U:
                lo = mid
            else:
                hi = mid - 1
        return lo

    def first_below(self, i: int, j: int, U: float) -> Optional[int]:
        """First index in [i,j] with A <= U, or None."""
        self._check(i, j)
        if self.range_min(i, j) > U:
            return None
        lo, hi = i, j
        while lo < hi:
            mid = (lo + hi) // 2
            if self.range_min(i, mid) <= U:
                hi = mid
            else:
                lo = mid + 1
        return lo

    def last_below_in_range(self, i: int, j: int, U: float) -> Optional[int]:
        """Last index in [i,j] with A <= U, or None."""
        self._check(i, j)
        if self.range_min(i, j) > U:
            return None
        lo, hi = i, j
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.range_min(mid, j) <= U:
                lo = mid
            else:
                hi = mid - 1
        return lo

    def next_smaller(self, i: int) -> Optional[int]:
        """First i2 > i whose key is smaller than key(i), or None."""
        v = self._next_smaller[i - 1]
        return None if v < 0 else int(v + 1)


def build_curve_index(c: Curve1D) -> CurveIndex:
    return CurveIndex(c)


# ---------------------------------------------------------------------------
# greedy steps and forests

def _hstep(r: Curve1D, b: Curve1D, ri: CurveIndex, bi: CurveIndex,
           i: int, j: int, delta: float) -> Optional[tuple[int, int]]:
    """One horizontal-preferring greedy step from free vertex pair (i,j)."""
    i2 = ri.next_smaller(i)
    slack_h = delta - b.a(j)
    if i2 is not None and ri.range_max(i, i2) <= slack_h:
        i1 = ri.last_below(i, slack_h)
        return (ri.range_argmin(i, i1), j)
    j_hat = bi.last_below(j, delta - r.a(i))
    if j_hat is None:
        raise ValueError(f"point ({i},{j}) outside free space")
    if i2 is not None:
        jp = bi.first_below(j, b.n, delta - ri.range_max(i, i2))
        if jp is not None and jp <= j_hat:
            return (i, jp) if jp != j else None
    j_star = bi.range_argmin(j, j_hat)
    if j_star > j:
        return (i, j_star)
    return None


def greedy_step(r: Curve1D, b: Curve1D, p: GridPoint, delta: float,
                orientation: str = "horizontal",
                rindex: Optional[CurveIndex] = None,
                bindex: Optional[CurveIndex] = None) -> Optional[GridPoint]:
    """Next vertex of the greedy matching from p, or None at a terminal.

    orientation 'horizontal' prefers the longest admissible horizontal jump
    to a prefix minimum; 'vertical' is the transposed rule.
    """
    i, j = p
    if not (1 <= i <= r.n and 1 <= j <= b.n):
        raise ValueError("grid point out of range")
    if r.a(i) + b.a(j) > delta:
        raise ValueError(f"point ({i},{j}) outside free space")
    ri = rindex or build_curve_index(r)
    bi = bindex or build_curve_index(b)
    if orientation == "horizontal":
        q = _hstep(r, b, ri, bi, i, j, delta)
        return None if q is None else GridPoint(*q)
    elif orientation == "vertical":
        q = _hstep(b, r, bi, ri, j, i, delta)
        return None if q is None else GridPoint(q[1], q[0])
    raise ValueError("orientation must be horizontal or vertical")


@dataclass
class GreedyForest:
    """Union of greedy matchings from a seed set, merged on first contact.

    Coordinates are (x, y) grid parameters; extension endpoints may be
    fractional. adjacency maps a vertex to its neighbor set; parent maps a
    vertex to the next vertex toward its root (roots map to None).
    """
    orientation: str
    vertices: list[tuple[float, float]]
    adjacency: dict
    parent: dict
    roots: list[tuple[float, float]]
    seeds: list[GridPoint]
    extensions: list[tuple[tuple[float, float], tuple[float, float]]] = field(default_factory=list)
    has_extensions: bool = False

    def edges(self):
        seen = set()
        out = []
        for u, nbrs in self.adjacency.items():
            for v in nbrs:
                key = (min(u, v), max(u, v))
                if key not in seen:
                    seen.add(key)
                    out.append((key[0], key[1]))
        return out

    def path_from(self, seed: GridPoint) -> list[tuple[float, float]]:
        p = (float(seed.i), float(seed.j))
        out = [p]
        while self.parent.get(p) is not None:
            p = self.parent[p]
            out.append(p)
        return out


def _between(a, p, b) -> bool:
    """p strictly inside axis-aligned segment a-b (assumed collinear)."""
    if a[0] == b[0] == p[0]:
        lo, hi = min(a[1], b[1]), max(a[1], b[1])
        return lo < p[1] < hi
    if a[1] == b[1] == p[1]:
        lo, hi = min(a[0], b[0]), max(a[0], b[0])
        return lo < p[0] < hi
    return False


def build_greedy_forest(r: Curve1D, b: Curve1D, delta: float,
                        seeds: list[GridPoint], orientation: str = "horizontal",
                        extend: bool = False,
                        rindex: Optional[CurveIndex] = None,
                        bindex: Optional[CurveIndex] = None) -> GreedyForest:
    """Build the geometric forest of greedy matchings from the seeds.

    Each seed's path follows greedy_step until it terminates or meets the
    existing structure; meeting points are always greedy targets, so a path
    either lands on an existing vertex or subdivides the edge it lies on.
    """
    ri = rindex or build_curve_index(r)
    bi = bindex or build_curve_index(b)
    for s in seeds:
        if r.a(s.i) + b.a(s.j) > delta:
            raise ValueError(f"seed {tuple(s)} outside free space")
    adjacency: dict = {}
    parent: dict = {}
    roots: list = []

    def add_vertex(v):
        adjacency.setdefault(v, set())

    def link(u, v):
        adjacency[u].add(v)
        adjacency[v].add(u)

    def unlink(u, v):
        adjacency[u].discard(v)
        adjacency[v].discard(u)

    for s in sorted(set(seeds)):
        p = (float(s.i), float(s.j))
        if p in adjacency:
            continue
        add_vertex(p)
        while True:
            q_gp = greedy_step(r, b, GridPoint(int(p[0]), int(p[1])), delta,
                               orientation, ri, bi)
            if q_gp is None:
                parent.setdefault(p, None)
                roots.append(p)
                break
            q = (float(q_gp.i), float(q_gp.j))
            if q in adjacency:
                # merge: existing vertices on segment (p, q] lie on one chain
                # toward q; walk down to the one nearest p
                cur = q
                while True:
                    nxt = None
                    for u in adjacency[cur]:
                        if _between(p, u, cur):
                            nxt = u
                            break
                    if nxt is None:
                        break
                    cur = nxt
                sub = None
                for u in adjacency[cur]:
                    if _between(u, p, cur):
                        sub = u
                        break
                add_vertex(p)
                if sub is not None:
                    # p interior to existing edge sub-cur: subdivide at p
                    unlink(cur, sub)
                    link(cur, p)
                    link(p, sub)
                    if parent.get(sub) == cur:
                        parent[sub] = p
                else:
                    link(p, cur)
                parent[p] = cur
                break
            add_vertex(q)
            link(p, q)
            parent[p] = q
            p = q

    extensions = []
    if extend:
        for rho in roots:
            i, j = int(rho[0]), int(rho[1])
            if orientation == "horizontal":
                U = delta - b.a(j)
                i1 = ri.last_below(i, U)
                x2 = float(i1)
                if i1 < r.n:
                    a0, a1 = r.a(i1), r.a(i1 + 1)
                    if a1 > U >= a0 and a1 > a0:
                        x2 = i1 + (U - a0) / (a1 - a0)
                extensions.append(((float(i), float(j)), (x2, float(j))))
            else:
                U = delta - r.a(i)
                j1 = bi.last_below(j, U)
                y2 = float(j1)
                if j1 < b.n:
                    a0, a1 = b.a(j1), b.a(j1 + 1)
                    if a1 > U >= a0 and a1 > a0:
                        y2 = j1 + (U - a0) / (a1 - a0)
                extensions.append(((float(i), float(j)), (float(i), y2)))

    return GreedyForest(orientation, list(adjacency.keys()), adjacency,
                        parent, roots, list(seeds), extensions, extend)


# ---------------------------------------------------------------------------
# bichromatic segment intersection sweep

def _norm_seg(seg):
    (x1, y1), (x2, y2) = seg
    if x1 == x2 and y1 == y2:
        return ("P", x1, y1)
    if y1 == y2:
        return ("H", y1, min(x1, x2), max(x1, x2))
    if x1 == x2:
        return ("V", x1, min(y1, y2), max(y1, y2))
    raise ValueError("segments must be axis-aligned")


def _sweep_hv(h_items, v_items, mark_h, mark_v):
    """Closed-intersection sweep: horizontal queries against vertical
    segments. h_items: (y, x1, x2, id); v_items: (x, y1, y2, id).
    Marks every intersecting pair member once."""
    events = {}
    for x, y1, y2, vid in v_items:
        events.setdefault(y1, [[], [], []])[0].append((x, y1, y2, vid))
        events.setdefault(y2, [[], [], []])[2].append((x, y1, y2, vid))
    for y, x1, x2, hid in h_items:
        events.setdefault(y, [[], [], []])[1].append((y, x1, x2, hid))
    active_all = SortedList(key=lambda t: (t[0], t[3]))
    active_unmarked = SortedList(key=lambda t: (t[0], t[3]))
    for y in sorted(events):
        ins, qry, rem = events[y]
        for item in ins:
            active_all.add(item)
            active_unmarked.add(item)
        for (_, x1, x2, hid) in qry:
            pos = active_all.bisect_key_left((x1, -1))
            if pos < len(active_all) and active_all[pos][0] <= x2:
                mark_h.add(hid)
            lo = active_unmarked.bisect_key_left((x1, -1))
            hi = active_unmarked.bisect_key_right((x2, float("inf")))
            hit = list(active_unmarked[lo:hi])
            for item in hit:
                mark_v.add(item[3])
                active_unmarked.remove(item)
        for item in rem:
            active_all.remove(item)
            if item in active_unmarked:
                active_unmarked.remove(item)


def _collinear_overlaps(a_items, b_items, mark_a, mark_b):
    """Overlap marking for parallel segments grouped on the same line.
    Items: (line coord, lo, hi, id)."""
    groups: dict = {}
    for c, lo, hi, sid in a_items:
        groups.setdefault(c, ([], []))[0].append((lo, hi, sid))
    for c, lo, hi, sid in b_items:
        groups.setdefault(c, ([], []))[1].append((lo, hi, sid))
    for c, (aa, bb) in groups.items():
        if not aa or not bb:
            continue
        for src, dst, msrc in ((aa, bb, mark_b), (bb, aa, mark_a)):
            ivs = sorted((lo, hi) for lo, hi, _ in src)
            starts = [iv[0] for iv in ivs]
            pref = []
            mx = -math.inf
            for _, hi2 in ivs:
                mx = max(mx, hi2)
                pref.append(mx)
            import bisect
            for lo, hi, sid in dst:
                pos = bisect.bisect_right(starts, hi) - 1
                if pos >= 0 and pref[pos] >= lo:
                    msrc.add(sid)


def _bichromatic_mark(red, blue):
    """Index sets of red and blue segments intersecting the other color.
    Closed semantics: shared endpoints and collinear overlap count."""
    rH, rV, bH, bV = [], [], [], []
    for idx, seg in enumerate(red):
        t = _norm_seg(seg)
        if t[0] in ("H", "P"):
            y, x1, x2 = (t[2], t[1], t[1]) if t[0] == "P" else (t[1], t[2], t[3])
            rH.append((y, x1, x2, idx))
        if t[0] in ("V", "P"):
            x, y1, y2 = (t[1], t[2], t[2]) if t[0] == "P" else (t[1], t[2], t[3])
            rV.append((x, y1, y2, idx))
    for idx, seg in enumerate(blue):
        t = _norm_seg(seg)
        if t[0] in ("H", "P"):
            y, x1, x2 = (t[2], t[1], t[1]) if t[0] == "P" else (t[1], t[2], t[3])
            bH.append((y, x1, x2, idx))
        if t[0] in ("V", "P"):
            x, y1, y2 = (t[1], t[2], t[2]) if t[0] == "P" else (t[1], t[2], t[3])
            bV.append((x, y1, y2, idx))
    mark_r: set = set()
    mark_b: set = set()
    _sweep_hv(rH, bV, mark_r, mark_b)
    _sweep_hv(bH, rV, mark_b, mark_r)
    _collinear_overlaps(rH, bH, mark_r, mark_b)
    _collinear_overlaps([(x, y1, y2, i) for x, y1, y2, i in rV],
                        [(x, y1, y2, i) for x, y1, y2, i in bV],
                        mark_r, mark_b)
    return mark_r, mark_b


def bichromatic_intersections(red, blue):
    """Report the red and blue axis-aligned segments that intersect a
    segment of the other color (closed semantics). Returns two index lists."""
    mark_r, mark_b = _bichromatic_mark(red, blue)
    return sorted(mark_r), sorted(mark_b)


# ---------------------------------------------------------------------------
# reachability propagation

def _forest_segments(forest: GreedyForest):
    """All edges plus extensions as coordinate segments."""
    segs = list(forest.edges())
    segs.extend(forest.extensions)
    return segs


def _map_back(seg, n, m):
    (x1, y1), (x2, y2) = seg
    return ((n + 1 - x1, m + 1 - y1), (n + 1 - x2, m + 1 - y2))


def propagate_reachability(r: Curve1D, b: Curve1D, delta: float,
                           S: list[GridPoint], E: list[GridPoint]) -> list[GridPoint]:
    """All points of E that are delta-reachable from some point of S.

    Builds the extended horizontal- and vertical-greedy forests of S and the
    reversed forests of E, intersects their edge sets, and marks the reverse
    subtrees hanging off every intersected edge.
    """
    S = [GridPoint(*p) for p in S]
    E = [GridPoint(*p) for p in E]
    for p in S + E:
        if not (1 <= p.i <= r.n and 1 <= p.j <= b.n):
            raise ValueError(f"grid point {tuple(p)} out of range")
        if r.a(p.i) + b.a(p.j) > delta:
            raise ValueError(f"point {tuple(p)} outside free space")
    if not S or not E:
        return []
    n, m = r.n, b.n
    ri = build_curve_index(r)
    bi = build_curve_index(b)
    fh = build_greedy_forest(r, b, delta, S, "horizontal", True, ri, bi)
    fv = build_greedy_forest(r, b, delta, S, "vertical", True, ri, bi)
    red = _forest_segments(fh) + _forest_segments(fv)

    rr, br = r.reversed(), b.reversed()
    rri = build_curve_index(rr)
    bri = build_curve_index(br)
    E_rev = [GridPoint(n + 1 - p.i, m + 1 - p.j) for p in E]
    out: set[GridPoint] = set()
    blue = []
    blue_mu = []  # child endpoint (reversed coords) owning each blue segment
    rev_forests = []
    for orient_ in ("horizontal", "vertical"):
        f = build_greedy_forest(rr, br, delta, E_rev, orient_, True, rri, bri)
        rev_forests.append(f)
        for (u, v) in f.edges():
            # child = endpoint farther from the root = the one whose parent
            # chain passes through the other
            child = u if f.parent.get(u) == v else v
            blue.append(_map_back((u, v), n, m))
            blue_mu.append((f, child))
        for k, ext in enumerate(f.extensions):
            blue.append(_map_back(ext, n, m))
            blue_mu.append((f, ext[0]))  # extension belongs to its root

    _, mark_b = _bichromatic_mark(red, blue)

    # collect, per forest vertex, the E seeds whose path runs through it
    seeds_of: dict = {}
    for f in rev_forests:
        at: dict = {}
        for p in E_rev:
            v = (float(p.i), float(p.j))
            while v is not None:
                at.setdefault(v, set()).add((float(p.i), float(p.j)))
                v = f.parent.get(v)
        seeds_of[id(f)] = at

    for idx in mark_b:
        f, mu = blue_mu[idx]
        for v in seeds_of[id(f)].get(mu, ()):
            out.add(GridPoint(int(round(n + 1 - v[0])), int(round(m + 1 - v[1]))))
    return sorted(out)
