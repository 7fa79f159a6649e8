"""Shared test oracles, independent of the library's query structures."""
from __future__ import annotations

import heapq
import math
import random
from types import SimpleNamespace

from geofrechet.geometry import orient
from geofrechet.geodesic import get_engine


def _point_seg_dist(p, a, b):
    dx, dy = b[0] - a[0], b[1] - a[1]
    L2 = dx * dx + dy * dy
    if L2 == 0:
        return math.hypot(p[0] - a[0], p[1] - a[1])
    t = min(max(((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / L2, 0.0), 1.0)
    return math.hypot(p[0] - a[0] - t * dx, p[1] - a[1] - t * dy)


def _seg_blocked(p, q, wall_a, wall_b):
    """Proper crossing test; walls touching an endpoint of pq are skipped
    by the caller, so only interior obstructions count."""
    o1 = orient(p, q, wall_a)
    o2 = orient(p, q, wall_b)
    o3 = orient(wall_a, wall_b, p)
    o4 = orient(wall_a, wall_b, q)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return False


def visible_oracle(inst, p, q) -> bool:
    """Conservative visibility along pq inside the polygon: no proper wall
    crossing (walls incident to p or q within 1e-9 are ignored) and the
    midpoint lies inside."""
    eng = get_engine(inst)
    for (a, b) in eng._bsegs:
        if _point_seg_dist(p, a, b) < 1e-9 or _point_seg_dist(q, a, b) < 1e-9:
            continue
        if _seg_blocked(p, q, a, b):
            return False
    mid = (0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1]))
    return eng.contains(mid, 1e-9)


def dijkstra_geodesic(inst, p, q) -> float:
    """Geodesic distance by Dijkstra over the visibility graph of the
    polygon vertices plus the two query points."""
    p = (float(p[0]), float(p[1]))
    q = (float(q[0]), float(q[1]))
    eng = get_engine(inst)
    nodes = [p, q] + [tuple(v) for v in eng.boundary]
    k = len(nodes)
    adj = [[] for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            if visible_oracle(inst, nodes[i], nodes[j]):
                w = math.hypot(nodes[i][0] - nodes[j][0], nodes[i][1] - nodes[j][1])
                adj[i].append((j, w))
                adj[j].append((i, w))
    dist = [math.inf] * k
    dist[0] = 0.0
    pq = [(0.0, 0)]
    while pq:
        d, u = heapq.heappop(pq)
        if d > dist[u] + 1e-15:
            continue
        if u == 1:
            return d
        for (v, w) in adj[u]:
            nd = d + w
            if nd < dist[v] - 1e-15:
                dist[v] = nd
                heapq.heappush(pq, (nd, v))
    return dist[1]


def matching_cost_geodesic(inst, waypoints) -> float:
    """Max geodesic distance along a bimonotone matching path, evaluated at
    the waypoints plus every integer-parameter cell crossing (distance is
    convex only per cell, so crossings can carry the maximum)."""
    eng = get_engine(inst)
    out = 0.0
    for k in range(len(waypoints) - 1):
        (x0, y0), (x1, y1) = waypoints[k], waypoints[k + 1]
        ts = {0.0, 1.0}
        for (a0, a1) in ((x0, x1), (y0, y1)):
            if a1 > a0 + 1e-15:
                i = math.ceil(a0 - 1e-12)
                while i <= a1 + 1e-12:
                    t = (i - a0) / (a1 - a0)
                    if -1e-12 <= t <= 1 + 1e-12:
                        ts.add(min(max(t, 0.0), 1.0))
                    i += 1
        for t in sorted(ts):
            x = x0 + (x1 - x0) * t
            y = y0 + (y1 - y0) * t
            out = max(out, eng.distance(tuple(inst.R.eval(x)), tuple(inst.B.eval(y))))
    return out


def matching_cost_euclid(inst, waypoints) -> float:
    out = 0.0
    for k in range(len(waypoints) - 1):
        (x0, y0), (x1, y1) = waypoints[k], waypoints[k + 1]
        ts = {0.0, 1.0}
        for (a0, a1) in ((x0, x1), (y0, y1)):
            if a1 > a0 + 1e-15:
                i = math.ceil(a0 - 1e-12)
                while i <= a1 + 1e-12:
                    ts.add(min(max((i - a0) / (a1 - a0), 0.0), 1.0))
                    i += 1
        for t in sorted(ts):
            x = x0 + (x1 - x0) * t
            y = y0 + (y1 - y0) * t
            rp = inst.R.eval(x)
            bp = inst.B.eval(y)
            out = max(out, math.hypot(rp[0] - bp[0], rp[1] - bp[1]))
    return out


def sub_instance(inst, Rhat, Bhat):
    """Wrapper exposing subcurves to the free-space oracle while sharing
    the parent polygon's engine."""
    return SimpleNamespace(R=Rhat, B=Bhat, _engine=get_engine(inst), _cache={})


def discrete_matching(inst, samples_per_edge: int = 8):
    """Discrete Frechet matching on densely sampled curves under the
    geodesic metric: (cost, list of (x, y) parameter pairs)."""
    eng = get_engine(inst)
    xs = [1 + i / samples_per_edge for i in range((inst.R.n - 1) * samples_per_edge)]
    xs.append(float(inst.R.n))
    ys = [1 + j / samples_per_edge for j in range((inst.B.n - 1) * samples_per_edge)]
    ys.append(float(inst.B.n))
    rp = [tuple(inst.R.eval(x)) for x in xs]
    bp = [tuple(inst.B.eval(y)) for y in ys]
    n, m = len(xs), len(ys)
    D = [[eng.distance(rp[i], bp[j]) for j in range(m)] for i in range(n)]
    C = [[0.0] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            best = 0.0 if i == j == 0 else min(
                (C[i - 1][j] if i else math.inf),
                (C[i][j - 1] if j else math.inf),
                (C[i - 1][j - 1] if i and j else math.inf))
            C[i][j] = max(D[i][j], best)
    path = []
    i, j = n - 1, m - 1
    while True:
        path.append((xs[i], ys[j]))
        if i == j == 0:
            break
        opts = []
        if i and j:
            opts.append((C[i - 1][j - 1], i - 1, j - 1))
        if i:
            opts.append((C[i - 1][j], i - 1, j))
        if j:
            opts.append((C[i][j - 1], i, j - 1))
        _, i, j = min(opts)
    path.reverse()
    return C[n - 1][m - 1], path


def random_instance(seed: int, max_total: int = 30):
    """Random simple-polygon instance drawn from all generator families."""
    from geofrechet import generators
    rng = random.Random(seed)
    kind = rng.randrange(3)
    n = rng.randint(8, max(8, max_total // 2))
    if kind == 0:
        return generators.gen_pocket(seed, n)
    if kind == 1:
        return generators.gen_simple(seed, n, spikes=rng.randint(0, 2))
    return generators.gen_convex(min(n, 14), seed)


def _proper_cross(a, b, c, d) -> bool:
    o1 = orient(a, b, c)
    o2 = orient(a, b, d)
    o3 = orient(c, d, a)
    o4 = orient(c, d, b)
    return o1 * o2 < 0 and o3 * o4 < 0


def polyline_crossings(P, Q) -> int:
    """Number of proper crossings between two waypoint polylines."""
    out = 0
    for s0, s1 in zip(P, P[1:]):
        for t0, t1 in zip(Q, Q[1:]):
            if _proper_cross(tuple(s0), tuple(s1), tuple(t0), tuple(t1)):
                out += 1
    return out


def check_shortcutting(inst, rng, trials: int = 20):
    """(violations, checks) of: when the geodesic r'-b' properly crosses the
    nearest-neighbor geodesic of r an odd number of times, rerouting r' to
    that nearest neighbor cannot increase the distance."""
    from geofrechet.nnprofile import nn_profile
    eng = get_engine(inst)
    prof = nn_profile(inst)
    viol = checks = 0
    for _ in range(trials):
        x = rng.uniform(1, inst.R.n)
        y, _v = prof.nn_at(x)
        r = tuple(inst.R.eval(x))
        b = tuple(inst.B.eval(y))
        pi = eng.shortest_path(r, b).waypoints
        for _ in range(6):
            rp = tuple(inst.R.eval(rng.uniform(1, inst.R.n)))
            bp = tuple(inst.B.eval(rng.uniform(1, inst.B.n)))
            g = eng.shortest_path(rp, bp).waypoints
            if polyline_crossings(g, pi) % 2 == 1:
                checks += 1
                if eng.distance(rp, b) > eng.distance(rp, bp) + 1e-9:
                    viol += 1
    return viol, checks


def check_lower_envelope(r, b, delta: float):
    """(violations, checks) of: every reachable global prefix-minima pair
    sits vertically above the horizontal greedy path (with extensions) via
    a free connector."""
    from geofrechet.oned import (GridPoint, build_curve_index,
                                 build_greedy_forest, prefix_minima)
    from geofrechet.oracle import reachable_points_bruteforce
    s = GridPoint(1, 1)
    if r.a(1) + b.a(1) > delta:
        return 0, 0
    free = [GridPoint(i, j) for i in range(1, r.n + 1)
            for j in range(1, b.n + 1) if r.a(i) + b.a(j) <= delta]
    reach = {(int(t[0]), int(t[1]))
             for t in reachable_points_bruteforce(r, b, delta, [s], free)}
    pmr, pmb = set(prefix_minima(r)), set(prefix_minima(b))
    ri, bi = build_curve_index(r), build_curve_index(b)
    f = build_greedy_forest(r, b, delta, [s], "horizontal", True, ri, bi)
    edges = [((s.i, s.j), (s.i, s.j))] + list(f.edges()) + list(f.extensions)
    viol = checks = 0
    for (i, j) in sorted(reach):
        if i not in pmr or j not in pmb:
            continue
        checks += 1
        ok = False
        for ((i1, j1), (i2, j2)) in edges:
            if not (min(i1, i2) - 1e-9 <= i <= max(i1, i2) + 1e-9):
                continue
            if min(j1, j2) > j + 1e-9:
                continue
            # highest edge point in this column not above the target, then
            # a free vertical connector up to it
            jstart = min(max(j1, j2), float(j))
            j0 = int(math.ceil(jstart - 1e-9))
            if all(r.a(i) + b.a(jj) <= delta + 1e-9 for jj in range(j0, j + 1)):
                ok = True
                break
        if not ok:
            viol += 1
    return viol, checks


def check_matching_to_fan(inst, samples_per_edge: int = 6):
    """(violations, checks) of: along a dense discrete geodesic matching,
    whenever the B-side point is a nearest-neighbor image, the R-side
    partner lies in the corresponding fan leaf at the matching cost."""
    from geofrechet.nnprofile import fan_leaf, nn_profile
    cost, path = discrete_matching(inst, samples_per_edge)
    prof = nn_profile(inst)
    delta = cost * (1 + 1e-9)
    viol = checks = 0
    for (x, y) in path:
        xs = None
        for (_x0, _x1, y0, y1) in prof.regimes:
            if y0 - 1e-9 <= y <= y1 + 1e-9:
                try:
                    xs = prof.x_for_target(min(max(y, y0), y1))
                except ValueError:
                    xs = None
                break
        if xs is None:
            continue
        try:
            fan = fan_leaf(inst, tuple(inst.B.eval(y)), xs, delta)
        except ValueError:
            continue
        checks += 1
        if not (fan.leaf[0] - 1e-6 <= x <= fan.leaf[1] + 1e-6):
            viol += 1
    return viol, checks


def check_monotone_leaves(inst, per_regime: int = 8):
    """(violations, checks) of: fan leaves advance monotonically with the
    apex along the nearest-neighbor profile."""
    from geofrechet.nnprofile import fan_leaf, nn_profile
    prof = nn_profile(inst)
    delta = prof.max_value() * 1.2
    viol = checks = 0
    for (_x0, _x1, y0, y1) in prof.regimes:
        if y1 - y0 < 1e-6:
            continue
        prev = None
        for k in range(per_regime + 1):
            y = y0 + (y1 - y0) * k / per_regime
            x = prof.x_for_target(y)
            leaf = fan_leaf(inst, tuple(inst.B.eval(y)), x, delta).leaf
            if prev is not None:
                checks += 1
                if leaf[0] < prev[0] - 1e-6 or leaf[1] < prev[1] - 1e-6:
                    viol += 1
            prev = leaf
    return viol, checks


def check_snapping(inst, eps: float, rng, trials: int = 40):
    """(violations, checks) of: routing a separator-crossing geodesic via
    its best anchor costs at most eps*delta extra."""
    from geofrechet.farslab import build_separator_anchors
    eng = get_engine(inst)
    m = inst.B.n
    ya, yb = sorted((rng.uniform(1, m), rng.uniform(1, m)))
    b1 = tuple(inst.B.eval(ya))
    b2 = tuple(inst.B.eval(yb))
    delta = eng.distance(b1, b2)
    if delta < 1e-9:
        return 0, 0
    A = build_separator_anchors(inst, b1, b2, delta, eps)
    if A is None:
        return 0, 0
    sep = eng.shortest_path(b1, b2).waypoints
    viol = checks = 0
    for _ in range(trials):
        rp = tuple(inst.R.eval(rng.uniform(1, inst.R.n)))
        bp = tuple(inst.B.eval(rng.uniform(1, m)))
        g = eng.shortest_path(rp, bp).waypoints
        if polyline_crossings(g, sep) == 0:
            continue
        true = eng.distance(rp, bp)
        snapped = min(eng.distance(rp, tuple(a)) + eng.distance(tuple(a), bp)
                      for a in A.anchors)
        checks += 1
        if snapped > true + eps * delta + 1e-9:
            viol += 1
    return viol, checks
