"""Random instance generators: convex splits, pocket polygons with
guaranteed far slabs, x-monotone two-chain polygons, and 1D families."""
from __future__ import annotations

import math
import random

import numpy as np

from .geometry import PolygonInstance, build_instance
from .oned import Curve1D, GridPoint


def gen_convex(n_total: int = 12, seed: int = 0) -> PolygonInstance:
    """Random convex polygon split into R and B at two hull vertices."""
    rng = random.Random(seed)
    for _ in range(200):
        k = max(n_total, 4)
        pts = [(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(3 * k)]
        hull = _convex_hull(pts)
        if len(hull) < 4:
            continue
        if len(hull) > n_total:
            hull = hull[:: max(1, len(hull) // n_total)]
        h = len(hull)
        if h < 4:
            continue
        cut = rng.randint(2, h - 2)
        arc_ccw = hull[:cut + 1]                      # s1 .. s2 counter-clockwise
        arc_cw = [hull[0]] + hull[cut:][::-1]         # s1 .. s2 clockwise
        try:
            return build_instance(arc_cw, arc_ccw)
        except ValueError:
            continue
    raise RuntimeError("convex generation failed")


def _convex_hull(pts):
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _two_chain(rng: random.Random, n_top: int, n_bot: int, spikes: int,
               width: float = 4.0) -> PolygonInstance:
    """Instance from two x-monotone chains sharing their endpoints.
    R is the upper chain (y > 0 inside), B the lower; spikes dig narrow
    pockets downward into B, producing far points."""
    def chain_x(k):
        xs = sorted(rng.uniform(0.05, 0.95) for _ in range(k))
        return [0.0] + [x * width for x in xs] + [width]

    top_x = chain_x(n_top - 2)
    bot_x = chain_x(max(0, n_bot - 2 - 3 * spikes))
    top = [(top_x[0], 0.0)]
    for x in top_x[1:-1]:
        top.append((x, rng.uniform(0.4, 1.6)))
    top.append((top_x[-1], 0.0))
    bot = [(x, -rng.uniform(0.2, 0.7)) if 0 < i < len(bot_x) - 1 else (x, 0.0)
           for i, x in enumerate(bot_x)]
    for _ in range(spikes):
        cx = rng.uniform(0.2, 0.8) * width
        w = rng.uniform(0.02, 0.08)
        depth = rng.uniform(2.0, 4.0)
        y0 = -rng.uniform(0.2, 0.5)
        ins = [(cx - w, y0), (cx, -depth), (cx + w, y0)]
        bot = [p for p in bot if not (cx - 3 * w <= p[0] <= cx + 3 * w)] + ins
    bot.sort(key=lambda p: p[0])
    # enforce strict x-monotonicity
    out = [bot[0]]
    for p in bot[1:]:
        if p[0] > out[-1][0] + 1e-6:
            out.append(p)
    if out[-1][0] < width:
        out.append((width, 0.0))
    out[0] = (0.0, 0.0)
    out[-1] = (width, 0.0)
    return build_instance(top, out)


def gen_pocket(seed: int = 0, n: int = 12) -> PolygonInstance:
    """Two-chain polygon with one to two deep narrow pockets in B."""
    rng = random.Random(seed)
    for _ in range(100):
        try:
            return _two_chain(rng, max(4, n // 2), max(6, n // 2),
                              spikes=rng.randint(1, 2))
        except ValueError:
            continue
    raise RuntimeError("pocket generation failed")


def gen_simple(seed: int = 0, n: int = 12, spikes: int = 0) -> PolygonInstance:
    """Random two-chain simple polygon; optional spikes add far points."""
    rng = random.Random(seed)
    for _ in range(100):
        k = max(2, n // 2)
        try:
            return _two_chain(rng, k + rng.randint(0, 2), k + rng.randint(0, 2),
                              spikes=spikes)
        except ValueError:
            continue
    raise RuntimeError("generation failed")


def gen_random_1d(n: int, m: int, seed: int = 0):
    rng = random.Random(seed)
    r = Curve1D([-rng.uniform(0.1, 10.0) for _ in range(n)])
    b = Curve1D([rng.uniform(0.1, 10.0) for _ in range(m)])
    return r, b


def gen_comb_1d(n: int, seed: int = 0, n_points: int = 6):
    """Comb-shaped 1D stress instance: alternating teeth with noise, plus
    seed/exit sets on free vertex pairs and a workable delta."""
    rng = random.Random(seed)
    rv = [-(1.0 + 2.0 * (i % 2) + rng.uniform(0, 0.2)) for i in range(n)]
    bv = [(1.0 + 2.0 * ((i + 1) % 2) + rng.uniform(0, 0.2)) for i in range(n)]
    r = Curve1D(rv)
    b = Curve1D(bv)
    delta = 4.8
    S = []
    E = []
    guard = 0
    while len(S) < n_points and guard < 50 * n_points:
        guard += 1
        i = rng.randint(1, max(1, n // 3))
        j = rng.randint(1, max(1, n // 3))
        if r.a(i) + b.a(j) <= delta:
            S.append(GridPoint(i, j))
    guard = 0
    while len(E) < n_points and guard < 50 * n_points:
        guard += 1
        i = rng.randint(max(1, 2 * n // 3), n)
        j = rng.randint(max(1, 2 * n // 3), n)
        if r.a(i) + b.a(j) <= delta:
            E.append(GridPoint(i, j))
    return r, b, delta, S, E
