"""Top-level approximation driver.

The decision walks the slab partition bottom-up, advancing one transit
point per slab boundary: exact greedy steps through near slabs, anchored
snapped propagation through far slabs. The optimizer grid-searches powers
of an internal (1+eps') between the Hausdorff lower bound and its tripled
upper bound, with (1+eps')^2 = 1+eps so the two-sided loss composes to the
requested factor.
"""
from __future__ import annotations

import math

from .geometry import ParamPoint, PolygonInstance
from .geodesic import get_engine
from .nnprofile import EmptyFanLeaf, nn_profile, nn_profile_reverse, build_slabs
from .nearslab import TransitPoint, advance_near_slab
from .farslab import far_find_exit


def geodesic_hausdorff(inst: PolygonInstance) -> float:
    """Symmetric geodesic Hausdorff distance between R and B."""
    if inst.degenerate:
        return 0.0
    if "hausdorff" not in inst._cache:
        a = nn_profile(inst).max_value()
        b = nn_profile_reverse(inst).max_value()
        inst._cache["hausdorff"] = max(a, b)
    return inst._cache["hausdorff"]


def _suffix_max(inst, x0: float, apex) -> float:
    """max_{x in [x0, n]} d(R(x), apex); piecewise maxima sit at piece ends."""
    eng = get_engine(inst)
    R = inst.R
    if R.n == 1 or x0 >= R.n - 1e-12:
        return eng.distance(tuple(R.eval(x0)), tuple(apex))
    out = 0.0
    i0 = min(max(int(math.floor(x0)), 1), R.n - 1)
    for i in range(i0, R.n):
        prof = eng.segment_profile(tuple(apex), R.pts[i - 1], R.pts[i])
        lo = max(x0 - i, 0.0)
        out = max(out, prof.eval(lo), prof.eval(1.0))
        for (t0, t1, _ap, _D) in prof.pieces:
            if t1 >= lo:
                out = max(out, prof.eval(max(t0, lo)), prof.eval(t1))
    return out


def decision_chain(inst: PolygonInstance, delta: float, eps: float):
    """(answer, transit chain) of the slab walk; the chain is bimonotone."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    chain = [ParamPoint(1.0, 1.0)]
    if delta < 0:
        return False, chain
    if inst.degenerate:
        return True, chain + [ParamPoint(float(inst.R.n), float(inst.B.n))]
    d_h = geodesic_hausdorff(inst)
    if delta < d_h * (1 - 1e-9) - 1e-12:
        return False, chain
    profile = nn_profile(inst)
    try:
        slabs = build_slabs(inst, profile, delta)
    except EmptyFanLeaf:
        return False, chain
    cur = TransitPoint(ParamPoint(1.0, 1.0), "vertex")
    for slab in slabs:
        if slab.y_hi <= slab.y_lo + 1e-12 and slab.y_lo <= 1.0 + 1e-12:
            continue
        if slab.kind == "near":
            nxt = advance_near_slab(inst, slab, cur, delta)
        else:
            nxt = far_find_exit(inst, slab, cur, delta, eps)
        if nxt is None:
            return False, chain
        cur = nxt
        chain.append(cur.point)
    tail = _suffix_max(inst, cur.point.x, inst.B.pts[-1])
    ok = tail <= (1 + eps) * delta * (1 + 1e-9) + 1e-12
    if ok:
        chain.append(ParamPoint(float(inst.R.n), float(inst.B.n)))
    return ok, chain


def approx_decide(inst: PolygonInstance, delta: float, eps: float) -> bool:
    """YES when some bimonotone matching stays within (1+eps)*delta; a NO
    is reliable whenever the true Frechet distance exceeds delta."""
    return decision_chain(inst, delta, eps)[0]


def approx_optimize(inst: PolygonInstance, eps: float) -> float:
    """(1+eps)-approximation of the geodesic Frechet distance."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    d_h = geodesic_hausdorff(inst)
    if d_h < 1e-12:
        return 0.0
    ep = math.sqrt(1 + eps) - 1
    imax = int(math.ceil(math.log(3.0) / math.log1p(ep)))
    memo = {}

    def yes(i):
        if i not in memo:
            memo[i] = approx_decide(inst, d_h * (1 + ep) ** i, ep)
        return memo[i]

    hi = imax
    while not yes(hi):
        # d_F <= 3*d_h guarantees a YES on the grid; extend defensively
        hi += 1
        if hi > imax + 60:
            raise RuntimeError("decision grid exhausted")
    lo = -1  # below the Hausdorff bound every answer is NO
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if yes(mid):
            hi = mid
        else:
            lo = mid
    out = (1 + ep) * d_h * (1 + ep) ** hi
    out = max(out, d_h)
    return min(out, 3 * d_h * (1 + eps))
