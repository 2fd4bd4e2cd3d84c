"""Independent brute-force oracles.

These recompute library quantities by direct discretization or enumeration,
deliberately avoiding the exact candidate machinery: grid sups are true
lower bounds (every sample is a genuine point of the source object), Riemann
sums converge at the O(1/N) rate, and the product brute force evaluates the
double sup over structured grids that provably contain all extremizers.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from . import kernels
from .fuzzy import LinearFuzzyNumber, StepFuzzySet
from .ground import GroundSet
from .hausdorff import hausdorff
from .kernels import numpy_impl


# ---------------------------------------------------------------------------
# Hausdorff grid oracle (line)


def _grid_pts(ivals: np.ndarray, step: float) -> np.ndarray:
    parts = []
    for a, b in ivals:
        pts = np.arange(a, b + step, step)
        parts.append(np.minimum(pts, b))
        parts.append([b])
    return np.unique(np.concatenate(parts))


def grid_hausdorff_line(A: GroundSet, B: GroundSet, step: float = 1e-4) -> float:
    """Brute-force H on sample grids; a lower bound within step/2 of the truth."""
    pa = _grid_pts(A.ivals, step)
    pb = _grid_pts(B.ivals, step)
    da = float(numpy_impl.dist_union_vec(pa, B.ivals[:, 0], B.ivals[:, 1]).max())
    db = float(numpy_impl.dist_union_vec(pb, A.ivals[:, 0], A.ivals[:, 1]).max())
    return max(da, db)


# ---------------------------------------------------------------------------
# Riemann oracle for d_p


def riemann_dp(u, v, p: float, N: int) -> float:
    """Midpoint-rule approximation of d_p with N alpha samples."""
    if isinstance(u, StepFuzzySet) and isinstance(v, StepFuzzySet) and u.backend == "line":
        gu, su, eu, offu = u.line_flat()
        gv, sv, ev, offv = v.line_flat()
        mean = float(
            kernels.riemann_pow_line(gu, su, eu, offu, gv, sv, ev, offv, N, float(p))
        )
        return mean ** (1.0 / p)
    acc = 0.0
    for t in range(N):
        a = (t + 0.5) / N
        acc += hausdorff(u.cut(a), v.cut(a)) ** p
    return (acc / N) ** (1.0 / p)


# ---------------------------------------------------------------------------
# graph-metric grid oracle


def _linear_outer_flat(v: LinearFuzzyNumber, n: int):
    """Outer step discretization of a linear fuzzy number's graph: level j/n
    carries the (larger) cut at (j-1)/n, so the graph contains the true one."""
    g = np.arange(1, n + 1) / n
    lv = np.arange(0, n) / n
    a = np.interp(lv, v.gammas, v.lo)
    b = np.interp(lv, v.gammas, v.hi)
    off = np.arange(n + 1, dtype=np.int64)
    return g, a, np.maximum(a, b), off


def _membership_vec(v: LinearFuzzyNumber, xs: np.ndarray) -> np.ndarray:
    def upper_inv(vals, gams, xq):
        # sup{alpha: vals(alpha) <= xq} for nondecreasing piecewise linear vals
        j = np.searchsorted(vals, xq, side="right")
        res = np.zeros_like(xq)
        res[j == len(vals)] = 1.0
        mask = (j > 0) & (j < len(vals))
        k = j[mask]
        frac = (xq[mask] - vals[k - 1]) / (vals[k] - vals[k - 1])
        res[mask] = gams[k - 1] + frac * (gams[k] - gams[k - 1])
        return res

    A = upper_inv(v.lo, v.gammas, xs)
    B = upper_inv(-v.hi, v.gammas, -xs)  # sup{a: hi(a) >= x} via the negated side
    inside = (xs >= v.lo[0] - 1e-12) & (xs <= v.hi[0] + 1e-12)
    return np.where(inside, np.minimum(A, B), 0.0)


def _psi_samples(xs, ts, tflat, use_max: bool, slab: bool) -> np.ndarray:
    gam, sv, ev, off = tflat
    best = ts.copy() if slab else np.full(len(xs), np.inf)
    kv = len(gam)
    if kv > 64 and off[-1] == kv:
        # one interval per level: process level blocks as matrices
        blk = max(1, int(2e6 / max(len(xs), 1)))
        for c0 in range(0, kv, blk):
            c1 = min(c0 + blk, kv)
            s = sv[c0:c1][None, :]
            e = ev[c0:c1][None, :]
            x = xs[:, None]
            d = np.maximum(0.0, np.maximum(s - x, x - e))
            c = np.maximum(0.0, ts[:, None] - gam[c0:c1][None, :])
            phi = np.maximum(d, c) if use_max else d + c
            np.minimum(best, phi.min(axis=1), out=best)
        return best
    for i in range(kv):
        d = numpy_impl.dist_union_vec(xs, sv[off[i] : off[i + 1]], ev[off[i] : off[i + 1]])
        c = np.maximum(0.0, ts - gam[i])
        phi = np.maximum(d, c) if use_max else d + c
        np.minimum(best, phi, out=best)
    return best


def graph_directed_lower(
    u, v, use_max: bool, slab: bool, step: float = 1e-4, tlevels: int = 5000
) -> float:
    """Grid-sampled lower bound for the directed graph pre-distance.

    Source samples are exact graph points.  Linear targets are replaced by
    their outer step discretization, which can only shrink distances, so the
    result is a strict lower bound for the true value.
    """
    if isinstance(v, StepFuzzySet):
        tflat = v.line_flat()
    else:
        tflat = _linear_outer_flat(v, tlevels)
    if isinstance(u, StepFuzzySet):
        if isinstance(v, StepFuzzySet):
            gu, su, eu, offu = u.line_flat()
            return float(
                kernels.graph_grid_directed_line(
                    gu, su, eu, offu, *tflat, use_max, slab, step
                )
            )
        xs_parts, ts_parts = [], []
        for g, c in zip(u.gammas, u.cuts):
            for a, b in c.ivals:
                pts = _grid_pts(np.array([[a, b]]), step)
                xs_parts.append(pts)
                ts_parts.append(np.full(len(pts), g))
        xs = np.concatenate(xs_parts)
        ts = np.concatenate(ts_parts)
    else:
        xs = _grid_pts(np.array([[u.lo[0], u.hi[0]]]), step)
        ts = _membership_vec(u, xs)
    return float(_psi_samples(xs, ts, tflat, use_max, slab).max())


def graph_grid_oracle(u, v, use_max: bool, slab: bool, step: float = 1e-4) -> float:
    return max(
        graph_directed_lower(u, v, use_max, slab, step),
        graph_directed_lower(v, u, use_max, slab, step),
    )


# ---------------------------------------------------------------------------
# product brute force


def _proj_line(x: float, ivals: np.ndarray) -> float:
    best, bp = math.inf, x
    for a, b in ivals:
        y = min(max(x, a), b)
        if abs(y - x) < best:
            best, bp = abs(y - x), y
    return bp


def _comp_grids(A: GroundSet, B: GroundSet):
    """Grids containing every directed-sup extremizer and every nearest point."""
    if A.backend != "line":
        if A.backend == "euclidean":
            return [tuple(p) for p in A.points_arr], [tuple(p) for p in B.points_arr]
        return [int(i) for i in A.indices], [int(i) for i in B.indices]

    def crit(S: GroundSet, other: GroundSet):
        pts = list(S.ivals.ravel())
        for t in range(len(other.ivals) - 1):
            mid = 0.5 * (other.ivals[t, 1] + other.ivals[t + 1, 0])
            if numpy_impl._dist_union(mid, S.ivals[:, 0], S.ivals[:, 1]) == 0.0:
                pts.append(mid)
        return pts

    ga = crit(A, B)
    gb = crit(B, A)
    ga_ext = ga + [_proj_line(x, A.ivals) for x in gb]
    gb_ext = gb + [_proj_line(x, B.ivals) for x in ga]
    return sorted(set(ga_ext)), sorted(set(gb_ext))


def _comp_dist_matrix(backend, pa, pb, space) -> np.ndarray:
    if backend == "line":
        xa = np.array(pa)[:, None]
        xb = np.array(pb)[None, :]
        return np.abs(xa - xb)
    if backend == "euclidean":
        xa = np.array(pa)[:, None, :]
        xb = np.array(pb)[None, :, :]
        return np.sqrt(((xa - xb) ** 2).sum(axis=2))
    return space.D[np.ix_(np.array(pa, dtype=int), np.array(pb, dtype=int))]


def brute_product_hausdorff(As: Sequence[GroundSet], Bs: Sequence[GroundSet]) -> float:
    """Double sup over structured product grids under the sup metric."""
    mats = []
    for A, B in zip(As, Bs):
        pa, pb = _comp_grids(A, B)
        mats.append(_comp_dist_matrix(A.backend, pa, pb, A.space))
    nA = [m.shape[0] for m in mats]
    nB = [m.shape[1] for m in mats]
    k = len(mats)
    full = np.zeros((int(np.prod(nA)), int(np.prod(nB))))
    for j, m in enumerate(mats):
        shape_a = [1] * k
        shape_a[j] = nA[j]
        shape_b = [1] * k
        shape_b[j] = nB[j]
        mj = m.reshape(shape_a + shape_b)
        tiled = np.broadcast_to(mj, nA + nB).reshape(full.shape)
        np.maximum(full, tiled, out=full)
    h1 = full.min(axis=1).max()
    h2 = full.min(axis=0).max()
    return float(max(h1, h2))
