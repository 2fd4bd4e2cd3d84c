"""Scalar-loop kernels compiled with numba.

Data layout shared with the numpy twins: a step fuzzy set on the line is
(gam, ss, ee, off) where gam[k] are the level breakpoints (ending at 1.0),
off[k+1] are interval offsets per level, and ss/ee hold all interval
endpoints flattened level by level.
"""

import numba
import numpy as np

NJIT = {"nopython": True, "cache": True, "fastmath": False}


@numba.jit(**NJIT)
def _dist_union(x, ss, ee):
    n = len(ss)
    j = np.searchsorted(ss, x)
    best = np.inf
    if j < n:
        gap = ss[j] - x
        if gap <= 0.0:
            return 0.0
        best = gap
    if j > 0:
        if x <= ee[j - 1]:
            return 0.0
        left = x - ee[j - 1]
        if left < best:
            best = left
    return best


@numba.jit(**NJIT)
def hstar_line(sa, ea, sb, eb):
    """sup_{x in A} d(x, B) for canonical interval unions A, B."""
    best = 0.0
    for i in range(len(sa)):
        d = _dist_union(sa[i], sb, eb)
        if d > best:
            best = d
        d = _dist_union(ea[i], sb, eb)
        if d > best:
            best = d
    for t in range(len(sb) - 1):
        mid = 0.5 * (eb[t] + sb[t + 1])
        if _dist_union(mid, sa, ea) == 0.0:
            d = _dist_union(mid, sb, eb)
            if d > best:
                best = d
    return best


@numba.jit(**NJIT)
def hausdorff_line(sa, ea, sb, eb):
    h1 = hstar_line(sa, ea, sb, eb)
    h2 = hstar_line(sb, eb, sa, ea)
    return h1 if h1 >= h2 else h2


@numba.jit(**NJIT)
def riemann_pow_line(gam_u, su, eu, offu, gam_v, sv, ev, offv, n, p):
    """Midpoint-rule average of H(cut_u(a), cut_v(a))^p over n samples."""
    acc = 0.0
    for t in range(n):
        a = (t + 0.5) / n
        iu = np.searchsorted(gam_u, a)
        iv = np.searchsorted(gam_v, a)
        h = hausdorff_line(
            su[offu[iu] : offu[iu + 1]],
            eu[offu[iu] : offu[iu + 1]],
            sv[offv[iv] : offv[iv + 1]],
            ev[offv[iv] : offv[iv + 1]],
        )
        acc += h**p
    return acc / n


@numba.jit(**NJIT)
def _psi_step(x, g, gam_v, sv, ev, offv, cvals, use_max, slab):
    """min over target cylinders of the lifted distance at (x, g)."""
    best = np.inf
    if slab:
        best = g
    for i in range(len(gam_v)):
        d = _dist_union(x, sv[offv[i] : offv[i + 1]], ev[offv[i] : offv[i + 1]])
        c = cvals[i]
        if use_max:
            v = d if d >= c else c
        else:
            v = d + c
        if v < best:
            best = v
    return best


@numba.jit(**NJIT)
def graph_directed_step_line(gam_u, su, eu, offu, gam_v, sv, ev, offv, use_max, slab):
    """Directed graph pre-distance sup_{z in G_u} dist(z, G_v), exact.

    The sup runs over the top fiber of each source cylinder; per level the
    inner function is piecewise linear, so its maximum sits on the candidate
    set of domain endpoints, target endpoints, target gap midpoints and
    pairwise crossings of the constituent +-1-slope or flat pieces.
    """
    kv = len(gam_v)
    nv = offv[kv]
    cvals = np.empty(kv)
    cflat = np.empty(nv)
    best = 0.0
    for j in range(len(gam_u)):
        g = gam_u[j]
        for i in range(kv):
            c = g - gam_v[i]
            if c < 0.0:
                c = 0.0
            cvals[i] = c
            for t in range(offv[i], offv[i + 1]):
                cflat[t] = c
        a0 = offu[j]
        a1 = offu[j + 1]
        ds = su[a0:a1]
        de = eu[a0:a1]
        # flat levels crossed by the +-1 slope pieces
        nk = kv + 1 if slab else kv
        # candidate bound: domain endpoints + target endpoints + gap mids
        # + asc x desc + (asc + desc) x flats
        cap = 2 * (a1 - a0) + 2 * nv + nv + nv * nv + 2 * nv * nk
        cand = np.empty(cap)
        m = 0
        for t in range(a1 - a0):
            cand[m] = ds[t]
            m += 1
            cand[m] = de[t]
            m += 1
        for t in range(nv):
            cand[m] = sv[t]
            m += 1
            cand[m] = ev[t]
            m += 1
        for i in range(kv):
            for t in range(offv[i], offv[i + 1] - 1):
                cand[m] = 0.5 * (ev[t] + sv[t + 1])
                m += 1
        for t in range(nv):  # descending pieces leave sv[t]
            for t2 in range(nv):  # ascending pieces leave ev[t2]
                if use_max:
                    cand[m] = 0.5 * (sv[t] + ev[t2])
                else:
                    cand[m] = 0.5 * (sv[t] + ev[t2] + cflat[t] - cflat[t2])
                m += 1
        for i in range(nk):
            K = g if i == kv else cvals[i]
            for t in range(nv):
                if use_max:
                    cand[m] = ev[t] + K
                    m += 1
                    cand[m] = sv[t] - K
                    m += 1
                else:
                    cand[m] = ev[t] + K - cflat[t]
                    m += 1
                    cand[m] = sv[t] - K + cflat[t]
                    m += 1
        for t in range(m):
            x = cand[t]
            if _dist_union(x, ds, de) <= 1e-12:
                v = _psi_step(x, g, gam_v, sv, ev, offv, cvals, use_max, slab)
                if v > best:
                    best = v
    return best


@numba.jit(**NJIT)
def graph_grid_directed_line(
    gam_u, su, eu, offu, gam_v, sv, ev, offv, use_max, slab, step
):
    """Grid-sampled lower bound for the directed graph pre-distance."""
    kv = len(gam_v)
    cvals = np.empty(kv)
    best = 0.0
    for j in range(len(gam_u)):
        g = gam_u[j]
        for i in range(kv):
            c = g - gam_v[i]
            if c < 0.0:
                c = 0.0
            cvals[i] = c
        for t in range(offu[j], offu[j + 1]):
            a = su[t]
            b = eu[t]
            npts = int((b - a) / step) + 1
            for q in range(npts + 1):
                x = a + q * step
                if x > b:
                    x = b
                v = _psi_step(x, g, gam_v, sv, ev, offv, cvals, use_max, slab)
                if v > best:
                    best = v
    return best
