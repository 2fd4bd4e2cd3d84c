"""Pure-numpy twins of the numba kernels (same signatures, same layout).

Selected at import time by the env flag FUZZMETRICS_NO_NUMBA; also used
directly by the kernel benchmark.
"""

import numpy as np


def dist_union_vec(xs, ss, ee):
    """Vectorized distance from each x in xs to the interval union (ss, ee)."""
    xs = np.asarray(xs, dtype=float)
    j = np.searchsorted(ss, xs)
    n = len(ss)
    right = np.where(j < n, ss[np.minimum(j, n - 1)] - xs, np.inf)
    has_left = j > 0
    prev_end = ee[np.maximum(j - 1, 0)]
    inside = (right <= 0.0) | (has_left & (xs <= prev_end))
    left = np.where(has_left, xs - prev_end, np.inf)
    out = np.where(inside, 0.0, np.minimum(np.maximum(right, 0.0), left))
    return out


def _dist_union(x, ss, ee):
    return float(dist_union_vec(np.array([x]), ss, ee)[0])


def hstar_line(sa, ea, sb, eb):
    cands = [sa, ea]
    if len(sb) > 1:
        mids = 0.5 * (eb[:-1] + sb[1:])
        cands.append(mids[dist_union_vec(mids, sa, ea) == 0.0])
    xs = np.concatenate(cands)
    return float(dist_union_vec(xs, sb, eb).max())


def hausdorff_line(sa, ea, sb, eb):
    return max(hstar_line(sa, ea, sb, eb), hstar_line(sb, eb, sa, ea))


def riemann_pow_line(gam_u, su, eu, offu, gam_v, sv, ev, offv, n, p):
    alphas = (np.arange(n) + 0.5) / n
    iu = np.searchsorted(gam_u, alphas)
    iv = np.searchsorted(gam_v, alphas)
    acc = 0.0
    # group equal (iu, iv) segments; the merged grid has few distinct pairs
    pair = iu * (len(gam_v) + 1) + iv
    codes, counts = np.unique(pair, return_counts=True)
    for code, cnt in zip(codes, counts):
        i = int(code) // (len(gam_v) + 1)
        j = int(code) % (len(gam_v) + 1)
        h = hausdorff_line(
            su[offu[i] : offu[i + 1]],
            eu[offu[i] : offu[i + 1]],
            sv[offv[j] : offv[j + 1]],
            ev[offv[j] : offv[j + 1]],
        )
        acc += (h**p) * cnt
    return acc / n


def _psi_vec(xs, g, gam_v, sv, ev, offv, cvals, use_max, slab):
    """Vectorized min over target cylinders of the lifted distance at (x, g)."""
    best = np.full(len(xs), g if slab else np.inf)
    for i in range(len(gam_v)):
        d = dist_union_vec(xs, sv[offv[i] : offv[i + 1]], ev[offv[i] : offv[i + 1]])
        v = np.maximum(d, cvals[i]) if use_max else d + cvals[i]
        np.minimum(best, v, out=best)
    return best


def graph_directed_step_line(gam_u, su, eu, offu, gam_v, sv, ev, offv, use_max, slab):
    kv = len(gam_v)
    best = 0.0
    for j in range(len(gam_u)):
        g = gam_u[j]
        cvals = np.maximum(g - gam_v, 0.0)
        cflat = np.repeat(cvals, np.diff(offv))
        ds = su[offu[j] : offu[j + 1]]
        de = eu[offu[j] : offu[j + 1]]
        flats = np.concatenate([cvals, [g]]) if slab else cvals
        cands = [ds, de, sv, ev]
        for i in range(kv):
            if offv[i + 1] - offv[i] > 1:
                cands.append(0.5 * (ev[offv[i] : offv[i + 1] - 1] + sv[offv[i] + 1 : offv[i + 1]]))
        if use_max:
            cands.append((sv[:, None] + ev[None, :]).ravel() * 0.5)
            cands.append((ev[:, None] + flats[None, :]).ravel())
            cands.append((sv[:, None] - flats[None, :]).ravel())
        else:
            cands.append(
                (0.5 * (sv[:, None] + ev[None, :] + cflat[:, None] - cflat[None, :])).ravel()
            )
            cands.append((ev[:, None] - cflat[:, None] + flats[None, :]).ravel())
            cands.append((sv[:, None] + cflat[:, None] - flats[None, :]).ravel())
        xs = np.concatenate(cands)
        xs = xs[dist_union_vec(xs, ds, de) <= 1e-12]
        if len(xs):
            v = _psi_vec(xs, g, gam_v, sv, ev, offv, cvals, use_max, slab).max()
            if v > best:
                best = float(v)
    return best


def graph_grid_directed_line(gam_u, su, eu, offu, gam_v, sv, ev, offv, use_max, slab, step):
    best = 0.0
    for j in range(len(gam_u)):
        g = gam_u[j]
        cvals = np.maximum(g - gam_v, 0.0)
        for t in range(offu[j], offu[j + 1]):
            a, b = su[t], eu[t]
            xs = np.arange(a, b + step, step)
            xs = np.minimum(xs, b)
            if len(xs) == 0 or xs[-1] < b:
                xs = np.append(xs, b)
            v = _psi_vec(xs, g, gam_v, sv, ev, offv, cvals, use_max, slab).max()
            if v > best:
                best = float(v)
    return best
