"""Exact line-backend computations involving piecewise-linear cut maps.

Everything here rests on one mechanism: the quantity of interest (a cutwise
Hausdorff value as a function of alpha, or a lifted graph distance as a
function of the base point x) is piecewise linear, every linear piece it can
take is drawn from an explicitly constructible finite set of lines, and the
true value is cheap to evaluate exactly at any single point.  Candidate
points are then piece boundaries plus all pairwise crossings of the line
set; evaluating exactly on the candidates gives exact suprema, and exact
integrals via the antiderivative of (q + m*alpha)^p between consecutive
candidates.

Used for: d_p / d_infty when a LinearFuzzyNumber is involved, the shift
modulus of linear fuzzy numbers, and endograph/sendograph metrics whenever a
linear fuzzy number is involved.  Step-step pairs take the compiled-kernel
path instead; on random step pairs both paths are asserted equal in the test
suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fuzzy import LinearFuzzyNumber, StepFuzzySet
from .ground import DomainError
from .kernels import numpy_impl

_EPS = 1e-12


def _dedupe_lines(lines: list[tuple[float, float]]) -> np.ndarray:
    arr = np.array(lines, dtype=float).reshape(-1, 2)
    return np.unique(np.round(arr, 9), axis=0)


def _pair_crossings(lines: np.ndarray, lo: float, hi: float) -> np.ndarray:
    """x-values in [lo, hi] where two of the lines meet."""
    m = lines[:, 0]
    q = lines[:, 1]
    dm = m[:, None] - m[None, :]
    dq = q[None, :] - q[:, None]
    iu = np.triu_indices(len(lines), k=1)
    dm = dm[iu]
    dq = dq[iu]
    ok = np.abs(dm) > _EPS
    xs = dq[ok] / dm[ok]
    xs = xs[(xs > lo + _EPS) & (xs < hi - _EPS)]
    return xs


# ---------------------------------------------------------------------------
# cutwise profiles: H(cut_u(alpha), cut_v(alpha - shift)) piecewise linear


def _breaks_of(w, shift: float) -> np.ndarray:
    if isinstance(w, LinearFuzzyNumber):
        return w.gammas + shift
    return np.concatenate([[shift], w.gammas + shift])


def _side_on_piece(w, al: float, ar: float, shift: float):
    """Line coefficients (mS, qS, mE, qE arrays) of the interval starts/ends
    of cut(w, alpha - shift) for alpha in (al, ar]."""
    x = ar - shift
    if isinstance(w, StepFuzzySet):
        iv = w.cut(min(max(x, 0.0), 1.0)).ivals
        z = np.zeros(len(iv))
        return z, iv[:, 0].copy(), z, iv[:, 1].copy()
    g = w.gammas
    i = max(int(np.searchsorted(g, x, side="left")), 1)
    i = min(i, len(g) - 1)
    dg = g[i] - g[i - 1]
    am = (w.lo[i] - w.lo[i - 1]) / dg
    bm = (w.hi[i] - w.hi[i - 1]) / dg
    # value at alpha: lo[i-1] + am * ((alpha - shift) - g[i-1])
    qa = w.lo[i - 1] - am * (g[i - 1] + shift)
    qb = w.hi[i - 1] - bm * (g[i - 1] + shift)
    return np.array([am]), np.array([qa]), np.array([bm]), np.array([qb])


def _piece_line_set(su, sv) -> np.ndarray:
    mS_u, qS_u, mE_u, qE_u = su
    mS_v, qS_v, mE_v, qE_v = sv
    mu = np.concatenate([mS_u, mE_u])
    qu = np.concatenate([qS_u, qE_u])
    mv = np.concatenate([mS_v, mE_v])
    qv = np.concatenate([qS_v, qE_v])
    lines = [(0.0, 0.0)]
    dm = mu[:, None] - mv[None, :]
    dq = qu[:, None] - qv[None, :]
    for a, b in zip(dm.ravel(), dq.ravel()):
        lines.append((a, b))
        lines.append((-a, -b))
    for mS, qS, mE, qE in (su, sv):
        for t in range(len(mS) - 1):  # half-gap levels between adjacent intervals
            lines.append((0.5 * (mS[t + 1] - mE[t]), 0.5 * (qS[t + 1] - qE[t])))
    return _dedupe_lines(lines)


def _eval_H(alpha: float, su, sv) -> float:
    mS_u, qS_u, mE_u, qE_u = su
    mS_v, qS_v, mE_v, qE_v = sv
    sa = mS_u * alpha + qS_u
    ea = mE_u * alpha + qE_u
    sb = mS_v * alpha + qS_v
    eb = mE_v * alpha + qE_v
    return float(numpy_impl.hausdorff_line(sa, ea, sb, eb))


def cut_profile(u, v, lo: float = 0.0, hi: float = 1.0, shift_v: float = 0.0):
    """Sampled-at-kinks exact profile of alpha -> H(cut_u(a), cut_v(a - shift)).

    Returns a list of (a1, a2, H1, H2) with H linear on each [a1, a2] and the
    pieces covering (lo, hi].
    """
    if hi <= lo:
        return []
    br = np.unique(np.concatenate([_breaks_of(u, 0.0), _breaks_of(v, shift_v)]))
    br = np.concatenate([[lo], br[(br > lo + _EPS) & (br < hi - _EPS)], [hi]])
    out = []
    for al, ar in zip(br[:-1], br[1:]):
        if ar - al <= _EPS:
            continue
        su = _side_on_piece(u, al, ar, 0.0)
        sv = _side_on_piece(v, al, ar, shift_v)
        lines = _piece_line_set(su, sv)
        xs = np.concatenate([[al, ar], _pair_crossings(lines, al, ar)])
        xs = np.unique(xs)
        vals = [_eval_H(float(a), su, sv) for a in xs]
        for t in range(len(xs) - 1):
            out.append((float(xs[t]), float(xs[t + 1]), vals[t], vals[t + 1]))
    return out


def _piece_pow_integral(a1, a2, H1, H2, p) -> float:
    d = a2 - a1
    dH = H2 - H1
    if abs(dH) <= 1e-5 * (1.0 + abs(H1) + abs(H2)):
        return d * (0.5 * (H1 + H2)) ** p
    return d * (H2 ** (p + 1) - H1 ** (p + 1)) / (dH * (p + 1))


def dp_profile(u, v, p: float, lo: float = 0.0, hi: float = 1.0, shift_v: float = 0.0) -> float:
    """Exact (integral of H^p over (lo, hi])^(1/p)."""
    pieces = cut_profile(u, v, lo, hi, shift_v)
    total = float(np.sum([_piece_pow_integral(*pc, p) for pc in pieces])) if pieces else 0.0
    total = max(total, 0.0)
    return total ** (1.0 / p)


def dinf_profile(u, v) -> float:
    pieces = cut_profile(u, v)
    best = 0.0
    for _, _, H1, H2 in pieces:
        best = max(best, H1, H2)
    return best


# ---------------------------------------------------------------------------
# graph metrics: bands, source segments, exact directed sup


@dataclass(frozen=True)
class Band:
    """Trapezoid {(y, beta): beta in [bl, bh], L(beta) <= y <= R(beta)} with
    linearly interpolated walls; a step cylinder is the lm = rm = 0 case."""

    bl: float
    bh: float
    Ll: float
    Lh: float
    Rl: float
    Rh: float

    @property
    def lm(self) -> float:
        d = self.bh - self.bl
        return (self.Lh - self.Ll) / d if d > 0 else 0.0

    @property
    def rm(self) -> float:
        d = self.bh - self.bl
        return (self.Rh - self.Rl) / d if d > 0 else 0.0


def graph_bands(w) -> list[Band]:
    if isinstance(w, StepFuzzySet):
        out = []
        for g, c in zip(w.gammas, w.cuts):
            for s, e in c.ivals:
                out.append(Band(0.0, float(g), float(s), float(s), float(e), float(e)))
        return out
    if isinstance(w, LinearFuzzyNumber):
        g, a, b = w.gammas, w.lo, w.hi
        return [
            Band(float(g[i - 1]), float(g[i]), float(a[i - 1]), float(a[i]),
                 float(b[i - 1]), float(b[i]))
            for i in range(1, len(g))
        ]
    raise DomainError(f"no graph bands for {type(w).__name__}")


def source_segments(w) -> list[tuple[float, float, float, float]]:
    """Segments (xs, xe, ts, te) of the membership function's upper boundary;
    the directed sup over the whole graph is the sup over these."""
    if isinstance(w, StepFuzzySet):
        out = []
        for g, c in zip(w.gammas, w.cuts):
            for s, e in c.ivals:
                out.append((float(s), float(e), float(g), float(g)))
        return out
    if isinstance(w, LinearFuzzyNumber):
        g, a, b = w.gammas, w.lo, w.hi
        out = []
        for i in range(1, len(g)):
            if a[i] > a[i - 1]:
                out.append((float(a[i - 1]), float(a[i]), float(g[i - 1]), float(g[i])))
            if b[i] < b[i - 1]:
                out.append((float(b[i]), float(b[i - 1]), float(g[i]), float(g[i - 1])))
        out.append((float(a[-1]), float(b[-1]), 1.0, 1.0))
        return out
    raise DomainError(f"no source segments for {type(w).__name__}")


def _band_dist(xs: np.ndarray, ts: np.ndarray, band: Band, use_max: bool) -> np.ndarray:
    """Exact lifted distance from points (xs, ts) to the band."""
    bl, bh = band.bl, band.bh
    lm, rm = band.lm, band.rm
    Ll, Rl = band.Ll, band.Rl
    cands = [np.full_like(xs, bl), np.full_like(xs, bh), np.clip(ts, bl, bh)]
    if lm != 0.0:
        cands.append(np.clip(bl + (xs - Ll) / lm, bl, bh))
    if rm != 0.0:
        cands.append(np.clip(bl + (xs - Rl) / rm, bl, bh))
    if use_max:
        for den, num in (
            (1.0 + lm, ts + xs - Ll + lm * bl),
            (lm - 1.0, xs - ts - Ll + lm * bl),
            (1.0 - rm, ts - xs + Rl - rm * bl),
            (1.0 + rm, xs + ts - Rl + rm * bl),
        ):
            if abs(den) > _EPS:
                cands.append(np.clip(num / den, bl, bh))
    best = np.full_like(xs, np.inf)
    for beta in cands:
        L = Ll + lm * (beta - bl)
        R = Rl + rm * (beta - bl)
        h = np.maximum(0.0, np.maximum(L - xs, xs - R))
        v = np.abs(ts - beta)
        q = np.maximum(h, v) if use_max else h + v
        np.minimum(best, q, out=best)
    return best


def graph_point_dist(xs, ts, bands: list[Band], use_max: bool, slab: bool) -> np.ndarray:
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    best = ts.copy() if slab else np.full_like(xs, np.inf)
    for band in bands:
        np.minimum(best, _band_dist(xs, ts, band, use_max), out=best)
    return best


def _segment_lines(seg, band: Band, use_max: bool) -> list[tuple[float, float]]:
    """Every line (in x) that the per-band branch functions can follow on the
    segment, where t(x) = mu + lam*x."""
    xs, xe, ts, te = seg
    lam = (te - ts) / (xe - xs) if xe > xs else 0.0
    mu = ts - lam * xs
    bl, bh = band.bl, band.bh
    lm, rm = band.lm, band.rm
    Ll, Rl = band.Ll, band.Rl
    betas = [(0.0, bl), (0.0, bh), (lam, mu)]
    if lm != 0.0:
        betas.append((1.0 / lm, bl - Ll / lm))
    if rm != 0.0:
        betas.append((1.0 / rm, bl - Rl / rm))
    if use_max:
        for den, nm, nq in (
            (1.0 + lm, lam + 1.0, mu - Ll + lm * bl),
            (lm - 1.0, 1.0 - lam, -mu - Ll + lm * bl),
            (1.0 - rm, lam - 1.0, mu + Rl - rm * bl),
            (1.0 + rm, lam + 1.0, mu - Rl + rm * bl),
        ):
            if abs(den) > _EPS:
                betas.append((nm / den, nq / den))
    lines = []
    for bm, bq in betas:
        Lm = lm * bm
        Lq = Ll + lm * (bq - bl)
        Rm = rm * bm
        Rq = Rl + rm * (bq - bl)
        hs = [(0.0, 0.0), (Lm - 1.0, Lq), (1.0 - Rm, -Rq)]
        vs = [(lam - bm, mu - bq), (bm - lam, bq - mu)]
        if use_max:
            lines.extend(hs)
            lines.extend(vs)
        else:
            for hm, hq in hs:
                for vm, vq in vs:
                    lines.append((hm + vm, hq + vq))
    return lines


def graph_directed_exact(src, tgt, use_max: bool, slab: bool) -> float:
    """Exact directed graph pre-distance sup_{z in G_src} dist(z, G_tgt)."""
    bands = graph_bands(tgt)
    best = 0.0
    for seg in source_segments(src):
        xs, xe, ts, te = seg
        if xe - xs <= _EPS:
            val = graph_point_dist([xs], [max(ts, te)], bands, use_max, slab)
            best = max(best, float(val[0]))
            continue
        lines = []
        for band in bands:
            lines.extend(_segment_lines(seg, band, use_max))
        lam = (te - ts) / (xe - xs)
        mu = ts - lam * xs
        if slab:
            lines.append((lam, mu))
        lines.append((0.0, 0.0))
        arr = _dedupe_lines(lines)
        cand = np.concatenate([[xs, xe], _pair_crossings(arr, xs, xe)])
        cand = np.unique(cand)
        tv = mu + lam * cand
        vals = graph_point_dist(cand, tv, bands, use_max, slab)
        best = max(best, float(vals.max()))
    return best


def graph_hausdorff_exact(u, v, use_max: bool, slab: bool) -> float:
    return max(
        graph_directed_exact(u, v, use_max, slab),
        graph_directed_exact(v, u, use_max, slab),
    )
