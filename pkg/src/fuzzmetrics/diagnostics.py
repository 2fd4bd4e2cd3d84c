"""Family-level diagnostics: p-mean moduli, equi-left-continuity, uniform
p-mean boundedness, support unions, greedy epsilon-nets, and convergence
reports, assembled into a consistency-checked compactness report.

Verdicts on finite member lists are exact; families flagged as sampled
probes of a parametric generator carry a "sampled" tag and their verdicts
are evidence, not proof.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from . import bands
from .config import tolerance
from .fuzzy import StepFuzzySet, singleton
from .ground import DomainError, GroundPoint, GroundSet, diameter, singleton_set, union
from .hausdorff import hausdorff, hausdorff_pre
from .metrics import Kind, d_p, h_end


# ---------------------------------------------------------------------------
# families


@dataclass
class Family:
    """Ordered list of fuzzy sets on one shared ground space."""

    members: list
    name: str = ""
    labels: list | None = None
    sampled: bool = False

    def __post_init__(self):
        if not self.members:
            raise DomainError("family must be nonempty")
        sp = self.members[0].space
        for i, m in enumerate(self.members):
            if m.space != sp:
                raise DomainError(f"member {i} lives in a different space")
        if self.labels is None:
            self.labels = [str(i) for i in range(len(self.members))]
        elif len(self.labels) != len(self.members):
            raise DomainError("labels must match members one to one")

    def __len__(self) -> int:
        return len(self.members)

    @property
    def space(self):
        return self.members[0].space

    @property
    def tag(self) -> str:
        return "sampled" if self.sampled else "exact"


# ---------------------------------------------------------------------------
# grids


def default_h_grid() -> np.ndarray:
    return 0.5 ** np.arange(1, 13)


def default_alpha_grid(n: int = 64, avoid=(), seed: int = 0) -> np.ndarray:
    """Jittered uniform samples in (0,1), pushed off the listed breakpoints."""
    rng = np.random.default_rng(seed)
    a = (np.arange(n) + 0.5) / n + rng.uniform(-0.3, 0.3, n) / n
    a = np.clip(a, 1e-6, 1.0 - 1e-6)
    bps = np.asarray(sorted(set(float(b) for b in avoid)))
    if len(bps):
        for _ in range(100):
            gap = np.abs(a[:, None] - bps[None, :]).min(axis=1)
            bad = gap < 1e-7
            if not bad.any():
                break
            a[bad] = np.clip(a[bad] + 1.3e-6, 1e-6, 1.0 - 1e-6)
    return a


def _breakpoints(w) -> list:
    if isinstance(w, StepFuzzySet):
        return [float(g) for g in w.gammas]
    return [float(g) for g in w.gammas if 0.0 < g < 1.0]


# ---------------------------------------------------------------------------
# moduli


def _window_integral_step(u, v, p: float, lo: float, hi: float, shift_v: float) -> float:
    """∫_lo^hi H([u]_α, [v]_{α-shift}) ^ p dα for step sets, exactly."""
    pts = np.concatenate([u.gammas, v.gammas + shift_v, [lo, hi]])
    pts = np.unique(pts)
    pts = pts[(pts >= lo - 1e-15) & (pts <= hi + 1e-15)]
    pts[0], pts[-1] = lo, hi
    acc = 0.0
    for a, b in zip(pts[:-1], pts[1:]):
        if b - a <= 1e-15:
            continue
        # the integrand is constant on the open segment; the midpoint cannot
        # round onto a breakpoint the way the endpoint minus the shift can
        m = 0.5 * (a + b)
        h = hausdorff(u.cut(m), v.cut(max(0.0, m - shift_v)))
        acc += (b - a) * h**p
    return acc


def _dp_window(u, v, p: float, lo: float, hi: float, shift_v: float = 0.0) -> float:
    """(∫_lo^hi H([u]_α, [v]_{α-shift}) ^ p dα)^{1/p}."""
    if hi - lo <= 1e-15:
        return 0.0
    if isinstance(u, StepFuzzySet) and isinstance(v, StepFuzzySet):
        return _window_integral_step(u, v, p, lo, hi, shift_v) ** (1.0 / p)
    return bands.dp_profile(u, v, p, lo, hi, shift_v)


def omega_p(u, h: float, p: float) -> float:
    """p-mean left-continuity modulus (∫_h^1 H([u]_α,[u]_{α-h})^p dα)^{1/p}."""
    if not 0.0 <= h <= 1.0:
        raise DomainError(f"shift h must lie in [0,1], got {h}")
    if h == 0.0 or h == 1.0:
        return 0.0
    return _dp_window(u, u, p, h, 1.0, h)


def dp_tail(u, anchor: GroundPoint, h1: float, p: float) -> float:
    """(∫_{h1}^1 H([u]_α, {anchor})^p dα)^{1/p}."""
    if not 0.0 <= h1 < 1.0:
        raise DomainError(f"tail start must lie in [0,1), got {h1}")
    return _dp_window(u, singleton(anchor), p, h1, 1.0, 0.0)


# ---------------------------------------------------------------------------
# equi-left-continuity


def equi_left_continuity(U: Family, p: float, eps: float, h_grid=None):
    """Largest grid delta with all moduli below eps on {h in grid: h < delta}.

    Returns (passed, delta, witness) where witness = (member index, h, omega)
    maximizes the modulus over the whole table.  delta = 0 means no grid
    threshold works; the verdict is exact for plain finite families.
    """
    if eps <= 0:
        raise DomainError(f"eps must be positive, got {eps}")
    hs = default_h_grid() if h_grid is None else np.asarray(sorted(h_grid, reverse=True), dtype=float)
    table = np.empty((len(U), len(hs)))
    for i, u in enumerate(U.members):
        for j, h in enumerate(hs):
            table[i, j] = omega_p(u, float(h), p)
    wi, wj = np.unravel_index(np.argmax(table), table.shape)
    witness = (int(wi), float(hs[wj]), float(table[wi, wj]))
    if table.max() < eps:
        # every tested shift already satisfies the bound
        return True, 1.0, witness
    delta = 0.0
    for j in range(len(hs) - 2, -1, -1):
        # candidate delta = hs[j]; relevant shifts are the strictly smaller ones
        if table[:, j + 1 :].max() < eps:
            delta = float(hs[j])
        else:
            break
    return delta > 0.0, delta, witness


# ---------------------------------------------------------------------------
# uniform boundedness


def uniform_p_mean_bounded(U: Family, p: float, anchor: GroundPoint):
    """M = max_u d_p(u, anchor^) plus the quantitative triangle chain report."""
    ahat = singleton(anchor)
    dists = [float(d_p(u, ahat, p)) for u in U.members]
    M = float(max(dists))
    pair_sup = 0.0
    n = len(U)
    for i in range(n):
        for j in range(i + 1, n):
            pair_sup = max(pair_sup, float(d_p(U.members[i], U.members[j], p)))
    tol = 1e-9
    u0 = U.members[0]
    L = max(float(d_p(u, u0, p)) for u in U.members)
    w = U.members[-1]
    Mw = max(float(d_p(u, w, p)) for u in U.members)
    probe_bound = L + float(d_p(u0, w, p))
    report = {
        "M": M,
        "per_member": dists,
        "pairwise_sup": pair_sup,
        "pairwise_le_2M": pair_sup <= 2.0 * M + tol,
        "probe_bound": probe_bound,
        "probe_value": Mw,
        "probe_ok": Mw <= probe_bound + tol,
    }
    return M, report


# ---------------------------------------------------------------------------
# support unions


def support_union(U: Family, alpha: float):
    """Union of member cuts at alpha with a boundedness verdict."""
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"support union needs alpha in (0,1], got {alpha}")
    S = U.members[0].cut(alpha)
    for u in U.members[1:]:
        S = union(S, u.cut(alpha))
    diam = diameter(S)
    report = {
        "alpha": alpha,
        "diameter": diam,
        "bounded": math.isfinite(diam),
        # on the line and in R^n closed bounded sets are totally bounded
        "totally_bounded": math.isfinite(diam),
        "tag": U.tag,
    }
    return S, report


# ---------------------------------------------------------------------------
# greedy nets


def greedy_epsilon_net(U: Family, eps: float, metric: str = "dp", p: float = 2.0) -> list:
    """First-fit greedy net: add a member iff it is farther than eps from the
    current net.  Every member ends within eps of the net by construction;
    a rescan asserts that soundness."""
    if eps <= 0:
        raise DomainError(f"eps must be positive, got {eps}")
    if metric == "dp":
        dist = lambda a, b: float(d_p(a, b, p))
    elif metric == "hend":
        dist = lambda a, b: float(h_end(a, b, Kind.SUM))
    else:
        raise DomainError(f"metric must be 'dp' or 'hend', got {metric!r}")
    net: list[int] = []
    for i, u in enumerate(U.members):
        if all(dist(u, U.members[j]) > eps for j in net):
            net.append(i)
    for i, u in enumerate(U.members):
        if min(dist(u, U.members[j]) for j in net) > eps + 1e-12:
            raise RuntimeError("greedy net lost soundness; this is a library bug")
    return net


# ---------------------------------------------------------------------------
# compactness report


@dataclass
class FamilyReport:
    family: str
    size: int
    p: float
    tag: str
    support: list = field(default_factory=list)
    moduli: list = field(default_factory=list)
    equi: dict = field(default_factory=dict)
    bound: dict = field(default_factory=dict)
    nets: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "size": self.size,
            "p": self.p,
            "tag": self.tag,
            "support": self.support,
            "moduli": self.moduli,
            "equi": self.equi,
            "bound": self.bound,
            "nets": self.nets,
            "checks": self.checks,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["table", "member", "h", "omega"])
        for row in self.moduli:
            w.writerow(["moduli", row["member"], row["h"], row["omega"]])
        w.writerow(["table", "eps", "size", "indices"])
        for row in self.nets:
            w.writerow(["nets", row["eps"], row["size"], " ".join(map(str, row["indices"]))])
        return buf.getvalue()


def _default_anchor(u) -> GroundPoint:
    top = u.cut(1.0)
    b = top.backend
    if b == "line":
        return GroundPoint(top.space, float(top.ivals[0, 0]))
    if b == "euclidean":
        return GroundPoint(top.space, tuple(top.points_arr[0]))
    if b == "matrix":
        return GroundPoint(top.space, int(top.indices[0]))
    return GroundPoint(top.space, tuple(_default_anchor_like(p) for p in top.parts))


def _default_anchor_like(S: GroundSet):
    b = S.backend
    if b == "line":
        return float(S.ivals[0, 0])
    if b == "euclidean":
        return tuple(S.points_arr[0])
    if b == "matrix":
        return int(S.indices[0])
    return tuple(_default_anchor_like(p) for p in S.parts)


def compactness_report(
    U: Family,
    p: float = 2.0,
    eps_list=None,
    alpha_grid=None,
    h_grid=None,
    modulus_eps: float = 0.01,
    anchor: GroundPoint | None = None,
) -> FamilyReport:
    """Assemble support, modulus, bound, and net evidence, then assert the
    implications tying them together as consistency checks."""
    eps_list = [0.5, 0.25, 0.1] if eps_list is None else list(eps_list)
    hs = default_h_grid() if h_grid is None else np.asarray(sorted(h_grid, reverse=True), dtype=float)
    if alpha_grid is None:
        avoid = sorted({b for u in U.members for b in _breakpoints(u)})
        alpha_grid = default_alpha_grid(avoid=avoid)
    alpha_grid = np.asarray(alpha_grid, dtype=float)
    if len(eps_list) == 0 or len(hs) == 0 or len(alpha_grid) == 0:
        raise DomainError("report grids must be nonempty")

    rep = FamilyReport(family=U.name, size=len(U), p=float(p), tag=U.tag)

    for a in alpha_grid:
        _, sup_rep = support_union(U, float(a))
        rep.support.append(sup_rep)
    bounded_all = all(r["bounded"] for r in rep.support)

    for i, u in enumerate(U.members):
        for h in hs:
            rep.moduli.append({"member": i, "h": float(h), "omega": omega_p(u, float(h), p)})

    ok, delta, witness = equi_left_continuity(U, p, modulus_eps, hs)
    rep.equi = {
        "pass": ok,
        "delta": delta,
        "eps": modulus_eps,
        "witness_member": witness[0],
        "witness_h": witness[1],
        "witness_value": witness[2],
        "tag": U.tag,
    }

    if anchor is None:
        anchor = _default_anchor(U.members[0])
    M, bound_rep = uniform_p_mean_bounded(U, p, anchor)
    rep.bound = bound_rep

    for eps in eps_list:
        net = greedy_epsilon_net(U, eps, metric="dp", p=p)
        rep.nets.append({"eps": eps, "size": len(net), "indices": net})

    # consistency checks: the implications must hold on the computed evidence
    tol = 1e-9
    pmu_ok = (not math.isfinite(M)) or bounded_all
    h1 = float(hs[0])
    S1, _ = support_union(U, h1)
    L = hausdorff_pre(S1, singleton_set(anchor))
    pbe_budget = L * (1.0 - h1) ** (1.0 / p)
    pbe_tails = [dp_tail(u, anchor, h1, p) for u in U.members]
    pbe_ok = all(t <= pbe_budget + tol for t in pbe_tails)
    n = len(U)
    growth = []
    for eps in eps_list:
        sizes = []
        for cut_n in sorted({max(1, n // 2), max(1, 3 * n // 4), n}):
            pre = Family(U.members[:cut_n], name=U.name, labels=U.labels[:cut_n], sampled=U.sampled)
            sizes.append(len(greedy_epsilon_net(pre, eps, metric="dp", p=p)))
        growth.append(sizes)
    strictly_growing = any(
        all(s2 > s1 for s1, s2 in zip(sz[:-1], sz[1:])) and len(sz) >= 3 for sz in growth
    )
    tcns_ok = not (rep.equi["pass"] and bounded_all and strictly_growing)
    rep.checks = {
        "bounded_all": bounded_all,
        "pmu_ok": pmu_ok,
        "pbe_h1": h1,
        "pbe_L": L,
        "pbe_budget": pbe_budget,
        "pbe_ok": pbe_ok,
        "net_growth": growth,
        "tcns_ok": tcns_ok,
        "consistent": pmu_ok and pbe_ok and tcns_ok,
    }
    return rep


# ---------------------------------------------------------------------------
# telescoping and convergence


def shift_subadditivity_check(u, h: float, N: int, p: float) -> dict:
    """Verify omega_p(u,h) <= sum of the N sub-shift integrals <= N * max."""
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    if not 0.0 < h <= 1.0:
        raise DomainError(f"shift h must lie in (0,1], got {h}")
    om = omega_p(u, h, p)
    s = h / N
    parts = []
    for k in range(N):
        parts.append(_dp_window(u, u, p, h - k * s, 1.0 - k * s, s))
    tol = 1e-9
    total = sum(parts)
    return {
        "omega": om,
        "parts": parts,
        "sum_parts": total,
        "max_part": max(parts),
        "bound_sum_ok": om <= total + tol,
        "bound_N_ok": om <= N * max(parts) + tol,
    }


def _to_zero(xs) -> bool:
    xs = [float(x) for x in xs]
    return xs[-1] <= max(0.05 * max(xs), 1e-9)


def convergence_report(seq: Family, u, p: float, alpha_samples=None) -> dict:
    """Per-member distances to the limit plus sampled cutwise Hausdorff
    columns, with the evidence-level implications asserted."""
    bps = sorted({b for w in list(seq.members) + [u] for b in _breakpoints(w)})
    if alpha_samples is None:
        alpha_samples = default_alpha_grid(avoid=bps)
    alpha_samples = np.asarray(alpha_samples, dtype=float)
    for a in alpha_samples:
        for b in bps:
            if abs(a - b) <= 1e-9:
                raise DomainError(
                    f"alpha sample {a} hits breakpoint {b}; pick samples off the jump set"
                )
    hend = [float(h_end(w, u, Kind.SUM)) for w in seq.members]
    dps = [float(d_p(w, u, p)) for w in seq.members]
    cut_cols = []
    for w in seq.members:
        cut_cols.append([hausdorff(w.cut(float(a)), u.cut(float(a))) for a in alpha_samples])
    cut_arr = np.asarray(cut_cols)
    tol = 1e-9
    hend_zero = _to_zero(hend)
    dp_zero = _to_zero(dps)
    cut_zero = all(_to_zero(cut_arr[:, j]) for j in range(cut_arr.shape[1]))
    bound_ok = all(
        he <= ((p + 1.0) * dp**p) ** (1.0 / (p + 1.0)) + tol for he, dp in zip(hend, dps)
    )
    return {
        "n": list(range(len(seq))),
        "labels": list(seq.labels),
        "hend": hend,
        "dp": dps,
        "alpha": [float(a) for a in alpha_samples],
        "cutwise": cut_arr.tolist(),
        "hend_to_zero": hend_zero,
        "dp_to_zero": dp_zero,
        "cutwise_to_zero": cut_zero,
        "equiv_ok": hend_zero == cut_zero,
        "dp_implies_hend_ok": (not dp_zero) or hend_zero,
        "dpe_bound_ok": bound_ok,
    }
