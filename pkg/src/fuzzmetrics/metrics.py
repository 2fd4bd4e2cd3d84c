"""Metrics between fuzzy sets: d_p, d_infty, endograph and sendograph
Hausdorff distances, and the inequality audit tying them together.

All computation paths are exact:

* step-step cutwise metrics integrate the piecewise-constant Hausdorff
  profile over the merged breakpoint grid;
* pairs involving a linear fuzzy number go through the piecewise-linear
  envelope machinery in :mod:`fuzzmetrics.bands`;
* graph metrics on the line use compiled candidate-enumeration kernels for
  step pairs and the band machinery otherwise;
* finite backends (euclidean, matrix, enumerable products) reduce graphs to
  finite unions of vertical fibers.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import bands, kernels
from .config import tolerance
from .fuzzy import LinearFuzzyNumber, StepFuzzySet, merged_grid
from .ground import BackendMismatch, DomainError, GroundPoint, _dist_values
from .hausdorff import hausdorff


class Kind(enum.Enum):
    """Product metric on X x [0,1]: SUM is d(x,y) + |a-b|, MAX is the sup."""

    SUM = "sum"
    MAX = "max"


def _as_kind(kind) -> Kind:
    if isinstance(kind, Kind):
        return kind
    if isinstance(kind, str):
        try:
            return Kind(kind.lower())
        except ValueError:
            pass
    raise DomainError(f"unknown product metric kind {kind!r}")


@dataclass(frozen=True)
class MetricResult:
    value: float
    exact: bool = True
    error_bound: float = 0.0

    def __float__(self) -> float:
        return float(self.value)

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "exact": self.exact,
            "error_bound": self.error_bound,
        }


def _check_pair(u, v) -> bool:
    """Validate the pair, return True when a linear fuzzy number is involved."""
    for w in (u, v):
        if not isinstance(w, (StepFuzzySet, LinearFuzzyNumber)):
            raise DomainError(f"not a fuzzy set: {type(w).__name__}")
    if u.space != v.space:
        raise BackendMismatch("fuzzy sets live in different ground spaces")
    return isinstance(u, LinearFuzzyNumber) or isinstance(v, LinearFuzzyNumber)


# ---------------------------------------------------------------------------
# cutwise metrics


def cutwise_profile(u: StepFuzzySet, v: StepFuzzySet):
    """(breaks, vals): H(cut_u, cut_v) equals vals[i] on (breaks[i], breaks[i+1]]."""
    grid = merged_grid(u, v)
    vals = np.array([hausdorff(u.cut(float(g)), v.cut(float(g))) for g in grid])
    breaks = np.concatenate([[0.0], grid])
    return breaks, vals


def d_p(u, v, p: float) -> MetricResult:
    p = float(p)
    if p < 1.0:
        raise DomainError(f"d_p needs p >= 1, got {p}")
    linear = _check_pair(u, v)
    if not linear:
        breaks, vals = cutwise_profile(u, v)
        total = float(np.sum(vals**p * np.diff(breaks)))
        return MetricResult(total ** (1.0 / p))
    return MetricResult(bands.dp_profile(u, v, p))


def d_infty(u, v) -> MetricResult:
    linear = _check_pair(u, v)
    if not linear:
        _, vals = cutwise_profile(u, v)
        return MetricResult(float(vals.max()))
    return MetricResult(bands.dinf_profile(u, v))


# ---------------------------------------------------------------------------
# graph metrics


def _kernel_directed(u: StepFuzzySet, v: StepFuzzySet, use_max: bool, slab: bool) -> float:
    gu, su, eu, offu = u.line_flat()
    gv, sv, ev, offv = v.line_flat()
    return float(
        kernels.graph_directed_step_line(gu, su, eu, offu, gv, sv, ev, offv, use_max, slab)
    )


def _finite_tops(u: StepFuzzySet):
    """Support points with their membership grades, for finite backends."""
    b = u.backend
    tol = tolerance()
    if b == "euclidean":
        P = u.cuts[0].points_arr
        m = np.full(len(P), u.gammas[0])
        for g, c in zip(u.gammas[1:], u.cuts[1:]):
            diff = P[:, None, :] - c.points_arr[None, :, :]
            inside = np.sqrt((diff * diff).sum(axis=2)).min(axis=1) <= tol
            m[inside] = g
        return P, m
    if b == "matrix":
        idx = u.cuts[0].indices
        m = np.full(len(idx), u.gammas[0])
        for g, c in zip(u.gammas[1:], u.cuts[1:]):
            m[np.isin(idx, c.indices)] = g
        return idx, m
    raise BackendMismatch(f"no finite fiber reduction for backend {b!r}")


def _finite_directed(u: StepFuzzySet, v: StepFuzzySet, use_max: bool, slab: bool) -> float:
    pu, mu = _finite_tops(u)
    pv, mv = _finite_tops(v)
    if u.backend == "euclidean":
        diff = pu[:, None, :] - pv[None, :, :]
        D = np.sqrt((diff * diff).sum(axis=2))
    else:
        D = u.space.D[np.ix_(pu, pv)]
    c = np.maximum(0.0, mu[:, None] - mv[None, :])
    phi = np.maximum(D, c) if use_max else D + c
    psi = phi.min(axis=1)
    if slab:
        psi = np.minimum(psi, mu)
    return float(psi.max())


def _enum_tops(u: StepFuzzySet):
    pts = u.cuts[0].enumerate_points()
    m = []
    for val in pts:
        grade = u.gammas[0]
        for g, c in zip(u.gammas[1:], u.cuts[1:]):
            if GroundPoint(u.space, val) in c:
                grade = g
            else:
                break
        m.append(float(grade))
    return pts, m


def _enum_directed(u: StepFuzzySet, v: StepFuzzySet, use_max: bool, slab: bool) -> float:
    pu, mu = _enum_tops(u)
    pv, mv = _enum_tops(v)
    best = 0.0
    for x, t in zip(pu, mu):
        cur = t if slab else math.inf
        for y, s in zip(pv, mv):
            d = _dist_values(u.space, x, y)
            c = max(0.0, t - s)
            val = max(d, c) if use_max else d + c
            cur = min(cur, val)
        best = max(best, cur)
    return best


def _graph_metric(u, v, kind, slab: bool) -> MetricResult:
    use_max = _as_kind(kind) == Kind.MAX
    linear = _check_pair(u, v)
    if linear:
        return MetricResult(bands.graph_hausdorff_exact(u, v, use_max, slab))
    b = u.backend
    if b == "line":
        return MetricResult(
            max(
                _kernel_directed(u, v, use_max, slab),
                _kernel_directed(v, u, use_max, slab),
            )
        )
    if b in ("euclidean", "matrix"):
        return MetricResult(
            max(_finite_directed(u, v, use_max, slab), _finite_directed(v, u, use_max, slab))
        )
    # product backend: only enumerable cuts admit an exact reduction
    try:
        return MetricResult(
            max(_enum_directed(u, v, use_max, slab), _enum_directed(v, u, use_max, slab))
        )
    except DomainError:
        raise DomainError(
            "graph metrics on product spaces need finitely enumerable cuts;"
            " they do not reduce to component values"
        )


def h_end(u, v, kind=Kind.SUM) -> MetricResult:
    """Hausdorff distance between endographs; SUM gives H_end, MAX H'_end."""
    return _graph_metric(u, v, kind, slab=True)


def h_send(u, v, kind=Kind.SUM) -> MetricResult:
    """Hausdorff distance between sendographs; SUM gives H_send, MAX H'_send."""
    return _graph_metric(u, v, kind, slab=False)


# ---------------------------------------------------------------------------
# inequality audit


def _pair_metric_table(u, v, ps):
    linear = _check_pair(u, v)
    if linear:
        pieces = bands.cut_profile(u, v)
        dinf = max((max(H1, H2) for _, _, H1, H2 in pieces), default=0.0)
        dps = {}
        for p in ps:
            total = max(sum(bands._piece_pow_integral(*pc, p) for pc in pieces), 0.0)
            dps[p] = total ** (1.0 / p)
    else:
        breaks, vals = cutwise_profile(u, v)
        dinf = float(vals.max())
        dl = np.diff(breaks)
        dps = {p: float(np.sum(vals**p * dl)) ** (1.0 / p) for p in ps}
    return {
        "dinf": dinf,
        "dp": dps,
        "hend_sum": h_end(u, v, Kind.SUM).value,
        "hend_max": h_end(u, v, Kind.MAX).value,
        "hsend_sum": h_send(u, v, Kind.SUM).value,
        "hsend_max": h_send(u, v, Kind.MAX).value,
    }


def _row(name: str, lhs: float, rhs: float, p=None) -> dict:
    if math.isinf(lhs) and math.isinf(rhs):
        slack, ok, eq = 0.0, True, True
    else:
        slack = lhs - rhs
        ok = slack >= -1e-9
        eq = abs(slack) <= 1e-9
    row = {
        "name": name,
        "lhs": lhs,
        "rhs": rhs,
        "slack": slack,
        "pass": bool(ok),
        "equality_case": bool(eq),
    }
    if p is not None:
        row["p"] = p
    return row


def inequality_audit(u, v, p=2.0) -> dict:
    """Evaluate the inequality chains on one pair; every row is lhs >= rhs.

    ``p`` may be a single exponent or an iterable of exponents; the
    p-dependent rows are repeated per exponent.
    """
    if isinstance(p, Iterable) and not isinstance(p, (str, bytes)):
        ps = [float(x) for x in p]
    else:
        ps = [float(p)]
    if not ps:
        raise DomainError("need at least one exponent")
    for x in ps:
        if x < 1.0:
            raise DomainError(f"d_p needs p >= 1, got {x}")
    t = _pair_metric_table(u, v, ps)
    rows = [
        _row("dinf_ge_hsend", t["dinf"], t["hsend_sum"]),
        _row("hsend_ge_hend", t["hsend_sum"], t["hend_sum"]),
    ]
    for q in ps:
        dp_val = t["dp"][q]
        rows.append(_row("dpe", dp_val, (t["hend_sum"] ** (q + 1) / (q + 1)) ** (1.0 / q), p=q))
        rows.append(_row("dperym", dp_val, t["hend_max"] ** (1.0 + 1.0 / q), p=q))
        rows.append(_row("dinf_ge_dp", t["dinf"], dp_val, p=q))
    rows.append(_row("senr_end_lower", t["hend_sum"], t["hend_max"]))
    rows.append(_row("senr_end_upper", min(2.0 * t["hend_max"], 1.0), t["hend_sum"]))
    rows.append(_row("senr_send_lower", t["hsend_sum"], t["hsend_max"]))
    rows.append(
        _row("senr_send_upper", min(2.0 * t["hsend_max"], t["hsend_max"] + 1.0), t["hsend_sum"])
    )
    violations = sum(1 for r in rows if not r["pass"])
    eq_flags = sum(1 for r in rows if r["name"] in ("dpe", "dperym") and r["equality_case"])
    return {
        "rows": rows,
        "metrics": t,
        "summary": {
            "violations": violations,
            "equality_flags": eq_flags,
            "all_pass": violations == 0,
        },
    }
