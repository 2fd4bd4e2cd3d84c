"""Fuzzy sets in level-set representation.

Two concrete representations:

* :class:`StepFuzzySet` -- finitely many breakpoints ``0 = g_0 < g_1 < ... <
  g_k = 1`` with a compact cut per segment, ``cut(a) = C_i`` for
  ``a in (g_{i-1}, g_i]``.  Cuts are nested, adjacent cuts differ, the top cut
  is nonempty, and ``cut(0) = C_1`` (the closure of the support).
* :class:`LinearFuzzyNumber` -- a line-backend fuzzy number whose cut
  endpoints interpolate linearly between knots; exactly one interval per cut.

Both are immutable value types.  ``cut`` is left-continuous in alpha by
construction: constant on left-open right-closed segments for step sets,
continuous for linear ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import tolerance
from .ground import (
    LINE,
    BackendMismatch,
    DomainError,
    GroundPoint,
    GroundSet,
    MatrixSpace,
    Space,
    line_set,
    matrix_set,
    product_set,
    set_from_json,
    singleton_set,
    space_from_json,
    space_to_json,
)


class StepFuzzySet:
    """Normal fuzzy set with piecewise-constant cut map."""

    __slots__ = ("space", "gammas", "cuts", "_flat_cache")

    def __init__(self, space: Space, gammas: np.ndarray, cuts: tuple):
        # trusted constructor; use make_step for validated building
        self.space = space
        self.gammas = gammas
        self.cuts = cuts
        self._flat_cache = None

    @property
    def backend(self) -> str:
        return self.space.backend

    def levels(self) -> list[tuple[float, GroundSet]]:
        return [(float(g), c) for g, c in zip(self.gammas, self.cuts)]

    def cut_index(self, alpha: float) -> int:
        if not 0.0 <= alpha <= 1.0:
            raise DomainError(f"alpha must be in [0,1], got {alpha}")
        if alpha == 0.0:
            return 0
        return int(np.searchsorted(self.gammas, alpha, side="left"))

    def cut(self, alpha: float) -> GroundSet:
        return self.cuts[self.cut_index(alpha)]

    def membership(self, x: GroundPoint) -> float:
        """Largest alpha whose cut contains x (0 when outside the support)."""
        m = 0.0
        for g, c in zip(self.gammas, self.cuts):
            if x in c:
                m = float(g)
            else:
                break
        return m

    def __eq__(self, other) -> bool:
        if not isinstance(other, StepFuzzySet) or other.space != self.space:
            return False
        return (
            self.gammas.shape == other.gammas.shape
            and np.allclose(self.gammas, other.gammas, atol=tolerance(), rtol=0.0)
            and all(c == d for c, d in zip(self.cuts, other.cuts))
        )

    def __hash__(self):  # pragma: no cover - not meant as dict keys
        return id(self)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"StepFuzzySet({self.backend}, {len(self.gammas)} levels)"

    def line_flat(self):
        """Flattened kernel layout (gam, ss, ee, off) for line-backend sets."""
        if self.backend != "line":
            raise BackendMismatch("flattened layout exists only on the line backend")
        if self._flat_cache is None:
            gam = np.ascontiguousarray(self.gammas, dtype=float)
            ss_parts = [c.ivals[:, 0] for c in self.cuts]
            ee_parts = [c.ivals[:, 1] for c in self.cuts]
            off = np.zeros(len(self.cuts) + 1, dtype=np.int64)
            off[1:] = np.cumsum([len(p) for p in ss_parts])
            ss = np.ascontiguousarray(np.concatenate(ss_parts), dtype=float)
            ee = np.ascontiguousarray(np.concatenate(ee_parts), dtype=float)
            self._flat_cache = (gam, ss, ee, off)
        return self._flat_cache


def make_step(levels: Sequence[tuple[float, GroundSet]]) -> StepFuzzySet:
    """Validated canonical construction from (gamma, cut) pairs.

    Gammas must increase strictly and end at 1; cuts must share one space and
    nest downward.  Equal adjacent cuts are merged (the lower breakpoint is
    dropped), so the result is canonical.
    """
    items = [(float(g), c) for g, c in levels]
    if not items:
        raise DomainError("make_step needs at least one level")
    tol = tolerance()
    for idx, (g, c) in enumerate(items):
        if not isinstance(c, GroundSet):
            raise DomainError(f"level {idx} (alpha={g}): cut is not a GroundSet")
        if not 0.0 < g <= 1.0 + tol:
            raise DomainError(f"level {idx}: alpha={g} outside (0,1]")
    for idx in range(1, len(items)):
        if items[idx][0] <= items[idx - 1][0]:
            raise DomainError(
                f"level {idx}: alpha={items[idx][0]} not above previous {items[idx - 1][0]}"
            )
    if abs(items[-1][0] - 1.0) > tol:
        raise DomainError(f"last level has alpha={items[-1][0]}, must be 1")
    items[-1] = (1.0, items[-1][1])
    space = items[0][1].space
    for idx, (g, c) in enumerate(items):
        if c.space != space:
            raise DomainError(f"level {idx} (alpha={g}): ground space differs from level 0")
    for idx in range(1, len(items)):
        if not items[idx][1].subset_of(items[idx - 1][1]):
            raise DomainError(
                f"level {idx} (alpha={items[idx][0]}): cut is not contained in the"
                f" cut at alpha={items[idx - 1][0]}"
            )
    merged: list[tuple[float, GroundSet]] = []
    for g, c in items:
        if merged and merged[-1][1] == c:
            merged[-1] = (g, merged[-1][1])
        else:
            merged.append((g, c))
    gam = np.array([g for g, _ in merged], dtype=float)
    gam.setflags(write=False)
    return StepFuzzySet(space, gam, tuple(c for _, c in merged))


def singleton(x: GroundPoint) -> StepFuzzySet:
    """The fuzzy point with membership 1 at x and 0 elsewhere."""
    return make_step([(1.0, singleton_set(x))])


def characteristic(S: GroundSet) -> StepFuzzySet:
    """The characteristic fuzzy set of a compact set S."""
    return make_step([(1.0, S)])


class LinearFuzzyNumber:
    """Line-backend fuzzy number with piecewise-linear cut endpoints.

    Knots sit at ``0 = g_0 < ... < g_k = 1``; the cut at level a is
    ``[lo(a), hi(a)]`` with both endpoints linearly interpolated.  ``lo`` is
    nondecreasing and ``hi`` nonincreasing, so cuts nest.
    """

    __slots__ = ("gammas", "lo", "hi")

    def __init__(self, knots: Sequence[tuple[float, float, float]]):
        ks = [(float(g), float(a), float(b)) for g, a, b in knots]
        if len(ks) < 2:
            raise DomainError("linear fuzzy number needs at least knots at 0 and 1")
        tol = tolerance()
        if abs(ks[0][0]) > tol:
            raise DomainError(f"first knot must sit at alpha=0, got {ks[0][0]}")
        if abs(ks[-1][0] - 1.0) > tol:
            raise DomainError(f"last knot must sit at alpha=1, got {ks[-1][0]}")
        ks[0] = (0.0, ks[0][1], ks[0][2])
        ks[-1] = (1.0, ks[-1][1], ks[-1][2])
        for idx in range(1, len(ks)):
            if ks[idx][0] <= ks[idx - 1][0]:
                raise DomainError(f"knot {idx}: alpha={ks[idx][0]} not increasing")
        for idx, (g, a, b) in enumerate(ks):
            if b < a - tol:
                raise DomainError(f"knot {idx} (alpha={g}): a={a} exceeds b={b}")
        for idx in range(1, len(ks)):
            if ks[idx][1] < ks[idx - 1][1] - tol:
                raise DomainError(f"knot {idx}: left endpoint decreases, cuts do not nest")
            if ks[idx][2] > ks[idx - 1][2] + tol:
                raise DomainError(f"knot {idx}: right endpoint increases, cuts do not nest")
        self.gammas = np.array([g for g, _, _ in ks], dtype=float)
        self.lo = np.array([a for _, a, _ in ks], dtype=float)
        self.hi = np.array([b for _, _, b in ks], dtype=float)
        for arr in (self.gammas, self.lo, self.hi):
            arr.setflags(write=False)

    space = LINE

    @property
    def backend(self) -> str:
        return "line"

    def endpoints(self, alpha) -> tuple:
        a = np.interp(alpha, self.gammas, self.lo)
        b = np.interp(alpha, self.gammas, self.hi)
        return a, b

    def cut(self, alpha: float) -> GroundSet:
        if not 0.0 <= alpha <= 1.0:
            raise DomainError(f"alpha must be in [0,1], got {alpha}")
        a, b = self.endpoints(float(alpha))
        return line_set([[float(a), float(max(a, b))]])

    def membership(self, x: GroundPoint) -> float:
        """sup of the alphas whose cut contains x."""
        xv = float(x.value)
        if xv < self.lo[0] or xv > self.hi[0]:
            return 0.0
        # largest alpha with lo(alpha) <= xv, and with hi(alpha) >= xv
        m_lo = _inverse_sup(self.gammas, self.lo, xv, increasing=True)
        m_hi = _inverse_sup(self.gammas, self.hi, xv, increasing=False)
        return float(min(m_lo, m_hi))

    def knots(self) -> list[tuple[float, float, float]]:
        return [
            (float(g), float(a), float(b))
            for g, a, b in zip(self.gammas, self.lo, self.hi)
        ]

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearFuzzyNumber):
            return False
        tol = tolerance()
        return (
            self.gammas.shape == other.gammas.shape
            and np.allclose(self.gammas, other.gammas, atol=tol, rtol=0.0)
            and np.allclose(self.lo, other.lo, atol=tol, rtol=0.0)
            and np.allclose(self.hi, other.hi, atol=tol, rtol=0.0)
        )

    def __hash__(self):  # pragma: no cover
        return id(self)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"LinearFuzzyNumber({len(self.gammas)} knots)"


def _inverse_sup(gam: np.ndarray, vals: np.ndarray, x: float, increasing: bool) -> float:
    """Largest alpha with vals(alpha) <= x (increasing) or >= x (decreasing)."""
    v = vals if increasing else -vals
    t = x if increasing else -x
    if v[-1] <= t:
        return 1.0
    # walk pieces; v is monotone nondecreasing
    for i in range(len(gam) - 1):
        if v[i + 1] > t:
            if v[i + 1] == v[i]:
                return float(gam[i])
            # linear crossing inside the piece
            frac = (t - v[i]) / (v[i + 1] - v[i])
            frac = min(max(frac, 0.0), 1.0)
            return float(gam[i] + frac * (gam[i + 1] - gam[i]))
    return 1.0  # pragma: no cover - unreachable


def discretize_linear(u: LinearFuzzyNumber, n: int, outer: bool = True) -> StepFuzzySet:
    """Step approximation on the uniform n-grid.

    ``outer=True`` takes each segment's largest cut (segment start), giving a
    step set whose cuts contain the true ones; ``outer=False`` takes the
    segment end, giving contained cuts.
    """
    if n < 1:
        raise DomainError("discretization needs n >= 1")
    levels = []
    for j in range(1, n + 1):
        g = j / n
        a_lvl = (j - 1) / n if outer else g
        a, b = u.endpoints(a_lvl)
        levels.append((g, line_set([[float(a), float(max(a, b))]])))
    return make_step(levels)


# ---------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class GraphSet:
    """Union of cylinders S_j x [l_j, h_j] in X x [0,1], optionally together
    with the base slab X x {0} (endographs only).  The floor of a sendograph,
    [u]_0 x {0}, is absorbed by the first cylinder since l_1 = 0."""

    space: Space
    cylinders: tuple
    has_base_slab: bool

    def __post_init__(self):
        for S, lo, hi in self.cylinders:
            if not isinstance(S, GroundSet) or S.space != self.space:
                raise BackendMismatch("cylinder set in a different space")
            if lo < 0.0 or hi > 1.0 or hi < lo:
                raise DomainError(f"cylinder band [{lo}, {hi}] not inside [0,1]")
            if hi <= 0.0:
                raise DomainError("explicit cylinder needs positive height")

    def contains(self, x: GroundPoint, t: float) -> bool:
        if self.has_base_slab and abs(t) <= tolerance():
            return True
        for S, lo, hi in self.cylinders:
            if lo - tolerance() <= t <= hi + tolerance() and x in S:
                return True
        return False


def endograph(u) -> GraphSet:
    """end u = {(x,t): u(x) >= t}, materialized as the base slab plus one
    cylinder C_i x [0, g_i] per level.  Linear fuzzy numbers are discretized
    first (outer, 256 levels)."""
    if isinstance(u, LinearFuzzyNumber):
        u = discretize_linear(u, 256, outer=True)
    cyls = tuple((c, 0.0, float(g)) for g, c in zip(u.gammas, u.cuts))
    return GraphSet(u.space, cyls, has_base_slab=True)


def sendograph(u) -> GraphSet:
    """send u = end u restricted to [u]_0 x [0,1]: the same cylinders without
    the base slab."""
    if isinstance(u, LinearFuzzyNumber):
        u = discretize_linear(u, 256, outer=True)
    cyls = tuple((c, 0.0, float(g)) for g, c in zip(u.gammas, u.cuts))
    return GraphSet(u.space, cyls, has_base_slab=False)


# ---------------------------------------------------------------------------
# constructions


def product_fuzzy(us: Sequence[StepFuzzySet]) -> StepFuzzySet:
    """Product fuzzy set: cut(a) is the product of the component cuts, so the
    breakpoint grid is the union of the component grids."""
    us = list(us)
    if not us:
        raise DomainError("empty product")
    for u in us:
        if not isinstance(u, StepFuzzySet):
            raise DomainError("product components must be step fuzzy sets")
    grid = np.unique(np.concatenate([u.gammas for u in us]))
    levels = []
    for g in grid:
        levels.append((float(g), product_set([u.cut(float(g)) for u in us])))
    return make_step(levels)


def truncate(u: StepFuzzySet, eps: float) -> StepFuzzySet:
    """Level truncation u^eps: cuts at alpha <= eps are replaced by cut(eps)."""
    if not 0.0 < eps < 1.0:
        raise DomainError(f"truncation level must be in (0,1), got {eps}")
    i0 = u.cut_index(eps)
    return make_step([(float(g), c) for g, c in zip(u.gammas[i0:], u.cuts[i0:])])


def zero_extend(
    u: StepFuzzySet, Y: MatrixSpace, index_map: Sequence[int] | None = None
) -> StepFuzzySet:
    """Reinterpret a matrix-backend fuzzy set inside a superspace Y.

    ``index_map[i]`` is the Y-index of X-index i (identity by default).  The
    membership function extends by zero; cuts are carried over unchanged, so
    the embedding must preserve distances.
    """
    if u.backend != "matrix":
        raise BackendMismatch("zero_extend applies to matrix-backend fuzzy sets")
    X = u.space
    if index_map is None:
        index_map = list(range(X.n))
    index_map = [int(i) for i in index_map]
    if len(index_map) != X.n:
        raise DomainError(f"index map must list all {X.n} points of the base space")
    if len(set(index_map)) != len(index_map):
        raise DomainError("index map must be injective")
    for i in index_map:
        if not 0 <= i < Y.n:
            raise DomainError(f"mapped index {i} outside the superspace (n={Y.n})")
    m = np.asarray(index_map, dtype=np.int64)
    if not np.allclose(Y.D[np.ix_(m, m)], X.D, atol=tolerance(), rtol=0.0):
        raise DomainError("embedding does not preserve distances")
    levels = [
        (float(g), matrix_set(Y, m[c.indices])) for g, c in zip(u.gammas, u.cuts)
    ]
    return make_step(levels)


# ---------------------------------------------------------------------------
# JSON


def fuzzy_to_json(u) -> dict:
    if isinstance(u, LinearFuzzyNumber):
        return {
            "kind": "linear",
            "knots": [
                {"alpha": g, "a": a, "b": b} for g, a, b in u.knots()
            ],
        }
    if isinstance(u, StepFuzzySet):
        if u.backend == "product":
            raise DomainError("product fuzzy sets have no JSON form")
        return {
            "kind": "step",
            "space": space_to_json(u.space),
            "levels": [
                {"alpha": float(g), "set": c.to_json()} for g, c in u.levels()
            ],
        }
    raise DomainError(f"cannot serialize {type(u).__name__}")


def fuzzy_from_json(obj: dict):
    if not isinstance(obj, dict) or "kind" not in obj:
        raise DomainError("fuzzy set JSON must be an object with a 'kind' field")
    kind = obj["kind"]
    if kind == "linear":
        knots = obj.get("knots")
        if not isinstance(knots, list) or not knots:
            raise DomainError("linear fuzzy JSON needs a nonempty 'knots' list")
        trip = []
        for idx, k in enumerate(knots):
            try:
                trip.append((float(k["alpha"]), float(k["a"]), float(k["b"])))
            except (KeyError, TypeError, ValueError) as e:
                raise DomainError(f"knot {idx}: needs numeric alpha, a, b ({e})")
        return LinearFuzzyNumber(trip)
    if kind == "step":
        if "space" not in obj:
            raise DomainError("step fuzzy JSON needs a 'space' header")
        space = space_from_json(obj["space"])
        lv = obj.get("levels")
        if not isinstance(lv, list) or not lv:
            raise DomainError("step fuzzy JSON needs a nonempty 'levels' list")
        levels = []
        for idx, item in enumerate(lv):
            try:
                g = float(item["alpha"])
                body = item["set"]
            except (KeyError, TypeError, ValueError) as e:
                raise DomainError(f"level {idx}: needs 'alpha' and 'set' ({e})")
            try:
                levels.append((g, set_from_json(body, space=space)))
            except DomainError as e:
                raise DomainError(f"level {idx} (alpha={g}): {e}")
        return make_step(levels)
    raise DomainError(f"unknown fuzzy set kind {kind!r}")


def merged_grid(u: StepFuzzySet, v: StepFuzzySet) -> np.ndarray:
    return np.union1d(u.gammas, v.gammas)
