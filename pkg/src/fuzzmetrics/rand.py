"""Seeded random generators used by property tests and `audit --random`.

All generators take a numpy Generator so every caller controls determinism.
Step sets are grown downward from the top cut, which guarantees nesting by
construction; product pairs are budgeted so brute-force enumeration stays
small.
"""

from __future__ import annotations

import numpy as np

from .fuzzy import LinearFuzzyNumber, StepFuzzySet, make_step, product_fuzzy
from .ground import (
    EuclideanSpace,
    GroundSet,
    MatrixSpace,
    euclidean_set,
    line_set,
    matrix_set,
    product_set,
)


def _rand_gammas(rng: np.random.Generator, k: int) -> np.ndarray:
    gaps = rng.uniform(0.15, 1.0, k)
    g = np.cumsum(gaps)
    return g / g[-1]


def rand_line_set(rng: np.random.Generator, kmax: int = 3, lo: float = -8.0, hi: float = 8.0) -> GroundSet:
    k = int(rng.integers(1, kmax + 1))
    pts = np.sort(rng.uniform(lo, hi, 2 * k))
    return line_set([(pts[2 * i], pts[2 * i + 1]) for i in range(k)])


def rand_step_line(rng: np.random.Generator, max_levels: int = 4) -> StepFuzzySet:
    k = int(rng.integers(1, max_levels + 1))
    gam = _rand_gammas(rng, k)
    cur = rand_line_set(rng, kmax=2)
    cuts_top_down = [cur]
    for _ in range(k - 1):
        ivals = []
        for a, b in cur.ivals:
            ivals.append((a - rng.uniform(0.0, 1.5), b + rng.uniform(0.0, 1.5)))
        if rng.random() < 0.4:
            c = rng.uniform(-10.0, 10.0)
            ivals.append((c, c + rng.uniform(0.0, 2.0)))
        cur = line_set(ivals)
        cuts_top_down.append(cur)
    levels = [(gam[i], cuts_top_down[k - 1 - i]) for i in range(k)]
    return make_step(levels)


def rand_matrix_space(rng: np.random.Generator, n: int = 8) -> MatrixSpace:
    # planar embedding keeps the triangle inequality
    pts = rng.uniform(-5.0, 5.0, (n, 2))
    diff = pts[:, None, :] - pts[None, :, :]
    return MatrixSpace(np.sqrt((diff**2).sum(axis=2)))


def rand_step_euclidean(
    rng: np.random.Generator, space: EuclideanSpace, max_levels: int = 3, max_pts: int = 5
) -> StepFuzzySet:
    k = int(rng.integers(1, max_levels + 1))
    gam = _rand_gammas(rng, k)
    cur = rng.uniform(-4.0, 4.0, (int(rng.integers(1, max_pts + 1)), space.dim))
    tops = [cur]
    for _ in range(k - 1):
        extra = rng.uniform(-4.0, 4.0, (int(rng.integers(1, 3)), space.dim))
        cur = np.vstack([cur, extra])
        tops.append(cur)
    levels = [(gam[i], euclidean_set(tops[k - 1 - i], dim=space.dim)) for i in range(k)]
    return make_step(levels)


def rand_step_matrix(rng: np.random.Generator, space: MatrixSpace, max_levels: int = 3) -> StepFuzzySet:
    k = int(rng.integers(1, max_levels + 1))
    gam = _rand_gammas(rng, k)
    perm = rng.permutation(space.n)
    sizes = np.sort(rng.integers(1, space.n + 1, k))
    levels = [(gam[i], matrix_set(space, perm[: sizes[k - 1 - i]])) for i in range(k)]
    return make_step(levels)


def rand_linear(rng: np.random.Generator, max_knots: int = 5) -> LinearFuzzyNumber:
    k = int(rng.integers(2, max_knots + 1))
    gam = np.concatenate([[0.0], _rand_gammas(rng, k - 1)])
    base = float(rng.uniform(-5.0, 5.0))
    incs = rng.uniform(0.0, 1.0, k - 1) * (rng.random(k - 1) > 0.3)
    lo = base + np.concatenate([[0.0], np.cumsum(incs)])
    top_hi = lo[-1] + float(rng.uniform(0.0, 2.0))
    decs = rng.uniform(0.0, 1.0, k - 1) * (rng.random(k - 1) > 0.3)
    hi = top_hi + np.concatenate([np.cumsum(decs[::-1])[::-1], [0.0]])
    return LinearFuzzyNumber([(gam[i], lo[i], hi[i]) for i in range(k)])


def rand_step_pair(rng: np.random.Generator, backend: str = "line"):
    if backend == "line":
        return rand_step_line(rng), rand_step_line(rng)
    if backend == "euclidean":
        sp = EuclideanSpace(int(rng.integers(1, 4)))
        return rand_step_euclidean(rng, sp), rand_step_euclidean(rng, sp)
    if backend == "matrix":
        sp = rand_matrix_space(rng, int(rng.integers(4, 9)))
        return rand_step_matrix(rng, sp), rand_step_matrix(rng, sp)
    raise ValueError(f"unknown backend {backend!r}")


def rand_product_ground_pair(rng: np.random.Generator, budget: int = 600):
    """Two ground sets on a shared product space, sized for brute enumeration."""
    ncomp = int(rng.integers(1, 5))
    pa, pb, side = [], [], 1
    for _ in range(ncomp):
        kind = ["line", "euclidean", "matrix"][int(rng.integers(0, 3))]
        if kind == "line":
            na, nb = int(rng.integers(1, 3)), int(rng.integers(1, 3))
            A = rand_line_set(rng, kmax=na)
            B = rand_line_set(rng, kmax=nb)
            bound = 3 * (len(A.ivals) + len(B.ivals))
        elif kind == "euclidean":
            sp = EuclideanSpace(2)
            A = euclidean_set(rng.uniform(-3, 3, (int(rng.integers(1, 5)), 2)))
            B = euclidean_set(rng.uniform(-3, 3, (int(rng.integers(1, 5)), 2)))
            bound = max(len(A.points_arr), len(B.points_arr))
        else:
            sp = rand_matrix_space(rng, 6)
            A = matrix_set(sp, rng.permutation(6)[: int(rng.integers(1, 5))])
            B = matrix_set(sp, rng.permutation(6)[: int(rng.integers(1, 5))])
            bound = max(len(A.indices), len(B.indices))
        if side * bound > budget and pa:
            break
        side *= bound
        pa.append(A)
        pb.append(B)
    return product_set(pa), product_set(pb)


def rand_product_fuzzy_pair(rng: np.random.Generator):
    """Product step pair with finitely enumerable cuts (for graph metrics)."""
    ncomp = int(rng.integers(1, 4))
    ua, va = [], []
    for _ in range(ncomp):
        if rng.random() < 0.5:
            sp = EuclideanSpace(2)
            ua.append(rand_step_euclidean(rng, sp, max_levels=2, max_pts=3))
            va.append(rand_step_euclidean(rng, sp, max_levels=2, max_pts=3))
        else:
            sp = rand_matrix_space(rng, 5)
            ua.append(rand_step_matrix(rng, sp, max_levels=2))
            va.append(rand_step_matrix(rng, sp, max_levels=2))
    return product_fuzzy(ua), product_fuzzy(va)
