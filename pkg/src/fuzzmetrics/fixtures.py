"""Bundled fixtures: hand-analyzed pairs, parametric families, and
convergent sequences with closed-form distances.

Everything is generated in code so the constructions stay auditable;
nothing is shipped as data files.
"""

from __future__ import annotations

import numpy as np

from .diagnostics import Family
from .fuzzy import LinearFuzzyNumber, make_step, product_fuzzy, singleton
from .ground import (
    LINE,
    DomainError,
    EuclideanSpace,
    GroundPoint,
    MatrixSpace,
    line_set,
)


# ---------------------------------------------------------------------------
# pairs


def taper_pair():
    """Linear taper vs a fixed step: cutwise Hausdorff equals alpha up to 0.5,
    so d_p = (0.5^(p+1)/(p+1))^(1/p) and the SUM endograph distance is 0.5."""
    u = LinearFuzzyNumber([(0.0, 0.0, 0.5), (0.5, 0.0, 0.0), (1.0, 0.0, 0.0)])
    v = make_step([(0.5, line_set([[0.0, 0.5]])), (1.0, line_set([[0.0, 0.0]]))])
    return u, v


def split_top_pair():
    """Same bottom cut [0,0.5], tops {0} vs {0.5}: every metric here is driven
    by the top-level mismatch; d_p = 0.5^(1+1/p)."""
    u = make_step([(0.5, line_set([[0.0, 0.5]])), (1.0, line_set([[0.0, 0.0]]))])
    v = make_step([(0.5, line_set([[0.0, 0.5]])), (1.0, line_set([[0.5, 0.5]]))])
    return u, v


def _line_singleton(x: float):
    return singleton(GroundPoint(LINE, x))


def audit_pack():
    """Named pairs for the audit command: the two equality-attaining pairs
    plus singleton pairs on every backend with generic distances."""
    pairs = [("taper", *taper_pair()), ("split-top", *split_top_pair())]
    pairs.append(("singleton-line", _line_singleton(0.0), _line_singleton(0.7)))
    sp2 = EuclideanSpace(2)
    pairs.append(
        (
            "singleton-plane",
            singleton(GroundPoint(sp2, (0.0, 0.0))),
            singleton(GroundPoint(sp2, (0.9, 0.9))),
        )
    )
    spm = MatrixSpace([[0.0, 0.6], [0.6, 0.0]])
    pairs.append(
        (
            "singleton-finite",
            singleton(GroundPoint(spm, 0)),
            singleton(GroundPoint(spm, 1)),
        )
    )
    sp1 = EuclideanSpace(1)
    pu = product_fuzzy([_line_singleton(0.0), singleton(GroundPoint(sp1, (0.3,)))])
    pv = product_fuzzy([_line_singleton(0.4), singleton(GroundPoint(sp1, (0.0,)))])
    pairs.append(("singleton-product", pu, pv))
    return pairs


# ---------------------------------------------------------------------------
# families


def growing_support_family(K: int) -> Family:
    """Truncations with supports [-m,m] stacked on harmonic levels;
    d_1 to the zero singleton equals the K-th harmonic number."""
    if K < 1:
        raise DomainError(f"K must be >= 1, got {K}")
    members = []
    for k in range(1, K + 1):
        levels = [(1.0 / m, line_set([[-float(m), float(m)]])) for m in range(k, 1, -1)]
        levels.append((1.0, line_set([[-1.0, 1.0]])))
        members.append(make_step(levels))
    return Family(members, name="growing-support", labels=[str(k) for k in range(1, K + 1)], sampled=True)


def spike_family(N: int) -> Family:
    """Members with a [0,n] spike below level 1/n; the left-continuity
    modulus grows like (n-1)h, so no uniform threshold works."""
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    members = []
    for n in range(1, N + 1):
        if n == 1:
            members.append(make_step([(1.0, line_set([[0.0, 1.0]]))]))
        else:
            members.append(
                make_step([(1.0 / n, line_set([[0.0, float(n)]])), (1.0, line_set([[0.0, 1.0]]))])
            )
    return Family(members, name="spike", labels=[str(n) for n in range(1, N + 1)], sampled=True)


def sliding_jump_family(ts=None) -> Family:
    """One unit-size jump at a sliding position t; d_1 between members is
    exactly |s-t|, and the modulus is h^(1/p) well inside the range."""
    if ts is None:
        ts = np.round(np.arange(1, 10) * 0.1, 10)
    members, labels = [], []
    for t in ts:
        t = float(t)
        if not 0.0 < t < 1.0:
            raise DomainError(f"jump position must lie in (0,1), got {t}")
        members.append(
            make_step([(t, line_set([[0.0, 2.0]])), (1.0, line_set([[0.0, 1.0]]))])
        )
        labels.append(f"{t:g}")
    return Family(members, name="sliding-jump", labels=labels, sampled=True)


# ---------------------------------------------------------------------------
# sequences with limits


def shrinking_jump(N: int):
    """Members jump at 0.5 + 1/n against a limit jumping at 0.5: the
    endograph distance decays like 1/n while d_inf stays 1."""
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    members, labels = [], []
    for n in range(2, N + 2):
        jump = 0.5 + 1.0 / n
        if jump >= 1.0:
            members.append(make_step([(1.0, line_set([[0.0, 2.0]]))]))
        else:
            members.append(
                make_step([(jump, line_set([[0.0, 2.0]])), (1.0, line_set([[0.0, 1.0]]))])
            )
        labels.append(str(n))
    limit = make_step([(0.5, line_set([[0.0, 2.0]])), (1.0, line_set([[0.0, 1.0]]))])
    seq = Family(members, name="shrinking-jump", labels=labels, sampled=True)
    return seq, limit


def uniform_shrink(N: int):
    """Characteristic sets of [0, 1+1/n] closing on [0,1]: every metric
    tends to zero at rate 1/n."""
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    members = [
        make_step([(1.0, line_set([[0.0, 1.0 + 1.0 / n]]))]) for n in range(1, N + 1)
    ]
    limit = make_step([(1.0, line_set([[0.0, 1.0]]))])
    seq = Family(members, name="uniform-shrink", labels=[str(n) for n in range(1, N + 1)], sampled=True)
    return seq, limit


# ---------------------------------------------------------------------------
# registry


FAMILY_FIXTURES = {
    "growing-support": lambda K=20, **kw: growing_support_family(int(K)),
    "spike": lambda N=50, **kw: spike_family(int(N)),
    "sliding-jump": lambda ts=None, **kw: sliding_jump_family(ts),
}

SEQUENCE_FIXTURES = {
    "shrinking-jump": lambda N=64, **kw: shrinking_jump(int(N)),
    "uniform-shrink": lambda N=64, **kw: uniform_shrink(int(N)),
}

PAIR_FIXTURES = {
    "taper": taper_pair,
    "split-top": split_top_pair,
}


def fixture_names() -> dict:
    return {
        "pairs": sorted(PAIR_FIXTURES),
        "audit_pack": [name for name, _, _ in audit_pack()],
        "families": sorted(FAMILY_FIXTURES),
        "sequences": sorted(SEQUENCE_FIXTURES),
    }
