import numpy as np
import pytest

from fuzzmetrics.fuzzy import (
    LinearFuzzyNumber,
    characteristic,
    discretize_linear,
    endograph,
    fuzzy_from_json,
    fuzzy_to_json,
    make_step,
    product_fuzzy,
    sendograph,
    singleton,
    truncate,
    zero_extend,
)
from fuzzmetrics.ground import (
    LINE,
    DomainError,
    GroundPoint,
    MatrixSpace,
    line_point,
    line_set,
    matrix_set,
)
from fuzzmetrics.rand import rand_linear, rand_step_line, rand_step_pair


def test_make_step_validates_levels():
    with pytest.raises(DomainError):
        make_step([])
    with pytest.raises(DomainError, match="level 0"):
        make_step([(0.0, line_set([(0.0, 1.0)]))])
    with pytest.raises(DomainError, match="level 1"):
        make_step([(0.5, line_set([(0.0, 1.0)])), (0.5, line_set([(0.0, 1.0)]))])
    with pytest.raises(DomainError, match="must be 1"):
        make_step([(0.5, line_set([(0.0, 1.0)]))])


def test_make_step_validates_nesting():
    with pytest.raises(DomainError, match="not contained"):
        make_step(
            [(0.5, line_set([(0.0, 1.0)])), (1.0, line_set([(2.0, 3.0)]))]
        )


def test_cut_segment_convention():
    u = make_step([(0.5, line_set([(0.0, 2.0)])), (1.0, line_set([(0.0, 1.0)]))])
    assert np.allclose(u.cut(0.5).ivals, [[0.0, 2.0]])
    assert np.allclose(u.cut(0.5 + 1e-12).ivals, [[0.0, 1.0]])
    assert np.allclose(u.cut(0.2).ivals, [[0.0, 2.0]])
    assert np.allclose(u.cut(1.0).ivals, [[0.0, 1.0]])
    # cut at 0 is the closure of the support: the lowest stored cut
    assert np.allclose(u.cut(0.0).ivals, [[0.0, 2.0]])
    with pytest.raises(DomainError):
        u.cut(1.5)


def test_cut_left_constancy():
    # cuts are constant on each (gamma_{i-1}, gamma_i] segment
    rng = np.random.default_rng(5)
    for _ in range(50):
        u = rand_step_line(rng)
        gam = u.gammas
        lows = np.concatenate([[0.0], gam[:-1]])
        for g0, g1 in zip(lows, gam):
            mid = 0.5 * (g0 + g1)
            assert u.cut(mid) == u.cut(g1)


def test_membership_step():
    u = make_step([(0.4, line_set([(0.0, 3.0)])), (1.0, line_set([(0.0, 1.0)]))])
    assert u.membership(line_point(0.5)) == 1.0
    assert u.membership(line_point(2.0)) == pytest.approx(0.4)
    assert u.membership(line_point(5.0)) == 0.0


def test_nesting_property_random():
    rng = np.random.default_rng(6)
    for _ in range(200):
        u = rand_step_line(rng)
        for c_lo, c_hi in zip(u.cuts[:-1], u.cuts[1:]):
            assert c_hi.subset_of(c_lo)


def test_merge_equal_adjacent_cuts():
    S = line_set([(0.0, 1.0)])
    u = make_step([(0.3, S), (0.7, S), (1.0, line_set([(0.0, 0.5)]))])
    assert len(u.gammas) == 2
    assert u.gammas[0] == pytest.approx(0.7)


def test_singleton_and_characteristic():
    s = singleton(line_point(2.0))
    assert np.allclose(s.cut(0.7).ivals, [[2.0, 2.0]])
    c = characteristic(line_set([(0.0, 1.0)]))
    assert np.allclose(c.cut(0.2).ivals, [[0.0, 1.0]])


def test_linear_fuzzy_number_basics():
    u = LinearFuzzyNumber([(0.0, 0.0, 2.0), (1.0, 1.0, 1.0)])
    assert np.allclose(u.cut(0.5).ivals, [[0.5, 1.5]])
    assert np.allclose(u.cut(0.0).ivals, [[0.0, 2.0]])
    assert np.allclose(u.cut(1.0).ivals, [[1.0, 1.0]])
    assert u.membership(line_point(0.5)) == pytest.approx(0.5)
    assert u.membership(line_point(1.0)) == 1.0
    assert u.membership(line_point(3.0)) == 0.0


def test_linear_validation():
    with pytest.raises(DomainError):
        LinearFuzzyNumber([(0.0, 0.0, 1.0)])  # single knot
    with pytest.raises(DomainError):
        LinearFuzzyNumber([(0.0, 0.0, 1.0), (0.9, 0.0, 1.0)])  # no knot at 1
    with pytest.raises(DomainError):
        LinearFuzzyNumber([(0.0, 1.0, 0.0), (1.0, 1.0, 1.0)])  # hi < lo
    with pytest.raises(DomainError):
        LinearFuzzyNumber([(0.0, 1.0, 2.0), (1.0, 0.0, 2.0)])  # lo decreasing


def test_linear_membership_matches_cut_inclusion():
    rng = np.random.default_rng(7)
    for _ in range(40):
        u = rand_linear(rng)
        for x in rng.uniform(u.lo[0] - 1.0, u.hi[0] + 1.0, 12):
            m = u.membership(line_point(float(x)))
            if m > 1e-9:
                assert line_point(float(x)) in u.cut(m - 1e-12 if m > 1e-12 else m)
            if m < 1.0 - 1e-9:
                assert line_point(float(x)) not in u.cut(min(1.0, m + 1e-6))


def test_discretize_linear_outer_contains_cuts():
    rng = np.random.default_rng(8)
    for _ in range(20):
        u = rand_linear(rng)
        w = discretize_linear(u, 64, outer=True)
        for a in rng.uniform(1e-6, 1.0, 16):
            assert u.cut(float(a)).subset_of(w.cut(float(a)))


def test_endograph_and_sendograph_structure():
    u = make_step([(0.5, line_set([(0.0, 2.0)])), (1.0, line_set([(0.0, 1.0)]))])
    E = endograph(u)
    S = sendograph(u)
    assert E.has_base_slab and not S.has_base_slab
    assert E.contains(line_point(5.0), 0.0)  # base slab covers everything at 0
    assert not S.contains(line_point(5.0), 0.0)
    assert S.contains(line_point(2.0), 0.3)
    assert not S.contains(line_point(2.0), 0.7)
    assert E.contains(line_point(0.5), 1.0)


def test_endograph_monotone_iff_cutwise():
    # u <= v cutwise exactly when the endograph of u sits inside that of v
    u = make_step([(1.0, line_set([(0.0, 1.0)]))])
    v = make_step([(1.0, line_set([(0.0, 2.0)]))])
    Eu, Ev = endograph(u), endograph(v)
    rng = np.random.default_rng(9)
    for _ in range(100):
        x, t = float(rng.uniform(-1, 3)), float(rng.uniform(0, 1))
        if Eu.contains(line_point(x), t):
            assert Ev.contains(line_point(x), t)


def test_truncate():
    u = make_step([(0.3, line_set([(0.0, 3.0)])), (1.0, line_set([(0.0, 1.0)]))])
    t = truncate(u, 0.5)
    assert len(t.gammas) == 1
    assert np.allclose(t.cut(0.2).ivals, [[0.0, 1.0]])
    with pytest.raises(DomainError):
        truncate(u, 0.0)
    with pytest.raises(DomainError):
        truncate(u, 1.0)


def test_zero_extend_preserves_distances():
    X = MatrixSpace([[0.0, 1.0], [1.0, 0.0]])
    Y = MatrixSpace([[0.0, 1.0, 5.0], [1.0, 0.0, 5.0], [5.0, 5.0, 0.0]])
    u = make_step([(1.0, matrix_set(X, [0, 1]))])
    w = zero_extend(u, Y)
    assert np.array_equal(w.cut(1.0).indices, [0, 1])
    Ybad = MatrixSpace([[0.0, 2.0, 5.0], [2.0, 0.0, 5.0], [5.0, 5.0, 0.0]])
    with pytest.raises(DomainError, match="preserve"):
        zero_extend(u, Ybad)


def test_product_fuzzy_cut_is_product_of_cuts():
    rng = np.random.default_rng(10)
    u1, v1 = rand_step_pair(rng, "euclidean")
    P = product_fuzzy([u1, v1])
    for a in (0.2, 0.6, 1.0):
        parts = P.cut(a).parts
        assert parts[0] == u1.cut(a)
        assert parts[1] == v1.cut(a)


def test_json_roundtrip_step():
    rng = np.random.default_rng(12)
    for _ in range(25):
        u = rand_step_line(rng)
        assert fuzzy_from_json(fuzzy_to_json(u)) == u


def test_json_roundtrip_step_matrix():
    rng = np.random.default_rng(13)
    u, _ = rand_step_pair(rng, "matrix")
    assert fuzzy_from_json(fuzzy_to_json(u)) == u


def test_json_roundtrip_linear():
    rng = np.random.default_rng(14)
    for _ in range(25):
        u = rand_linear(rng)
        assert fuzzy_from_json(fuzzy_to_json(u)) == u


def test_json_malformed_names_offender():
    u = rand_step_line(np.random.default_rng(15))
    obj = fuzzy_to_json(u)
    obj["levels"][0]["alpha"] = 2.0
    with pytest.raises(DomainError, match="level 0"):
        fuzzy_from_json(obj)
