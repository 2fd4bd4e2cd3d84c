import math

import numpy as np
import pytest

from fuzzmetrics.diagnostics import (
    Family,
    compactness_report,
    convergence_report,
    default_alpha_grid,
    dp_tail,
    equi_left_continuity,
    greedy_epsilon_net,
    omega_p,
    shift_subadditivity_check,
    support_union,
    uniform_p_mean_bounded,
)
from fuzzmetrics.fixtures import (
    growing_support_family,
    sliding_jump_family,
    spike_family,
    uniform_shrink,
)
from fuzzmetrics.fuzzy import characteristic, make_step, singleton
from fuzzmetrics.ground import DomainError, line_point, line_set
from fuzzmetrics.hausdorff import hausdorff
from fuzzmetrics.rand import rand_step_euclidean, rand_step_line
from fuzzmetrics.ground import EuclideanSpace


def _one_jump(t=0.5):
    return make_step([(t, line_set([(0.0, 2.0)])), (1.0, line_set([(0.0, 1.0)]))])


def test_omega_closed_form_single_jump():
    u = _one_jump(0.5)
    for p in (1.0, 2.0, 3.0):
        for h in (0.05, 0.2, 0.4):
            assert omega_p(u, h, p) == pytest.approx(h ** (1.0 / p), abs=1e-12)


def test_omega_trivial_cases():
    u = _one_jump()
    assert omega_p(u, 0.0, 2.0) == 0.0
    assert omega_p(u, 1.0, 2.0) == 0.0
    s = singleton(line_point(3.0))
    for h in (0.1, 0.5, 0.9):
        assert omega_p(s, h, 2.0) == 0.0
    with pytest.raises(DomainError):
        omega_p(u, -0.1, 2.0)
    with pytest.raises(DomainError):
        omega_p(u, 1.5, 2.0)


def test_omega_jump_budget_bound():
    # omega^p is at most (#jumps) * (max jump)^p * h for step sets
    rng = np.random.default_rng(300)
    for _ in range(30):
        u = rand_step_line(rng)
        jumps = [
            hausdorff(a, b) for a, b in zip(u.cuts[:-1], u.cuts[1:])
        ]
        if not jumps:
            continue
        big = max(jumps)
        for h in (0.03, 0.11):
            om = omega_p(u, h, 2.0)
            assert om**2 <= len(jumps) * big**2 * h + 1e-9


def test_omega_matches_riemann_window():
    rng = np.random.default_rng(301)
    for _ in range(8):
        u = rand_step_line(rng)
        h = 0.23
        om = omega_p(u, h, 1.0)
        N = 20000
        mids = h + (np.arange(N) + 0.5) * (1.0 - h) / N
        acc = sum(hausdorff(u.cut(float(a)), u.cut(float(a - h))) for a in mids)
        approx = acc * (1.0 - h) / N
        assert om == pytest.approx(approx, abs=0.02)


def test_omega_linear_is_smooth_small():
    # a linear fuzzy number has no jumps, so the modulus decays linearly
    u_lin = None
    from fuzzmetrics.rand import rand_linear

    rng = np.random.default_rng(302)
    u_lin = rand_linear(rng)
    vals = [omega_p(u_lin, h, 1.0) for h in (0.2, 0.1, 0.05)]
    assert vals[0] >= vals[1] >= vals[2]
    spread = u_lin.hi[0] - u_lin.lo[0] + 1.0
    assert vals[2] <= 0.05 * spread + 1e-9


def test_dp_tail_closed_form():
    u = characteristic(line_set([(0.0, 1.0)]))
    anchor = line_point(0.0)
    for p in (1.0, 2.0):
        for h1 in (0.0, 0.25, 0.5):
            assert dp_tail(u, anchor, h1, p) == pytest.approx(
                (1.0 - h1) ** (1.0 / p), abs=1e-12
            )


def test_equi_singletons_pass_with_delta_one():
    fam = Family([singleton(line_point(float(i))) for i in range(5)])
    ok, delta, witness = equi_left_continuity(fam, 2.0, 0.01)
    assert ok and delta == 1.0
    assert witness[2] == 0.0


def test_equi_spike_fails_every_delta():
    W = spike_family(50)
    ok, delta, witness = equi_left_continuity(W, 1.0, 0.01)
    assert not ok and delta == 0.0
    # witness is the largest-modulus member, which is the tallest spike
    assert witness[0] == 49


def test_equi_sliding_passes_with_small_delta():
    ts = np.round(np.arange(1, 100) * 0.01, 10)
    U = sliding_jump_family(ts)
    ok, delta, _ = equi_left_continuity(U, 1.0, 0.01)
    assert ok and delta == pytest.approx(2.0**-6)


def test_uniform_bound_singleton():
    fam = Family([singleton(line_point(3.0))])
    M, rep = uniform_p_mean_bounded(fam, 2.0, line_point(1.0))
    assert M == pytest.approx(2.0, abs=1e-12)
    assert rep["pairwise_le_2M"] and rep["probe_ok"]


def test_uniform_bound_growing_support_matches_harmonic():
    fam = growing_support_family(12)
    M, rep = uniform_p_mean_bounded(fam, 1.0, line_point(0.0))
    want = sum(1.0 / m for m in range(1, 13))
    assert M == pytest.approx(want, abs=1e-9)
    assert rep["pairwise_le_2M"] and rep["probe_ok"]


def test_support_union_basics():
    fam = Family([singleton(line_point(0.0)), singleton(line_point(2.0))])
    S, rep = support_union(fam, 1.0)
    assert np.allclose(S.ivals, [[0.0, 0.0], [2.0, 2.0]])
    assert rep["bounded"] and rep["totally_bounded"]
    with pytest.raises(DomainError):
        support_union(fam, 0.0)


def test_support_union_spike_growth():
    W = spike_family(20)
    S, _ = support_union(W, 0.6)
    assert np.allclose(S.ivals, [[0.0, 1.0]])
    S2, _ = support_union(W, 1.0 / 40.0)
    assert S2.ivals[-1, 1] == pytest.approx(20.0)


def test_greedy_net_trivial_and_sound():
    fam = Family([singleton(line_point(0.0))])
    assert greedy_epsilon_net(fam, 0.5) == [0]
    pts = Family([singleton(line_point(0.2 * i)) for i in range(10)])
    net = greedy_epsilon_net(pts, 0.5, metric="dp", p=1.0)
    # soundness is rescanned inside; spot-check the 2-approximation shape
    assert 1 <= len(net) <= 5
    with pytest.raises(DomainError):
        greedy_epsilon_net(pts, -1.0)
    with pytest.raises(DomainError):
        greedy_epsilon_net(pts, 0.5, metric="nope")


def test_compactness_report_singletons():
    rng = np.random.default_rng(303)
    fam = Family([singleton(line_point(float(x))) for x in rng.uniform(0, 1, 20)])
    rep = compactness_report(fam, p=1.0)
    assert rep.equi["pass"]
    assert rep.checks["consistent"]
    for net in rep.nets:
        assert net["size"] <= math.ceil(1.0 / net["eps"]) + 1


def test_compactness_report_spike_consistent_failure():
    # 50 members push the smallest-grid modulus (n-1)*2^-12 past eps=0.01
    W = spike_family(50)
    rep = compactness_report(W, p=1.0)
    assert not rep.equi["pass"]
    assert rep.checks["bounded_all"]
    assert rep.checks["consistent"]
    sizes = [n["size"] for n in rep.nets]
    assert all(s >= 1 for s in sizes)


def test_compactness_report_csv_shape():
    fam = Family([singleton(line_point(0.0)), singleton(line_point(1.0))])
    rep = compactness_report(fam, p=1.0)
    text = rep.to_csv()
    lines = text.strip().splitlines()
    n_mod = sum(1 for ln in lines if ln.startswith("moduli,"))
    n_net = sum(1 for ln in lines if ln.startswith("nets,"))
    assert n_mod == 2 * 12
    assert n_net == 3
    data = rep.to_json()
    assert data["size"] == 2 and data["tag"] == "exact"


def test_shift_subadditivity():
    u = _one_jump(0.5)
    rep = shift_subadditivity_check(u, 0.4, 2, 1.0)
    assert rep["omega"] == pytest.approx(0.4, abs=1e-12)
    assert rep["bound_sum_ok"] and rep["bound_N_ok"]
    rep1 = shift_subadditivity_check(u, 0.4, 1, 1.0)
    assert rep1["sum_parts"] == pytest.approx(rep1["omega"], abs=1e-12)
    s = singleton(line_point(0.0))
    rep0 = shift_subadditivity_check(s, 0.3, 3, 2.0)
    assert rep0["omega"] == 0.0 and rep0["sum_parts"] == 0.0
    with pytest.raises(DomainError):
        shift_subadditivity_check(u, 0.0, 2, 1.0)


def test_shift_subadditivity_random():
    rng = np.random.default_rng(304)
    for _ in range(15):
        u = rand_step_line(rng)
        rep = shift_subadditivity_check(u, float(rng.uniform(0.1, 0.9)), int(rng.integers(1, 5)), 2.0)
        assert rep["bound_sum_ok"] and rep["bound_N_ok"]


def test_convergence_constant_sequence():
    u = _one_jump(0.5)
    fam = Family([u, u, u])
    rep = convergence_report(fam, u, 2.0)
    assert all(x == 0.0 for x in rep["hend"])
    assert all(x == 0.0 for x in rep["dp"])
    assert rep["hend_to_zero"] and rep["dp_to_zero"] and rep["cutwise_to_zero"]
    assert rep["equiv_ok"] and rep["dp_implies_hend_ok"] and rep["dpe_bound_ok"]


def test_convergence_rejects_breakpoint_samples():
    seq, limit = uniform_shrink(4)
    fam = Family([_one_jump(0.5)])
    with pytest.raises(DomainError, match="0.5"):
        convergence_report(fam, _one_jump(0.5), 2.0, alpha_samples=[0.25, 0.5])


def test_default_alpha_grid_avoids_breakpoints():
    bps = [0.25, 0.5, 0.75]
    grid = default_alpha_grid(64, avoid=bps)
    assert len(grid) == 64
    for a in grid:
        assert all(abs(a - b) > 1e-9 for b in bps)
    # deterministic
    assert np.array_equal(grid, default_alpha_grid(64, avoid=bps))


def test_family_validation():
    with pytest.raises(DomainError):
        Family([])
    rng = np.random.default_rng(305)
    u = rand_step_line(rng)
    v = rand_step_euclidean(rng, EuclideanSpace(2))
    with pytest.raises(DomainError):
        Family([u, v])
    with pytest.raises(DomainError):
        Family([u], labels=["a", "b"])
