import math

import numpy as np
import pytest

from fuzzmetrics import bands
from fuzzmetrics.fixtures import audit_pack, split_top_pair, taper_pair
from fuzzmetrics.fuzzy import make_step, product_fuzzy, singleton
from fuzzmetrics.ground import DomainError, GroundPoint, LINE, line_point, line_set
from fuzzmetrics.hausdorff import hausdorff
from fuzzmetrics.metrics import (
    Kind,
    cutwise_profile,
    d_infty,
    d_p,
    h_end,
    h_send,
    inequality_audit,
)
from fuzzmetrics.rand import (
    rand_linear,
    rand_product_fuzzy_pair,
    rand_step_euclidean,
    rand_step_line,
    rand_step_pair,
)
from fuzzmetrics.ground import EuclideanSpace


def test_metric_result_fields():
    u, v = split_top_pair()
    r = d_p(u, v, 2.0)
    assert r.exact is True
    assert r.error_bound == 0.0
    assert float(r) == r.value
    j = r.to_json()
    assert j["value"] == r.value and j["exact"] is True


def test_p_below_one_rejected():
    u, v = split_top_pair()
    with pytest.raises(DomainError):
        d_p(u, v, 0.5)


def test_identity_and_symmetry():
    rng = np.random.default_rng(200)
    for backend in ("line", "euclidean", "matrix"):
        u, v = rand_step_pair(rng, backend)
        assert float(d_p(u, u, 2.0)) == 0.0
        assert float(h_end(u, u)) == 0.0
        assert float(d_p(u, v, 2.0)) == pytest.approx(float(d_p(v, u, 2.0)), abs=1e-12)
        assert float(h_end(u, v)) == pytest.approx(float(h_end(v, u)), abs=1e-12)
        assert float(h_send(u, v, Kind.MAX)) == pytest.approx(
            float(h_send(v, u, Kind.MAX)), abs=1e-12
        )


def test_dp_monotone_in_p():
    rng = np.random.default_rng(201)
    for _ in range(40):
        u, v = rand_step_pair(rng, "line")
        d1 = float(d_p(u, v, 1.0))
        d2 = float(d_p(u, v, 2.0))
        d4 = float(d_p(u, v, 4.0))
        di = float(d_infty(u, v))
        assert d1 <= d2 + 1e-9 and d2 <= d4 + 1e-9 and d4 <= di + 1e-9


def test_dinf_is_sup_of_profile():
    rng = np.random.default_rng(202)
    for _ in range(40):
        u, v = rand_step_pair(rng, "line")
        breaks, vals = cutwise_profile(u, v)
        assert float(d_infty(u, v)) == pytest.approx(max(vals), abs=1e-12)


def test_triangle_small_scale():
    rng = np.random.default_rng(203)
    for backend in ("line", "euclidean"):
        for _ in range(100):
            u, _ = rand_step_pair(rng, backend)
            sp_u = u.space
            if backend == "line":
                v, w = rand_step_line(rng), rand_step_line(rng)
            else:
                v = rand_step_euclidean(rng, sp_u)
                w = rand_step_euclidean(rng, sp_u)
            for f in (
                lambda a, b: float(d_p(a, b, 2.0)),
                lambda a, b: float(d_infty(a, b)),
                lambda a, b: float(h_end(a, b, Kind.SUM)),
                lambda a, b: float(h_end(a, b, Kind.MAX)),
            ):
                assert f(u, w) <= f(u, v) + f(v, w) + 1e-9


def test_band_path_matches_kernel_on_step_pairs():
    # the exact band machinery must agree with the step kernels bit-for-bit
    rng = np.random.default_rng(204)
    for _ in range(12):
        u, v = rand_step_pair(rng, "line")
        for kind, slab in ((Kind.SUM, True), (Kind.MAX, True), (Kind.SUM, False), (Kind.MAX, False)):
            exact = bands.graph_hausdorff_exact(u, v, kind == Kind.MAX, slab)
            fast = float(
                (h_end if slab else h_send)(u, v, kind)
            )
            assert exact == pytest.approx(fast, abs=1e-9)


def test_band_dp_matches_segment_sum_on_step_pairs():
    rng = np.random.default_rng(205)
    for _ in range(12):
        u, v = rand_step_pair(rng, "line")
        assert bands.dp_profile(u, v, 2.0) == pytest.approx(float(d_p(u, v, 2.0)), abs=1e-12)


def test_linear_pair_against_discretization():
    # fine step discretizations approach the exact linear-pair values
    rng = np.random.default_rng(206)
    from fuzzmetrics.fuzzy import discretize_linear

    for _ in range(6):
        u = rand_linear(rng)
        v = rand_linear(rng)
        exact = float(d_p(u, v, 2.0))
        approx = float(d_p(discretize_linear(u, 512), discretize_linear(v, 512), 2.0))
        assert abs(exact - approx) < 2e-2


def test_crisp_endograph_closed_form():
    # for singletons the endograph distance is min(d, 1) in both variants
    for dval in (0.3, 0.9, 2.5):
        u = singleton(line_point(0.0))
        v = singleton(line_point(dval))
        want = min(dval, 1.0)
        assert float(h_end(u, v, Kind.SUM)) == pytest.approx(want, abs=1e-12)
        assert float(h_end(u, v, Kind.MAX)) == pytest.approx(want, abs=1e-12)
        assert float(h_send(u, v, Kind.SUM)) == pytest.approx(dval, abs=1e-12)


def test_product_constant_component_reduces():
    # gluing an identical crisp component onto both sides changes nothing
    rng = np.random.default_rng(207)
    sp = EuclideanSpace(2)
    for _ in range(8):
        u = rand_step_euclidean(rng, sp, max_levels=2, max_pts=3)
        v = rand_step_euclidean(rng, sp, max_levels=2, max_pts=3)
        c = singleton(GroundPoint(sp, (0.0, 0.0)))
        pu = product_fuzzy([u, c])
        pv = product_fuzzy([v, c])
        for kind in (Kind.SUM, Kind.MAX):
            assert float(h_end(pu, pv, kind)) == pytest.approx(
                float(h_end(u, v, kind)), abs=1e-9
            )
        assert float(d_p(pu, pv, 2.0)) == pytest.approx(float(d_p(u, v, 2.0)), abs=1e-12)


def test_graph_metric_requires_enumerable_product():
    u = product_fuzzy([make_step([(1.0, line_set([(0.0, 1.0)]))])])
    with pytest.raises(DomainError, match="enumerable"):
        h_end(u, u)


def test_fixture_pack_audit_flags():
    for name, u, v in audit_pack():
        rep = inequality_audit(u, v, [1.0, 2.0, 3.0])
        assert rep["summary"]["violations"] == 0, name
        eq_names = {
            (r["name"], r["p"]) for r in rep["rows"] if r["equality_case"] and r["name"] in ("dpe", "dperym")
        }
        if name == "taper":
            assert eq_names == {("dpe", 1.0), ("dpe", 2.0), ("dpe", 3.0)}
        elif name == "split-top":
            assert eq_names == {("dperym", 1.0), ("dperym", 2.0), ("dperym", 3.0)}
        else:
            assert eq_names == set(), name


def test_audit_row_shape():
    u, v = taper_pair()
    rep = inequality_audit(u, v, [1.0, 2.0])
    assert len(rep["rows"]) == 2 + 3 * 2 + 4
    for row in rep["rows"]:
        assert {"name", "lhs", "rhs", "slack", "pass", "equality_case"} <= set(row)
        assert row["pass"] is (row["slack"] >= -1e-9)
    assert rep["summary"]["all_pass"]


def test_audit_on_random_product_pairs():
    rng = np.random.default_rng(208)
    for _ in range(10):
        u, v = rand_product_fuzzy_pair(rng)
        rep = inequality_audit(u, v, [1.0, 2.0])
        assert rep["summary"]["violations"] == 0


def test_hend_bounded_by_one():
    rng = np.random.default_rng(209)
    for _ in range(60):
        u, v = rand_step_pair(rng, "line")
        assert float(h_end(u, v, Kind.SUM)) <= 1.0 + 1e-12
        assert float(h_end(u, v, Kind.MAX)) <= 1.0 + 1e-12


def test_backend_mismatch_fuzzy():
    from fuzzmetrics.ground import BackendMismatch

    u = make_step([(1.0, line_set([(0.0, 1.0)]))])
    rng = np.random.default_rng(210)
    v = rand_step_euclidean(rng, EuclideanSpace(2))
    with pytest.raises(BackendMismatch):
        d_p(u, v, 2.0)
