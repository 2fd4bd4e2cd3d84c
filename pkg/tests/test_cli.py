import json

import numpy as np
import pytest

from fuzzmetrics import cli
from fuzzmetrics.fixtures import taper_pair
from fuzzmetrics.fuzzy import fuzzy_from_json, fuzzy_to_json, make_step
from fuzzmetrics.ground import line_set
from fuzzmetrics.rand import rand_step_pair


def _write_pair(tmp_path, name_u="u.json", name_v="v.json"):
    u, v = taper_pair()
    pu = tmp_path / name_u
    pv = tmp_path / name_v
    pu.write_text(json.dumps(fuzzy_to_json(u)))
    pv.write_text(json.dumps(fuzzy_to_json(v)))
    return str(pu), str(pv)


def test_dist_dp_value(tmp_path, capsys):
    pu, pv = _write_pair(tmp_path)
    rc = cli.main(["dist", "--metric", "dp", "--p", "1", pu, pv])
    out = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert out["results"][0]["value"] == pytest.approx(0.125, abs=1e-9)
    assert out["results"][0]["exact"] is True


def test_dist_multiple_metrics(tmp_path, capsys):
    pu, pv = _write_pair(tmp_path)
    rc = cli.main(["dist", "--metric", "dp,dinf,hend,hendmax,hsend,hsendmax", "--p", "1,2", pu, pv])
    out = json.loads(capsys.readouterr().out)
    assert rc == 0
    by = {}
    for r in out["results"]:
        by.setdefault(r["metric"], []).append(r["value"])
    assert len(by["dp"]) == 2
    assert by["hend"][0] == pytest.approx(0.5, abs=1e-9)
    assert by["hendmax"][0] == pytest.approx(0.25, abs=1e-9)


def test_dist_sets_mode(tmp_path, capsys):
    A = line_set([(0.0, 1.0)])
    B = line_set([(0.0, 3.0)])
    pa, pb = tmp_path / "a.json", tmp_path / "b.json"
    pa.write_text(json.dumps(A.to_json()))
    pb.write_text(json.dumps(B.to_json()))
    rc = cli.main(["dist", "--sets", "--metric", "hausdorff", str(pa), str(pb)])
    out = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert out["results"][0]["value"] == pytest.approx(2.0)


def test_dist_self_is_zero(tmp_path, capsys):
    pu, _ = _write_pair(tmp_path)
    rc = cli.main(["dist", "--metric", "dp", "--p", "1", pu, pu])
    out = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert out["results"][0]["value"] == 0.0


def test_dist_parse_error_exit2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    pu, _ = _write_pair(tmp_path)
    assert cli.main(["dist", pu, str(bad)]) == 2
    assert cli.main(["dist", pu, str(tmp_path / "missing.json")]) == 2
    assert cli.main(["dist", "--metric", "nope", pu, pu]) == 2
    assert cli.main(["dist", "--metric", "hausdorff", pu, pu]) == 2


def test_dist_domain_error_exit3(tmp_path, capsys):
    pu, _ = _write_pair(tmp_path)
    rng = np.random.default_rng(0)
    w, _ = rand_step_pair(rng, "matrix")
    pw = tmp_path / "w.json"
    pw.write_text(json.dumps(fuzzy_to_json(w)))
    assert cli.main(["dist", pu, str(pw)]) == 3
    assert cli.main(["dist", "--p", "0.5", pu, pu]) == 3


def test_tol_flag_validation(capsys):
    assert cli.main(["--tol", "-1", "fixture", "--list"]) == 3


def test_audit_fixture_pack(capsys):
    rc = cli.main(["audit", "--fixtures"])
    out = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert out["total_violations"] == 0
    assert out["total_equality_flags"] == 2


def test_audit_random_deterministic(capsys):
    rc1 = cli.main(["audit", "--random", "12", "--seed", "7"])
    out1 = capsys.readouterr().out
    rc2 = cli.main(["audit", "--random", "12", "--seed", "7"])
    out2 = capsys.readouterr().out
    assert rc1 == rc2 == 0
    assert out1 == out2
    cli.main(["audit", "--random", "12", "--seed", "8"])
    out3 = capsys.readouterr().out
    assert out3 != out1


def test_audit_pair_and_dir(tmp_path, capsys):
    pu, pv = _write_pair(tmp_path)
    assert cli.main(["audit", pu, pv]) == 0
    capsys.readouterr()
    u, v = taper_pair()
    pair = {"u": fuzzy_to_json(u), "v": fuzzy_to_json(v)}
    d = tmp_path / "pairs"
    d.mkdir()
    (d / "one.json").write_text(json.dumps(pair))
    assert cli.main(["audit", "--dir", str(d)]) == 0
    capsys.readouterr()
    empty = tmp_path / "empty"
    empty.mkdir()
    assert cli.main(["audit", "--dir", str(empty)]) == 2


def test_audit_violation_exit4(monkeypatch, capsys):
    fake = {
        "rows": [],
        "metrics": {},
        "summary": {"violations": 1, "equality_flags": 0, "all_pass": False},
    }
    monkeypatch.setattr(cli, "inequality_audit", lambda u, v, ps: fake)
    assert cli.main(["audit", "--fixtures"]) == 4


def test_family_fixture_json_and_csv(tmp_path, capsys):
    rc = cli.main(["family", "--fixture", "spike", "--N", "50", "--p", "1"])
    out = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert out["size"] == 50
    assert out["equi"]["pass"] is False
    outfile = tmp_path / "rep.csv"
    rc = cli.main(
        ["family", "--fixture", "spike", "--N", "6", "--p", "1", "--format", "csv", "--out", str(outfile)]
    )
    assert rc == 0
    assert "moduli," in outfile.read_text()


def test_family_from_file(tmp_path, capsys):
    rng = np.random.default_rng(1)
    members = [fuzzy_to_json(rand_step_pair(rng, "line")[0]) for _ in range(3)]
    f = tmp_path / "fam.json"
    f.write_text(json.dumps({"members": members, "name": "adhoc"}))
    rc = cli.main(["family", str(f), "--p", "1", "--h-grid", "0.5,0.25", "--eps", "1.0"])
    out = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert out["family"] == "adhoc"
    assert len(out["moduli"]) == 3 * 2


def test_family_unknown_fixture_exit2(capsys):
    assert cli.main(["family", "--fixture", "nope"]) == 2
    assert cli.main(["family"]) == 2


def test_converge_fixture(capsys):
    rc = cli.main(["converge", "--fixture", "shrinking-jump", "--N", "8", "--p", "2"])
    out = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert out["hend"][0] >= out["hend"][-1]
    assert out["dpe_bound_ok"] is True
    rc = cli.main(["converge", "--fixture", "uniform-shrink"])
    out2 = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert out2["dp_to_zero"] is True and out2["hend_to_zero"] is True


def test_converge_from_file(tmp_path, capsys):
    seq = {
        "members": [
            fuzzy_to_json(make_step([(1.0, line_set([(0.0, 1.0 + 1.0 / n)]))]))
            for n in range(1, 6)
        ],
        "limit": fuzzy_to_json(make_step([(1.0, line_set([(0.0, 1.0)]))])),
    }
    f = tmp_path / "seq.json"
    f.write_text(json.dumps(seq))
    assert cli.main(["converge", str(f)]) == 0


def test_fixture_list_and_dump(capsys):
    rc = cli.main(["fixture", "--list"])
    names = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert "taper" in names["pairs"]
    assert "spike" in names["families"]
    assert "shrinking-jump" in names["sequences"]


def test_fixture_pair_roundtrip(capsys):
    rc = cli.main(["fixture", "taper"])
    obj = json.loads(capsys.readouterr().out)
    assert rc == 0
    u, v = taper_pair()
    assert fuzzy_from_json(obj["u"]) == u
    assert fuzzy_from_json(obj["v"]) == v


def test_fixture_family_and_sequence_dump(tmp_path, capsys):
    rc = cli.main(["fixture", "growing-support", "--K", "4"])
    obj = json.loads(capsys.readouterr().out)
    assert rc == 0 and len(obj["members"]) == 4
    for m in obj["members"]:
        fuzzy_from_json(m)
    outfile = tmp_path / "seq.json"
    rc = cli.main(["fixture", "shrinking-jump", "--N", "4", "--out", str(outfile)])
    assert rc == 0
    stored = json.loads(outfile.read_text())
    assert stored["kind"] == "sequence" and "limit" in stored


def test_fixture_unknown_exit2(capsys):
    assert cli.main(["fixture", "definitely-not-a-fixture"]) == 2


def test_family_determinism(capsys):
    cli.main(["family", "--fixture", "sliding-jump", "--p", "1"])
    out1 = capsys.readouterr().out
    cli.main(["family", "--fixture", "sliding-jump", "--p", "1"])
    out2 = capsys.readouterr().out
    assert out1 == out2
