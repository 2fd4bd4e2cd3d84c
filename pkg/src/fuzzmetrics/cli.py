"""Command-line front end.

Exit codes: 0 success, 2 parse/usage error, 3 domain error (backend
mismatch, bad parameters), 4 inequality-audit violation.  Reports are
emitted as JSON with sorted keys (or CSV where supported), so identical
inputs and seeds produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import fixtures
from .diagnostics import Family, compactness_report, convergence_report, default_alpha_grid
from .fuzzy import fuzzy_from_json, fuzzy_to_json
from .ground import BackendMismatch, DomainError, set_from_json
from .hausdorff import hausdorff
from .metrics import Kind, d_infty, d_p, h_end, h_send, inequality_audit
from .rand import rand_step_pair


class ParseFailure(Exception):
    pass


def _floats(text: str) -> list:
    try:
        return [float(t) for t in text.split(",") if t.strip() != ""]
    except ValueError as e:
        raise ParseFailure(f"expected comma-separated numbers, got {text!r}") from e


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise ParseFailure(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ParseFailure(f"{path} is not valid JSON: {e}") from e


def _load_fuzzy(path: str):
    obj = _load_json(path)
    try:
        return fuzzy_from_json(obj)
    except (KeyError, TypeError) as e:
        raise ParseFailure(f"{path}: malformed fuzzy-set JSON ({e})") from e


def _load_set(path: str):
    obj = _load_json(path)
    try:
        return set_from_json(obj)
    except (KeyError, TypeError) as e:
        raise ParseFailure(f"{path}: malformed set JSON ({e})") from e


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _dump(args, obj) -> None:
    _emit(args, json.dumps(obj, sort_keys=True, indent=2))


# ---------------------------------------------------------------------------
# dist


_FUZZY_METRICS = ("dp", "dinf", "hend", "hendmax", "hsend", "hsendmax")


def cmd_dist(args) -> int:
    metrics = [m.strip() for m in args.metric.split(",") if m.strip()]
    if not metrics:
        raise ParseFailure("no metric requested")
    ps = _floats(args.p)
    results = []
    if args.sets:
        for m in metrics:
            if m != "hausdorff":
                raise ParseFailure(f"metric {m!r} needs fuzzy sets, not --sets")
        A = _load_set(args.left)
        B = _load_set(args.right)
        for _ in metrics:
            results.append({"metric": "hausdorff", "value": hausdorff(A, B), "exact": True})
    else:
        u = _load_fuzzy(args.left)
        v = _load_fuzzy(args.right)
        for m in metrics:
            if m == "hausdorff":
                raise ParseFailure("metric 'hausdorff' requires --sets")
            if m not in _FUZZY_METRICS:
                raise ParseFailure(f"unknown metric {m!r}")
            if m == "dp":
                for p in ps:
                    r = d_p(u, v, p)
                    results.append({"metric": "dp", "p": p, **r.to_json()})
            elif m == "dinf":
                results.append({"metric": "dinf", **d_infty(u, v).to_json()})
            elif m == "hend":
                results.append({"metric": "hend", **h_end(u, v, Kind.SUM).to_json()})
            elif m == "hendmax":
                results.append({"metric": "hendmax", **h_end(u, v, Kind.MAX).to_json()})
            elif m == "hsend":
                results.append({"metric": "hsend", **h_send(u, v, Kind.SUM).to_json()})
            else:
                results.append({"metric": "hsendmax", **h_send(u, v, Kind.MAX).to_json()})
    _dump(args, {"results": results})
    return 0


# ---------------------------------------------------------------------------
# audit


def _audit_pairs(args):
    if args.fixtures:
        return fixtures.audit_pack()
    if args.random is not None:
        if args.random < 1:
            raise ParseFailure("--random needs a positive count")
        rng = np.random.default_rng(args.seed)
        backends = ["line", "euclidean", "matrix"]
        pairs = []
        for i in range(args.random):
            u, v = rand_step_pair(rng, backends[i % 3])
            pairs.append((f"random-{i}", u, v))
        return pairs
    if args.dir is not None:
        files = sorted(Path(args.dir).glob("*.json"))
        if not files:
            raise ParseFailure(f"no pair files in {args.dir}")
        pairs = []
        for f in files:
            obj = _load_json(str(f))
            try:
                pairs.append((f.stem, fuzzy_from_json(obj["u"]), fuzzy_from_json(obj["v"])))
            except (KeyError, TypeError) as e:
                raise ParseFailure(f"{f}: malformed pair JSON ({e})") from e
        return pairs
    if args.left and args.right:
        return [("pair", _load_fuzzy(args.left), _load_fuzzy(args.right))]
    raise ParseFailure("audit needs two files, --dir, --fixtures, or --random N")


def cmd_audit(args) -> int:
    ps = _floats(args.p)
    pairs = _audit_pairs(args)
    reports = []
    violations = 0
    equalities = 0
    for name, u, v in pairs:
        rep = inequality_audit(u, v, ps)
        violations += rep["summary"]["violations"]
        equalities += rep["summary"]["equality_flags"]
        reports.append({"pair": name, **rep})
    _dump(
        args,
        {
            "pairs": reports,
            "total_violations": violations,
            "total_equality_flags": equalities,
        },
    )
    return 4 if violations else 0


# ---------------------------------------------------------------------------
# family / converge / fixture


def _family_from_args(args) -> Family:
    if args.fixture is not None:
        maker = fixtures.FAMILY_FIXTURES.get(args.fixture)
        if maker is None:
            raise ParseFailure(
                f"unknown family fixture {args.fixture!r}; use one of {sorted(fixtures.FAMILY_FIXTURES)}"
            )
        kw = {}
        if args.K is not None:
            kw["K"] = args.K
        if args.N is not None:
            kw["N"] = args.N
        return maker(**kw)
    if args.file is None:
        raise ParseFailure("family needs a file or --fixture NAME")
    obj = _load_json(args.file)
    if isinstance(obj, dict):
        members = obj.get("members")
        name = obj.get("name", Path(args.file).stem)
    else:
        members, name = obj, Path(args.file).stem
    if not isinstance(members, list) or not members:
        raise ParseFailure(f"{args.file}: expected a nonempty list of fuzzy sets")
    try:
        parsed = [fuzzy_from_json(m) for m in members]
    except (KeyError, TypeError) as e:
        raise ParseFailure(f"{args.file}: malformed member ({e})") from e
    return Family(parsed, name=name)


def cmd_family(args) -> int:
    fam = _family_from_args(args)
    h_grid = _floats(args.h_grid) if args.h_grid else None
    rep = compactness_report(
        fam,
        p=args.pval,
        eps_list=_floats(args.eps) if args.eps else None,
        alpha_grid=None if args.alpha_grid is None else default_alpha_grid(args.alpha_grid),
        h_grid=h_grid,
        modulus_eps=args.modulus_eps,
    )
    if args.format == "csv":
        _emit(args, rep.to_csv())
    else:
        _dump(args, rep.to_json())
    return 0


def cmd_converge(args) -> int:
    if args.fixture is not None:
        maker = fixtures.SEQUENCE_FIXTURES.get(args.fixture)
        if maker is None:
            raise ParseFailure(
                f"unknown sequence fixture {args.fixture!r}; use one of {sorted(fixtures.SEQUENCE_FIXTURES)}"
            )
        seq, limit = maker(N=args.N if args.N is not None else 64)
    else:
        if args.file is None:
            raise ParseFailure("converge needs a file or --fixture NAME")
        obj = _load_json(args.file)
        try:
            seq = Family([fuzzy_from_json(m) for m in obj["members"]])
            limit = fuzzy_from_json(obj["limit"])
        except (KeyError, TypeError) as e:
            raise ParseFailure(f"{args.file}: malformed sequence JSON ({e})") from e
    samples = None
    if args.alpha_grid is not None:
        bps = sorted(
            {g for w in list(seq.members) + [limit] for g in [float(x) for x in w.gammas]}
        )
        samples = default_alpha_grid(args.alpha_grid, avoid=bps)
    rep = convergence_report(seq, limit, p=args.pval, alpha_samples=samples)
    _dump(args, rep)
    return 0


def cmd_fixture(args) -> int:
    name = args.name
    if args.list or name is None:
        _dump(args, fixtures.fixture_names())
        return 0
    if name in fixtures.PAIR_FIXTURES:
        u, v = fixtures.PAIR_FIXTURES[name]()
        _dump(args, {"kind": "pair", "name": name, "u": fuzzy_to_json(u), "v": fuzzy_to_json(v)})
        return 0
    if name in fixtures.FAMILY_FIXTURES:
        kw = {}
        if args.K is not None:
            kw["K"] = args.K
        if args.N is not None:
            kw["N"] = args.N
        fam = fixtures.FAMILY_FIXTURES[name](**kw)
        _dump(
            args,
            {
                "kind": "family",
                "name": name,
                "labels": fam.labels,
                "members": [fuzzy_to_json(m) for m in fam.members],
            },
        )
        return 0
    if name in fixtures.SEQUENCE_FIXTURES:
        seq, limit = fixtures.SEQUENCE_FIXTURES[name](N=args.N if args.N is not None else 64)
        _dump(
            args,
            {
                "kind": "sequence",
                "name": name,
                "labels": seq.labels,
                "members": [fuzzy_to_json(m) for m in seq.members],
                "limit": fuzzy_to_json(limit),
            },
        )
        return 0
    raise ParseFailure(f"unknown fixture {name!r}; try 'fixture --list'")


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fuzzmetrics",
        description="Level-set metrics on fuzzy sets: distances, audits, and compactness diagnostics.",
    )
    ap.add_argument("--tol", type=float, default=None, help="override the comparison tolerance")
    sub = ap.add_subparsers(dest="command", required=True)

    d = sub.add_parser("dist", help="compute metrics between two stored sets")
    d.add_argument("left")
    d.add_argument("right")
    d.add_argument("--metric", default="dp", help="comma list from dp,dinf,hend,hendmax,hsend,hsendmax,hausdorff")
    d.add_argument("--p", default="2", help="comma list of exponents for dp")
    d.add_argument("--sets", action="store_true", help="inputs are ground sets, not fuzzy sets")
    d.add_argument("--out")
    d.set_defaults(func=cmd_dist)

    a = sub.add_parser("audit", help="run the inequality audit over pairs")
    a.add_argument("left", nargs="?")
    a.add_argument("right", nargs="?")
    a.add_argument("--dir", help="directory of pair files {u:..., v:...}")
    a.add_argument("--fixtures", action="store_true", help="audit the bundled fixture pack")
    a.add_argument("--random", type=int, default=None, help="audit N seeded random pairs")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--p", default="2")
    a.add_argument("--out")
    a.set_defaults(func=cmd_audit)

    f = sub.add_parser("family", help="compactness diagnostics for a family")
    f.add_argument("file", nargs="?")
    f.add_argument("--fixture", default=None)
    f.add_argument("--K", type=int, default=None)
    f.add_argument("--N", type=int, default=None)
    f.add_argument("--p", dest="pval", type=float, default=2.0)
    f.add_argument("--eps", default=None, help="comma list of net radii")
    f.add_argument("--modulus-eps", type=float, default=0.01)
    f.add_argument("--alpha-grid", type=int, default=None, help="number of alpha samples")
    f.add_argument("--h-grid", default=None, help="comma list of shifts")
    f.add_argument("--format", choices=("json", "csv"), default="json")
    f.add_argument("--out")
    f.set_defaults(func=cmd_family)

    c = sub.add_parser("converge", help="convergence report for a sequence with a limit")
    c.add_argument("file", nargs="?")
    c.add_argument("--fixture", default=None)
    c.add_argument("--N", type=int, default=None)
    c.add_argument("--p", dest="pval", type=float, default=2.0)
    c.add_argument("--alpha-grid", type=int, default=None)
    c.add_argument("--out")
    c.set_defaults(func=cmd_converge)

    x = sub.add_parser("fixture", help="materialize a bundled fixture as JSON")
    x.add_argument("name", nargs="?")
    x.add_argument("--list", action="store_true")
    x.add_argument("--K", type=int, default=None)
    x.add_argument("--N", type=int, default=None)
    x.add_argument("--out")
    x.set_defaults(func=cmd_fixture)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.tol is not None:
        if args.tol <= 0:
            print(f"error: tolerance must be positive, got {args.tol}", file=sys.stderr)
            return 3
        os.environ["FUZZMETRICS_TOL"] = repr(args.tol)
    try:
        return args.func(args)
    except ParseFailure as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (DomainError, BackendMismatch) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
