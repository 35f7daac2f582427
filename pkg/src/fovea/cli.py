"""Command line front end.

Exit codes follow the CI contract: 0 all checks passed, 1 a check failed,
2 usage or input errors.  All numeric output is exact; --json switches
every verb to deterministic JSON.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .covering import layered_hom_dim, push_down
from .naming import (
    FixtureError,
    fixture_names,
    load_quiver,
    read_input,
    resolve_functor,
    resolve_layered,
    resolve_module,
)
from .functors import (
    evaluate_dim,
    functor_length,
    functor_length_cover,
    phi,
    simple_functor,
)
from .linalg import LinAlgError
from .modules import (
    ModuleError,
    enumerate_indecomposables,
    format_module,
    hom_dim,
    parse_module,
)
from .quiver import BoundQuiver, ParseError, QuiverError, VoltageQuiver, format_quiver
from .repetitive import repetitive_truncation, selfinjective_orbit
from .reports import Report, jsonable
from .suites import SuiteError, run_suite

USAGE_EXIT = 2
CHECK_FAIL_EXIT = 1


def _common(p: argparse.ArgumentParser):
    p.add_argument("--json", action="store_true", help="emit deterministic JSON")
    p.add_argument("--field", default=os.environ.get("FOVEA_FIELD"),
                   help="field override: gf:<p> or q (default from FOVEA_FIELD)")
    p.add_argument("--seed", type=int, default=0, help="seed for decompositions")
    p.add_argument("--window", type=int, default=None, help="window / search radius")
    p.add_argument("--dim-cap", type=int, default=12, help="dimension cap for enumeration")
    p.add_argument("--count-cap", type=int, default=24, help="count cap for enumeration")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fovea",
                                     description="exact covering computations on bound quivers")
    parser.add_argument("--version", action="version", version=f"fovea {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hom", help="dimension of a hom space")
    p.add_argument("input")
    p.add_argument("--from", dest="src", required=True, metavar="MODULE")
    p.add_argument("--to", dest="dst", required=True, metavar="MODULE")
    _common(p)

    p = sub.add_parser("pushdown", help="push a lifted module down to the base algebra")
    p.add_argument("input")
    p.add_argument("--module", required=True)
    _common(p)

    p = sub.add_parser("eval", help="evaluate a presented functor at a module")
    p.add_argument("input")
    p.add_argument("--functor", required=True)
    p.add_argument("--at", required=True)
    _common(p)

    p = sub.add_parser("simple", help="evaluation profile of a simple functor")
    p.add_argument("input")
    p.add_argument("--at", required=True)
    _common(p)

    p = sub.add_parser("phi", help="profile of the pushed-down functor over the base")
    p.add_argument("input")
    p.add_argument("--functor", required=True)
    _common(p)

    p = sub.add_parser("length", help="composition length of a presented functor")
    p.add_argument("input")
    p.add_argument("--functor", required=True)
    _common(p)

    p = sub.add_parser("rep", help="repetitive constructions")
    rep_sub = p.add_subparsers(dest="rep_command", required=True)
    pb = rep_sub.add_parser("build", help="truncated repetitive category as a quiver file")
    pb.add_argument("input")
    pb.add_argument("--n", type=int, required=True)
    pb.add_argument("-o", "--output", default=None)
    _common(pb)
    po = rep_sub.add_parser("orbit", help="orbit algebra of the k-fold shift")
    po.add_argument("input")
    po.add_argument("--k", type=int, default=1)
    po.add_argument("-o", "--output", default=None)
    _common(po)

    p = sub.add_parser("cover", help="covering verifications")
    cov_sub = p.add_subparsers(dest="cover_command", required=True)
    pv = cov_sub.add_parser("verify", help="check the covering identities on a graded input")
    pv.add_argument("input")
    _common(pv)

    p = sub.add_parser("suite", help="run a named verification suite")
    p.add_argument("name", help="one of: cover-axioms, pushdown, phi-identities, kg0, repetitive")
    p.add_argument("input")
    _common(p)

    p = sub.add_parser("fun", help="functor-category verbs")
    fun_sub = p.add_subparsers(dest="fun_command", required=True)
    for verb, args in (("eval", ("--functor", "--at")), ("hom", ("--from", "--to")),
                       ("simple", ("--at",)), ("phi", ("--functor",)),
                       ("kg0", ())):
        pf = fun_sub.add_parser(verb)
        pf.add_argument("input")
        for a in args:
            dest = {"--from": "src", "--to": "dst"}.get(a)
            if dest:
                pf.add_argument(a, dest=dest, required=True)
            else:
                pf.add_argument(a, required=True)
        _common(pf)

    p = sub.add_parser("mod", help="round-trip a module file to canonical form")
    p.add_argument("input")
    p.add_argument("modfile")
    _common(p)

    p = sub.add_parser("fixtures", help="list packaged fixture inputs")
    _common(p)

    return parser


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        sys.stdout.write(json.dumps(jsonable(payload), sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(text + "\n")


def _load(args):
    return load_quiver(args.input, args.field)


def _fun_hom(args) -> int:
    _name, _digest, q = _load(args)
    if isinstance(q, VoltageQuiver):
        a = resolve_layered(q, args.src)
        b = resolve_layered(q, args.dst)
        d = layered_hom_dim(a, b)
    else:
        a = resolve_module(q, args.src)
        b = resolve_module(q, args.dst)
        d = hom_dim(a, b)
    _emit(args, {"dim": d}, f"dim = {d}")
    return 0


def _fun_pushdown(args) -> int:
    _name, _digest, q = _load(args)
    if not isinstance(q, VoltageQuiver):
        raise FixtureError("pushdown needs a graded (voltage) input")
    m = resolve_layered(q, args.module)
    pd = push_down(m)
    dims = {v: pd.dims[v] for v in pd.bq.vertices}
    text = "dims " + " ".join(f"{v}={d}" for v, d in dims.items()) + f"  total {pd.total_dim}"
    _emit(args, {"dims": dims, "total": pd.total_dim}, text)
    return 0


def _fun_eval(args) -> int:
    _name, _digest, q = _load(args)
    t = resolve_functor(q, args.functor)
    if isinstance(q, VoltageQuiver):
        x = resolve_layered(q, args.at)
    else:
        x = resolve_module(q, args.at)
    d = evaluate_dim(t, x)
    _emit(args, {"dim": d}, str(d))
    return 0


def _fun_simple(args) -> int:
    _name, _digest, q = _load(args)
    if isinstance(q, VoltageQuiver):
        raise FixtureError("profiles over a graded input are infinite; use eval")
    enum = enumerate_indecomposables(q, dim_cap=args.dim_cap, count_cap=args.count_cap,
                                     seed=args.seed)
    n = resolve_module(q, args.at)
    t = simple_functor(q, n, enum)
    profile = {label: evaluate_dim(t, x) for label, x in zip(enum.labels(), enum.modules)}
    text = "  ".join(f"{k}:{v}" for k, v in sorted(profile.items()))
    _emit(args, {"profile": profile}, text)
    return 0


def _fun_phi(args) -> int:
    _name, _digest, q = _load(args)
    if not isinstance(q, VoltageQuiver):
        raise FixtureError("phi needs a graded (voltage) input")
    t = resolve_functor(q, args.functor)
    u = phi(t)
    enum = enumerate_indecomposables(q.base, dim_cap=args.dim_cap,
                                     count_cap=args.count_cap, seed=args.seed)
    profile = {label: evaluate_dim(u, x) for label, x in zip(enum.labels(), enum.modules)}
    text = "  ".join(f"{k}:{v}" for k, v in sorted(profile.items()))
    _emit(args, {"profile": profile, "complete": enum.complete}, text)
    return 0


def _fun_length(args) -> int:
    _name, _digest, q = _load(args)
    t = resolve_functor(q, args.functor)
    if isinstance(q, VoltageQuiver):
        cert = functor_length_cover(t)
    else:
        enum = enumerate_indecomposables(q, dim_cap=args.dim_cap,
                                         count_cap=args.count_cap, seed=args.seed)
        cert = functor_length(t, enum)
    _emit(args, {"length": cert.length, "profile": cert.profile},
          f"length = {cert.length}")
    return 0


def _fun_kg0(args) -> int:
    name, digest, q = _load(args)
    from .functors import kg_level0_report
    kg = kg_level0_report(q, dim_cap=args.dim_cap, count_cap=args.count_cap,
                          seed=args.seed)
    field = q.field.spec() if isinstance(q, BoundQuiver) else q.base.field.spec()
    report = Report(suite="kg0", field=field, seed=args.seed)
    report.add_input(name, digest)
    report.verdicts.update(kg.verdicts)
    report.absorb_records(kg.records)
    _emit(args, report.to_dict(), report.to_text().rstrip("\n"))
    return 0 if report.passed else CHECK_FAIL_EXIT


def _rep(args) -> int:
    _name, _digest, q = _load(args)
    if isinstance(q, VoltageQuiver):
        raise FixtureError("repetitive constructions need an algebra input")
    if args.rep_command == "build":
        out = repetitive_truncation(q, args.n).export()
    else:
        out = selfinjective_orbit(q, args.k)
    text = format_quiver(out)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        sys.stdout.write(f"wrote {args.output}\n")
    else:
        sys.stdout.write(text)
    return 0


def _cover_verify(args) -> int:
    name, digest, q = _load(args)
    if not isinstance(q, VoltageQuiver):
        raise FixtureError("cover verify needs a graded (voltage) input")
    from .covering import verify_covering_axioms
    vr = verify_covering_axioms(q, max_radius=args.window or 64)
    report = Report(suite="cover-axioms", field=q.base.field.spec(), seed=args.seed)
    report.add_input(name, digest)
    report.absorb(vr)
    if args.json:
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.to_text())
    return 0 if report.passed else CHECK_FAIL_EXIT


def _suite(args) -> int:
    try:
        report = run_suite(args.name, args.input, field_override=args.field,
                           seed=args.seed, window=args.window,
                           dim_cap=args.dim_cap, count_cap=args.count_cap)
    except SuiteError as e:
        sys.stderr.write(f"fovea: {e}\n")
        return USAGE_EXIT
    if args.json:
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.to_text())
    return 0 if report.passed else CHECK_FAIL_EXIT


def _mod(args) -> int:
    _name, _digest, q = _load(args)
    if isinstance(q, VoltageQuiver):
        raise FixtureError("module files live over algebra inputs")
    _disp, raw = read_input(args.modfile)
    m = parse_module(q, raw.decode("utf-8"))
    sys.stdout.write(format_module(m))
    return 0


def _fixtures(args) -> int:
    names = fixture_names()
    _emit(args, {"fixtures": names}, "\n".join(names))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "hom": _fun_hom,
        "pushdown": _fun_pushdown,
        "eval": _fun_eval,
        "simple": _fun_simple,
        "phi": _fun_phi,
        "length": _fun_length,
        "rep": _rep,
        "suite": _suite,
        "mod": _mod,
        "fixtures": _fixtures,
    }
    try:
        if args.command == "cover":
            return _cover_verify(args)
        if args.command == "fun":
            fun_handlers = {"eval": _fun_eval, "hom": _fun_hom, "simple": _fun_simple,
                            "phi": _fun_phi, "kg0": _fun_kg0}
            return fun_handlers[args.fun_command](args)
        return handlers[args.command](args)
    except (FixtureError, ParseError, OSError) as e:
        sys.stderr.write(f"fovea: {e}\n")
        return USAGE_EXIT
    except (QuiverError, ModuleError, LinAlgError, ValueError) as e:
        sys.stderr.write(f"fovea: {e}\n")
        return CHECK_FAIL_EXIT


if __name__ == "__main__":
    sys.exit(main())
