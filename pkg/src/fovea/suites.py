"""Named verification suites bundling the covering identities.

Each suite loads one quiver input, runs a fixed battery of checks and
returns a Report whose pass/fail feeds the CLI exit code.  Check ids are
stable strings so CI diffs stay readable.
"""

from __future__ import annotations

from .covering import (
    LayeredModule,
        push_down,
        verify_covering_axioms,
    verify_pushdown,
)
from .naming import load_quiver
from .functors import (
    common_window,
    default_battery,
    evaluate_dim,
        kg_level0_report,
    phi,
    phi_epi_cover,
    phi_hom_identity,
    psi_evaluate,
        window_indecomposables,
)
from .modules import (
    enumerate_indecomposables,
    hom_space,
    is_indecomposable,
    is_isomorphic_indec,
)
from .quiver import (
    BoundQuiver,
    VoltageQuiver,
    Window,
    check_admissible,
    format_quiver,
    is_convex,
    lift_window,
    normalize_presentation,
    path_basis,
        rename_vertices,
)
from .repetitive import (
    is_selfinjective,
    repetitive_truncation,
    repetitive_voltage,
    selfinjective_orbit,
)
from .reports import Report

SUITES = ("cover-axioms", "pushdown", "phi-identities", "kg0", "repetitive")


class SuiteError(ValueError):
    pass


def run_suite(name: str, input_spec: str, field_override: str | None = None,
              seed: int = 0, window: int | None = None,
              dim_cap: int = 12, count_cap: int = 24) -> Report:
    if name not in SUITES:
        raise SuiteError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    display, digest, q = load_quiver(input_spec, field_override)
    report = Report(suite=name, field=q.field.spec() if isinstance(q, BoundQuiver)
                    else q.base.field.spec(), seed=seed)
    report.add_input(display, digest)
    if name == "cover-axioms":
        _suite_cover_axioms(report, q, window)
    elif name == "pushdown":
        _suite_pushdown(report, q, window, seed)
    elif name == "phi-identities":
        _suite_phi_identities(report, q)
    elif name == "kg0":
        _suite_kg0(report, q, dim_cap, count_cap, seed)
    elif name == "repetitive":
        _suite_repetitive(report, q)
    return report


def _require_voltage(q, name):
    if not isinstance(q, VoltageQuiver):
        raise SuiteError(f"suite {name} needs a graded (voltage) input")
    return q


def _suite_cover_axioms(report: Report, q, window):
    vq = _require_voltage(q, "cover-axioms")
    vr = verify_covering_axioms(vq, max_radius=window or 64)
    report.absorb(vr)


def _twist_classes(vq: VoltageQuiver, radius: int = 3) -> list[LayeredModule]:
    """Window indecomposables up to the shift action, anchored at layer 0."""
    mods = window_indecomposables(vq, Window(-radius, radius))
    reps: list[LayeredModule] = []
    for m in mods:
        if m.window.lo + radius >= 2 * radius:
            continue  # touching the window edge; its class appears anchored too
        anchored = m.twist(-m.window.lo)
        if anchored not in reps:
            reps.append(anchored)
    return reps


def _suite_pushdown(report: Report, q, window, seed: int = 0):
    vq = _require_voltage(q, "pushdown")
    battery, _tests = default_battery(vq)
    mods = []
    for t in battery:
        target = t.pres.target
        if not target.is_zero() and target not in mods:
            mods.append(target)
    mods = mods[:3]
    for i, x in enumerate(mods):
        for j, y in enumerate(mods):
            vr = verify_pushdown(vq, x, y,
                                 density_target=push_down(x) if (i, j) == (0, 0) else None,
                                 shift_radius=window or 8)
            report.absorb(vr, prefix=f"pair[{i},{j}].")
    # the pushed-down twist classes exhaust the indecomposables of the base
    base_enum = enumerate_indecomposables(vq.base, seed=seed)
    if base_enum.complete:
        classes = _twist_classes(vq)
        pushed = [push_down(c) for c in classes]
        for k, p in enumerate(pushed):
            report.add_check(f"pushdown.class-indecomposable[{k}]", True,
                             is_indecomposable(p), is_indecomposable(p))
        matched = set()
        for p in pushed:
            for idx, m in enumerate(base_enum.modules):
                if idx not in matched and p.dims == m.dims and is_isomorphic_indec(p, m):
                    matched.add(idx)
                    break
        report.add_check("pushdown.classes-exhaust-base", len(base_enum.modules),
                         len(matched), len(matched) == len(base_enum.modules))


def _suite_phi_identities(report: Report, q):
    vq = _require_voltage(q, "phi-identities")
    battery, tests = default_battery(vq)
    for i, t in enumerate(battery):
        hull = common_window(t.pres.source, t.pres.target)
        for j, x in enumerate(tests):
            lhs = psi_evaluate(phi(t), x)
            lo = hull.lo - x.window.hi
            hi = hull.hi - x.window.lo
            rhs = sum(evaluate_dim(t, x.twist(k)) for k in range(lo, hi + 1))
            report.add_check(f"comparison.pull-back-sum[{i},{j}]", lhs, rhs, lhs == rhs)
    for i, t1 in enumerate(battery[:4]):
        for j, t2 in enumerate(battery[:4]):
            vr = phi_hom_identity(t1, t2)
            report.absorb(vr, prefix=f"hom[{i},{j}].")
    mods = []
    for t in battery:
        target = t.pres.target
        if not target.is_zero() and target not in mods:
            mods.append(target)
    mods = mods[:2]
    count = 0
    for x in mods:
        for y in mods:
            fx, fy = push_down(x), push_down(y)
            for alpha in hom_space(fx, fy).maps:
                res = phi_epi_cover(x, y, alpha, tests)
                report.absorb(res.report, prefix=f"epi[{count}].")
                count += 1
    report.add_check("comparison.epi-batch-size", True, count > 0, count > 0)


def _suite_kg0(report: Report, q, dim_cap, count_cap, seed: int = 0):
    kg = kg_level0_report(q, dim_cap=dim_cap, count_cap=count_cap, seed=seed)
    report.verdicts.update(kg.verdicts)
    report.absorb_records(kg.records)


def _suite_repetitive(report: Report, q):
    if isinstance(q, VoltageQuiver):
        raise SuiteError("suite repetitive needs a finite-dimensional algebra input")
    bq: BoundQuiver = q
    base_dim = path_basis(bq).total_dim
    trunc0 = repetitive_truncation(bq, 0)
    trunc1 = repetitive_truncation(bq, 1)
    trunc2 = repetitive_truncation(bq, 2)
    report.add_check("repetitive.dim-n0", base_dim, trunc0.total_dim,
                     trunc0.total_dim == base_dim)
    report.add_check("repetitive.dim-n1", 5 * base_dim, trunc1.total_dim,
                     trunc1.total_dim == 5 * base_dim)
    report.add_check("repetitive.dim-n2", 9 * base_dim, trunc2.total_dim,
                     trunc2.total_dim == 9 * base_dim)

    exported1 = trunc1.export()
    adm = check_admissible(exported1)
    report.add_check("repetitive.export-admissible", True, adm.ok, adm.ok)

    exported2 = trunc2.export()
    inner = [v for v in exported2.vertices if v.endswith(("@-1", "@0", "@1"))]
    convex = is_convex(exported2, inner)
    report.add_check("repetitive.truncation-convex", True, convex, convex)
    pb1 = path_basis(exported1)
    pb2 = path_basis(exported2)
    agree = all(pb1.dim(x, y) == pb2.dim(x, y) for x in inner for y in inner)
    report.add_check("repetitive.truncation-hom-dims-agree", True, agree, agree)

    norm = format_quiver(normalize_presentation(bq))
    renamed = rename_vertices(trunc0.export(), {f"{v}@0": v for v in bq.vertices})
    report.add_check("repetitive.n0-byte-exact", True,
                     format_quiver(renamed) == norm, format_quiver(renamed) == norm)

    rv = repetitive_voltage(bq)
    for n in (1, 2):
        wdim = path_basis(lift_window(rv, Window(-n, n))).total_dim
        tdim = repetitive_truncation(bq, n).total_dim
        report.add_check(f"repetitive.window-matches-truncation[n={n}]", tdim, wdim, wdim == tdim)
    w0 = lift_window(rv, Window(0, 0))
    w0_renamed = rename_vertices(w0, {f"{v}@0": v for v in bq.vertices})
    w0_norm = format_quiver(normalize_presentation(w0_renamed))
    report.add_check("repetitive.window0-is-base", True,
                     w0_norm == norm, w0_norm == norm)

    orbit = selfinjective_orbit(bq, 1)
    odim = path_basis(orbit).total_dim
    report.add_check("repetitive.orbit-dim", 2 * base_dim, odim, odim == 2 * base_dim)
    selfinj = is_selfinjective(orbit)
    report.add_check("repetitive.orbit-selfinjective", True, selfinj, selfinj)
