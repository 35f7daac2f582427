import pytest

from fovea.quiver import (
    QuiverError,
    VoltageQuiver,
    Window,
    check_admissible,
    format_quiver,
    is_convex,
    lift_window,
    normalize_presentation,
    parse_quiver,
    path_basis,
    rename_vertices,
)
from fovea.repetitive import (
    is_selfinjective,
    repetitive_truncation,
    repetitive_voltage,
    selfinjective_orbit,
    support_finiteness_probe,
)

POINT = parse_quiver("field gf 32749\nnilbound 1\nvertex v\n")
A2 = parse_quiver("field gf 32749\nnilbound 2\nvertex 1 2\narrow a: 1 -> 2\n")
A3 = parse_quiver(
    "field gf 32749\nnilbound 3\nvertex 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\n")


def test_point_truncation_dimensions():
    assert repetitive_truncation(POINT, 0).total_dim == 1
    assert repetitive_truncation(POINT, 1).total_dim == 5
    assert repetitive_truncation(POINT, 2).total_dim == 9


def test_point_truncation_is_the_short_line_with_zero_composite():
    exported = repetitive_truncation(POINT, 1).export()
    assert len(exported.vertices) == 3
    assert len(exported.arrows) == 2
    pb = path_basis(exported)
    assert pb.total_dim == 5
    # the length-two composite dies: the radical squares to zero
    assert pb.dim("v@-1", "v@1") == 0


def test_a2_truncation_dimension():
    assert repetitive_truncation(A2, 1).total_dim == 15


def test_truncation_dimension_formula():
    for bq, d in ((POINT, 1), (A2, 3), (A3, 6)):
        for n in (0, 1, 2):
            assert repetitive_truncation(bq, n).total_dim == (4 * n + 1) * d


def test_truncation_zero_is_the_algebra_byte_exactly():
    for bq in (POINT, A2, A3):
        norm = format_quiver(normalize_presentation(bq))
        exported = repetitive_truncation(bq, 0).export()
        renamed = rename_vertices(exported, {f"{v}@0": v for v in bq.vertices})
        assert format_quiver(renamed) == norm


def test_exported_presentations_are_admissible():
    for bq in (POINT, A2):
        assert check_admissible(repetitive_truncation(bq, 1).export()).ok


def test_two_connecting_layers_compose_to_zero():
    trunc = repetitive_truncation(A2, 1)
    cat = trunc.category
    for i in A2.vertices:
        for j in A2.vertices:
            for k in A2.vertices:
                x, y, z = (-1, i), (0, j), (1, k)
                for u in range(cat.dim(x, y)):
                    uu = [cat.field.zero] * cat.dim(x, y)
                    uu[u] = cat.field.one
                    for v in range(cat.dim(y, z)):
                        vv = [cat.field.zero] * cat.dim(y, z)
                        vv[v] = cat.field.one
                        assert not any(cat.compose(x, y, z, uu, vv))


def test_truncations_embed_convexly():
    exported2 = repetitive_truncation(A2, 2).export()
    inner = [v for v in exported2.vertices if v.endswith(("@-1", "@0", "@1"))]
    assert is_convex(exported2, inner)
    exported1 = repetitive_truncation(A2, 1).export()
    pb1, pb2 = path_basis(exported1), path_basis(exported2)
    for x in inner:
        for y in inner:
            assert pb1.dim(x, y) == pb2.dim(x, y)


def test_voltage_of_the_point_is_the_graded_loop():
    rv = repetitive_voltage(POINT)
    assert isinstance(rv, VoltageQuiver)
    assert len(rv.base.arrows) == 1
    (arrow,) = rv.base.arrows
    assert rv.degree[arrow.name] == 1
    assert rv.base.relations  # the loop squares to zero


def test_voltage_windows_match_truncations():
    for bq in (POINT, A2):
        rv = repetitive_voltage(bq)
        for n in (0, 1, 2):
            wdim = path_basis(lift_window(rv, Window(-n, n))).total_dim
            assert wdim == repetitive_truncation(bq, n).total_dim


def test_voltage_window_zero_is_the_base():
    rv = repetitive_voltage(A2)
    w0 = lift_window(rv, Window(0, 0))
    renamed = rename_vertices(w0, {f"{v}@0": v for v in A2.vertices})
    assert format_quiver(normalize_presentation(renamed)) == \
        format_quiver(normalize_presentation(A2))


def test_orbit_of_the_point_is_the_dual_numbers():
    orb = selfinjective_orbit(POINT, 1)
    assert len(orb.vertices) == 1 and len(orb.arrows) == 1
    assert path_basis(orb).total_dim == 2
    assert is_selfinjective(orb)


def test_orbit_of_a2_is_the_six_dimensional_trivial_extension():
    orb = selfinjective_orbit(A2, 1)
    assert path_basis(orb).total_dim == 6
    assert is_selfinjective(orb)


def test_orbit_dimension_scales_with_the_exponent():
    for k in (1, 2, 3):
        orb = selfinjective_orbit(A2, k)
        assert path_basis(orb).total_dim == 6 * k
        assert is_selfinjective(orb)


def test_orbit_socle_pairing_bookkeeping():
    # each projective of the trivial extension has a simple socle, and the
    # socle vertices permute the vertex set (the pairing is nondegenerate)
    from fovea.modules import projective, socle_submodule
    orb = selfinjective_orbit(A2, 1)
    pb = path_basis(orb)
    socle_vertices = []
    for v in orb.vertices:
        p = projective(orb, v, pb)
        soc, _ = socle_submodule(p)
        assert soc.total_dim == 1
        socle_vertices.append(soc.support[0])
    assert sorted(socle_vertices) == sorted(orb.vertices)


def test_orbit_exponent_must_be_positive():
    with pytest.raises(QuiverError):
        selfinjective_orbit(A2, 0)


def test_probe_stabilizes_on_repetitive_covers():
    assert support_finiteness_probe(repetitive_voltage(POINT)).stabilized
    assert support_finiteness_probe(repetitive_voltage(A2)).stabilized


def test_probe_rejects_growing_supports():
    stress = parse_quiver(
        "field gf 32749\nnilbound 4\nvertex 1 2\n"
        "arrow a: 1 -> 2 deg 0\narrow b: 1 -> 2 deg 1\n")
    report = support_finiteness_probe(stress, radius=4, dim_cap=24, count_cap=48)
    assert not report.stabilized
    assert "not stabilized" in report.verdict


def test_truncation_is_shift_invariant():
    trunc = repetitive_truncation(A2, 2)
    cat = trunc.category
    for m in (-2, -1, 0):
        for i in A2.vertices:
            for r_off in (0, 1):
                for j in A2.vertices:
                    a = cat.dim((m, i), (m + r_off, j))
                    b = cat.dim((m + 1, i), (m + 1 + r_off, j))
                    if abs(m + 1 + r_off) <= 2:
                        assert a == b


def test_cover_axioms_hold_on_the_repetitive_cover_of_a2():
    from fovea.covering import verify_covering_axioms
    rv = repetitive_voltage(A2)
    assert verify_covering_axioms(rv).ok


def test_probe_stabilizes_on_the_two_cycle_cover():
    nak = parse_quiver(
        "field gf 32749\nnilbound 2\nvertex 1 2\n"
        "arrow a: 1 -> 2 deg 0\narrow b: 2 -> 1 deg 1\nrelation a*b\nrelation b*a\n")
    assert support_finiteness_probe(nak).stabilized


def test_all_suites_pass_on_the_trivial_cover():
    from fovea.suites import run_suite
    for name in ("cover-axioms", "pushdown", "phi-identities", "kg0"):
        assert run_suite(name, "trivial-a2.vq").passed
