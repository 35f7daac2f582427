import pytest

from fovea.quiver import (
    BoundQuiver,
    ParseError,
    QuiverError,
    VoltageQuiver,
    Window,
    check_admissible,
    format_quiver,
    is_convex,
    lift_window,
    normalize_presentation,
    opposite_quiver,
    parse_quiver,
    path_basis,
    sub_quiver,
)

from oracles import brute_paths

A2_TEXT = """
field gf 32749
nilbound 2
vertex 1 2
arrow a: 1 -> 2
"""

LOOP_TEXT = """
field gf 32749
nilbound 2
vertex v
arrow a: v -> v
relation a*a
"""

LINE_K2 = """
field gf 32749
nilbound 2
vertex v
arrow a: v -> v deg 1
relation a*a
"""


def test_parse_a2():
    bq = parse_quiver(A2_TEXT)
    assert isinstance(bq, BoundQuiver)
    assert bq.vertices == ("1", "2")
    assert len(bq.arrows) == 1 and not bq.relations


def test_parse_loop_relation():
    bq = parse_quiver(LOOP_TEXT)
    assert path_basis(bq).total_dim == 2


def test_parse_error_non_composable_relation():
    text = A2_TEXT + "arrow c: 1 -> 2\nrelation a*c\n"
    with pytest.raises(ParseError):
        parse_quiver(text)


def test_parse_error_line_numbers():
    with pytest.raises(ParseError) as err:
        parse_quiver("field gf 32749\nnilbound 2\nvertex v\narrow broken\n")
    assert "line 4" in str(err.value)


def test_parse_error_dangling_vertex():
    with pytest.raises(ParseError):
        parse_quiver("field gf 32749\nnilbound 2\nvertex 1\narrow a: 1 -> 9\n")


def test_relation_coefficients_and_signs():
    text = """
field q
nilbound 3
vertex 1 2 3
arrow a: 1 -> 2
arrow b: 2 -> 3
arrow c: 1 -> 2
arrow d: 2 -> 3
relation a*b - c*d
relation 2 a*b + -2 c*d
"""
    bq = parse_quiver(text)
    assert len(bq.relations) == 2
    (c1, p1), (c2, p2) = bq.relations[0]
    assert (p1, p2) == (("a", "b"), ("c", "d"))
    assert c1 == -c2 == 1


def test_format_parse_round_trip():
    for text in (A2_TEXT, LOOP_TEXT, LINE_K2):
        q = parse_quiver(text)
        assert parse_quiver(format_quiver(q)) == q


def test_path_basis_a2_matches_brute_force():
    bq = parse_quiver(A2_TEXT)
    pb = path_basis(bq)
    arrows = [(a.name, a.source, a.target) for a in bq.arrows]
    for x in bq.vertices:
        brute = brute_paths(arrows, x, bq.nilbound - 1)
        for y in bq.vertices:
            assert pb.dim(x, y) == len(brute.get(y, []))
    assert pb.total_dim == 3
    assert pb.dim("1", "2") == 1 and pb.dim("2", "1") == 0


def test_path_basis_single_vertex():
    bq = parse_quiver("field gf 32749\nnilbound 1\nvertex v\n")
    assert path_basis(bq).total_dim == 1


def test_admissible_loop_with_square_zero():
    assert check_admissible(parse_quiver(LOOP_TEXT)).ok


def test_not_admissible_loop_without_relation():
    bq = parse_quiver("field gf 32749\nnilbound 3\nvertex v\narrow a: v -> v\n")
    report = check_admissible(bq)
    assert not report.ok and report.violations


def test_admissible_a3_rad_square_zero():
    bq = parse_quiver(
        "field gf 32749\nnilbound 2\nvertex 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nrelation a*b\n")
    assert check_admissible(bq).ok


def test_short_relation_terms_are_flagged():
    bq = BoundQuiver(["1", "2"], [("a", "1", "2"), ("b", "1", "2")],
                     [((1, ("a",)), (-1, ("b",)))], parse_quiver(A2_TEXT).field, 2)
    report = check_admissible(bq)
    assert not report.ok


def test_voltage_needs_homogeneous_relations():
    text = """
field gf 32749
nilbound 3
vertex 1 2 3
arrow a: 1 -> 2 deg 1
arrow b: 2 -> 3 deg 0
arrow c: 1 -> 2 deg 0
arrow d: 2 -> 3 deg 0
relation a*b - c*d
"""
    with pytest.raises(ParseError):
        parse_quiver(text)


def test_forgetting_degrees_returns_the_base():
    vq = parse_quiver(LINE_K2)
    assert isinstance(vq, VoltageQuiver)
    base_text = LINE_K2.replace(" deg 1", "")
    assert vq.base == parse_quiver(base_text)


def test_lift_window_0_1_drops_the_relation():
    vq = parse_quiver(LINE_K2)
    w = lift_window(vq, Window(0, 1))
    assert w.vertices == ("v@0", "v@1")
    assert [a.name for a in w.arrows] == ["a@0"]
    assert not w.relations


def test_lift_window_0_2_keeps_one_relation():
    vq = parse_quiver(LINE_K2)
    w = lift_window(vq, Window(0, 2))
    assert [a.name for a in w.arrows] == ["a@0", "a@1"]
    assert w.relations == (((vq.base.field.one, ("a@0", "a@1")),),)
    pb = path_basis(w)
    assert pb.dim("v@0", "v@2") == 0 and pb.dim("v@0", "v@1") == 1


def test_lift_window_degree_zero_layer():
    vq = parse_quiver(LINE_K2)
    w = lift_window(vq, Window(0, 0))
    assert w.vertices == ("v@0",) and not w.arrows


def test_empty_window_is_an_error():
    with pytest.raises(QuiverError):
        Window(1, 0)


def test_window_nesting_preserves_hom_dims():
    vq = parse_quiver(LINE_K2)
    small = lift_window(vq, Window(0, 1))
    big = lift_window(vq, Window(-1, 2))
    pb_small, pb_big = path_basis(small), path_basis(big)
    for x in small.vertices:
        for y in small.vertices:
            assert pb_small.dim(x, y) == pb_big.dim(x, y)


def test_local_boundedness_sums_on_windows():
    vq = parse_quiver(LINE_K2)
    w = lift_window(vq, Window(-3, 3))
    pb = path_basis(w)
    for x in w.vertices:
        assert sum(pb.dim(x, y) for y in w.vertices) <= 2
        assert sum(pb.dim(y, x) for y in w.vertices) <= 2


def test_is_convex_on_the_short_line():
    vq = parse_quiver(LINE_K2)
    w = lift_window(vq, Window(0, 2))
    assert not is_convex(w, ["v@0", "v@2"])
    assert is_convex(w, ["v@0", "v@1"])
    assert is_convex(w, list(w.vertices))
    with pytest.raises(QuiverError):
        is_convex(w, ["nope"])


def test_sub_quiver_keeps_inner_relations():
    vq = parse_quiver(LINE_K2)
    w = lift_window(vq, Window(0, 3))
    sub = sub_quiver(w, ["v@0", "v@1", "v@2"])
    assert len(sub.relations) == 1


def test_opposite_is_an_involution():
    bq = parse_quiver(LOOP_TEXT)
    assert opposite_quiver(opposite_quiver(bq)) == bq


def test_normalize_presentation_is_idempotent_and_faithful():
    for text in (A2_TEXT, LOOP_TEXT):
        bq = parse_quiver(text)
        norm = normalize_presentation(bq)
        assert path_basis(norm).total_dim == path_basis(bq).total_dim
        assert format_quiver(normalize_presentation(norm)) == format_quiver(norm)


def test_path_explosion_guard():
    bq = parse_quiver(
        "field gf 32749\nnilbound 6\nvertex v\narrow a: v -> v\narrow b: v -> v\n")
    from fovea.quiver import PathExplosionError
    with pytest.raises(PathExplosionError):
        path_basis(bq, path_cap=20)


def test_relation_with_unknown_arrow_is_rejected():
    with pytest.raises(ParseError):
        parse_quiver("field gf 32749\nnilbound 2\nvertex v\narrow a: v -> v\nrelation a*zz\n")


def test_window_nesting_is_convex():
    vq = parse_quiver(LINE_K2)
    big = lift_window(vq, Window(-2, 3))
    small = lift_window(vq, Window(0, 1))
    assert is_convex(big, list(small.vertices))


def test_negative_degrees_lift():
    vq = parse_quiver(
        "field gf 32749\nnilbound 2\nvertex 1 2\n"
        "arrow a: 1 -> 2 deg -1\n")
    w = lift_window(vq, Window(0, 1))
    names = [a.name for a in w.arrows]
    assert names == ["a@1"]  # only the copy landing inside the window


def test_public_import_surface():
    import fovea
    for name in ("Field", "Matrix", "BoundQuiver", "VoltageQuiver", "Module",
                 "hom_space", "decompose", "right_almost_split", "push_down",
                 "lift_morphism", "fp_hom", "phi", "psi_evaluate",
                 "kg_level0_report", "repetitive_truncation", "selfinjective_orbit"):
        assert hasattr(fovea, name)
