import pytest

from fovea.covering import (
    CoveringError,
    LayeredModule,
    layered_hom,
    layered_hom_dim,
    layered_injective,
    layered_simple,
    lift_morphism,
    orbit_algebra,
    push_down,
    push_down_map,
    reassemble,
    twist_shift_range,
    verify_covering_axioms,
    verify_pushdown,
)
from fovea.linalg import Matrix
from fovea.modules import ModMap, hom_dim, hom_space, is_indecomposable, map_factor
from fovea.quiver import Window, parse_quiver, path_basis

LINE_K2 = parse_quiver(
    "field gf 32749\nnilbound 2\nvertex v\narrow a: v -> v deg 1\nrelation a*a\n")
NAKAYAMA2 = parse_quiver(
    "field gf 32749\nnilbound 2\nvertex 1 2\n"
    "arrow a: 1 -> 2 deg 0\narrow b: 2 -> 1 deg 1\nrelation a*b\nrelation b*a\n")
TRIVIAL = parse_quiver(
    "field gf 32749\nnilbound 2\nvertex 1 2\narrow a: 1 -> 2 deg 0\n")

S0 = layered_simple(LINE_K2, "v", 0)
M0 = layered_injective(LINE_K2, "v", 0)
A = push_down(M0)
K = push_down(S0)


def test_twist_zero_is_identity():
    assert M0.twist(0) == M0


def test_twist_shifts_the_interval():
    m1 = M0.twist(1)
    assert m1.support_layers() == [1, 2]
    assert m1 == layered_injective(LINE_K2, "v", 1)
    assert m1.twist(-1) == M0


def test_twist_of_simple_is_an_indicator():
    for k in (-2, 0, 3):
        t = S0.twist(k)
        assert t.support_layers() == [k]
        assert t.dim("v", k) == 1


def test_twist_preserves_hom_dimensions():
    for k in (-1, 1, 2):
        assert layered_hom_dim(S0, M0) == layered_hom_dim(S0.twist(k), M0.twist(k))
        assert layered_hom_dim(M0, M0) == layered_hom_dim(M0.twist(k), M0.twist(k))


def test_push_down_of_the_simple():
    assert K.dims == {"v": 1}
    assert K.mats["a"].is_zero()


def test_push_down_of_the_interval_is_the_algebra():
    assert A.dims == {"v": 2}
    m = A.mats["a"]
    assert not m.is_zero() and (m @ m).is_zero()


def test_push_down_of_zero():
    zero = LayeredModule.make(LINE_K2, Window(0, 0), {}, {})
    assert push_down(zero).is_zero()


def test_push_down_preserves_total_dimension():
    for m in (S0, M0, M0.twist(3)):
        assert push_down(m).total_dim == m.total_dim


def test_push_down_twist_invariance_is_exact():
    for k in (-2, -1, 0, 1, 5):
        assert push_down(M0.twist(k)) == A
        assert push_down(S0.twist(k)) == K


def test_push_down_map_of_identity():
    f = layered_hom(M0, M0)[0]
    ident = [lm for lm in layered_hom(M0, M0)]
    # the identity lives in the hom space; push it down and check blocks
    for lm in ident:
        pushed = push_down_map(lm)
        assert pushed.source == A and pushed.target == A


def test_push_down_map_of_the_socle_inclusion():
    incl = layered_hom(S0, M0)
    assert len(incl) == 1
    pushed = push_down_map(incl[0])
    assert pushed.source == push_down(S0) and pushed.target == A
    assert not pushed.is_zero()
    fac = map_factor(pushed)
    assert fac.kernel.is_zero()


def test_push_down_map_functoriality_and_twist_invariance():
    maps = layered_hom(S0, M0)
    lm = maps[0]
    assert push_down_map(lm.twist(2)) == push_down_map(lm)


def test_orbit_algebra_examples():
    assert path_basis(orbit_algebra(LINE_K2)).total_dim == 2
    assert path_basis(orbit_algebra(NAKAYAMA2)).total_dim == 4
    assert orbit_algebra(TRIVIAL) == TRIVIAL.base


def test_hom_sum_identity_on_the_line():
    assert hom_dim(A, A) == 2
    assert hom_dim(A, K) == 1
    assert hom_dim(K, K) == 1
    assert sum(layered_hom_dim(M0.twist(k), M0)
               for k in twist_shift_range(M0, M0)) == 2
    assert sum(layered_hom_dim(M0.twist(k), S0)
               for k in twist_shift_range(M0, S0)) == 1
    assert sum(layered_hom_dim(S0.twist(k), S0)
               for k in twist_shift_range(S0, S0)) == 1


def test_both_twist_sums_agree():
    for x in (S0, M0):
        for y in (S0, M0, M0.twist(-1)):
            left = sum(layered_hom_dim(x.twist(k), y) for k in twist_shift_range(x, y))
            right = sum(layered_hom_dim(x, y.twist(k)) for k in twist_shift_range(y, x))
            assert left == right == hom_dim(push_down(x), push_down(y))


def test_only_finitely_many_twists_are_nonzero():
    ks = [k for k in range(-10, 11) if layered_hom_dim(M0.twist(k), M0) > 0]
    assert ks == [-1, 0]
    assert all(k in twist_shift_range(M0, M0) for k in ks)


def test_lift_morphism_of_a_pushed_down_map():
    lm = layered_hom(S0, M0)[0]
    alpha = push_down_map(lm)
    fam = lift_morphism(S0, M0, alpha)
    assert sorted(fam) == [0]
    assert reassemble(fam) == alpha


def test_lift_morphism_identity():
    fam = lift_morphism(M0, M0, ModMap.identity(A))
    assert sorted(fam) == [0]
    assert reassemble(fam) == ModMap.identity(A)


def test_lift_morphism_nilpotent_component():
    nil = ModMap(A, A, {"v": A.mats["a"]})
    fam = lift_morphism(M0, M0, nil)
    assert sorted(fam) == [-1]
    assert reassemble(fam) == nil


def test_lift_then_reassemble_is_the_identity_on_a_basis():
    for h in hom_space(A, A).maps:
        fam = lift_morphism(M0, M0, h)
        assert reassemble(fam) == h or (not fam and h.is_zero())


def test_lift_morphism_rejects_foreign_maps():
    with pytest.raises(CoveringError):
        lift_morphism(M0, S0, ModMap.identity(A))


def test_cover_axioms_line():
    rep = verify_covering_axioms(LINE_K2)
    assert rep.ok
    sums = {r.check: (r.expected, r.actual) for r in rep.records}
    assert sums["covering.dim-sum-left[v,v]"] == (2, 2)


def test_cover_axioms_nakayama_and_trivial():
    assert verify_covering_axioms(NAKAYAMA2).ok
    assert verify_covering_axioms(TRIVIAL).ok


def test_pushdown_exactness_bookkeeping():
    # pushing the kernel and cokernel of a layered map matches the
    # factorization of the pushed-down map, dimension by dimension
    lm = layered_hom(S0, M0)[0]
    pushed = push_down_map(lm)
    fac = map_factor(pushed)
    w = Window(0, 1)
    up = map_factor(lm.map)
    assert sum(up.kernel.dims.values()) == fac.kernel.total_dim
    assert sum(up.cokernel.dims.values()) == fac.cokernel.total_dim


def test_verify_pushdown_report():
    rep = verify_pushdown(LINE_K2, M0, S0, density_target=A)
    assert rep.ok
    rep2 = verify_pushdown(LINE_K2, S0, S0)
    assert rep2.ok


def test_pushdown_indecomposable_and_twist_iso():
    assert is_indecomposable(push_down(S0))
    assert is_indecomposable(A)
    rep = verify_pushdown(LINE_K2, M0, M0.twist(2))
    assert rep.ok
    checks = {r.check for r in rep.records}
    assert "pushdown.iso-implies-twist" in checks


def test_nakayama_orbit_algebra_is_selfinjective():
    from fovea.repetitive import is_selfinjective
    assert is_selfinjective(orbit_algebra(NAKAYAMA2))
