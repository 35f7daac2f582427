import random
from fractions import Fraction

import pytest

from fovea.linalg import (
    Field,
    LinAlgError,
    Matrix,
    Subspace,
    inverse,
    kernel_basis,
    parse_field_spec,
    rank,
    rref,
    solve,
    subspace_ops,
)

from oracles import dumb_rref

GF = Field.gf(32749)
QQ = Field.rationals()
FIELDS = [GF, QQ]


def test_field_spec_round_trip():
    assert parse_field_spec("q") == QQ
    assert parse_field_spec("gf:7") == Field.gf(7)
    assert parse_field_spec("gf 32749") == GF
    with pytest.raises(LinAlgError):
        parse_field_spec("gf:6")


def test_field_parse_format():
    assert QQ.parse("-3/4") == Fraction(-3, 4)
    assert QQ.format(Fraction(5, 2)) == "5/2"
    assert GF.parse("-1") == 32748
    assert GF.parse("1/2") == GF.inv(2)


@pytest.mark.parametrize("field", FIELDS)
def test_rref_identity(field):
    m = Matrix.identity(field, 2)
    red = rref(m)
    assert red.rank == 2
    assert red.matrix == m


@pytest.mark.parametrize("field", FIELDS)
def test_rref_proportional_rows(field):
    red = rref(Matrix(field, [[2, 4], [1, 2]]))
    assert red.rank == 1
    assert red.pivots == (0,)


@pytest.mark.parametrize("field", FIELDS)
def test_rref_zero(field):
    red = rref(Matrix.zeros(field, 3, 3))
    assert red.rank == 0
    assert red.matrix.is_zero()


@pytest.mark.parametrize("field", FIELDS)
def test_rref_is_idempotent(field):
    rng = random.Random(11)
    for _ in range(25):
        m = Matrix(field, [[field.sample(rng) for _ in range(4)] for _ in range(3)])
        once = rref(m).matrix
        assert rref(once).matrix == once


@pytest.mark.parametrize("field", FIELDS)
def test_rank_equals_rank_of_transpose(field):
    rng = random.Random(7)
    for _ in range(25):
        m = Matrix(field, [[field.sample(rng) for _ in range(5)] for _ in range(3)])
        assert rank(m) == rank(m.transpose())


def test_kernel_identity_empty():
    assert kernel_basis(Matrix.identity(GF, 2)).rows == 0


def test_kernel_one_equation():
    # the null space of (1 2) is spanned by (-2, 1), canonicalized
    ker = kernel_basis(Matrix(QQ, [[1, 2]]))
    assert ker.rows == 1
    v = ker.entries[0]
    assert v[0] + 2 * v[1] == 0 and any(v)


def test_kernel_rank_nullity_against_oracle():
    rows = [[2, 4], [1, 2]]
    oracle_rank = dumb_rref(rows)[0]
    ker = kernel_basis(Matrix(QQ, rows))
    assert ker.rows == 2 - oracle_rank == 1


@pytest.mark.parametrize("field", FIELDS)
def test_kernel_vectors_annihilate_and_are_independent(field):
    rng = random.Random(23)
    for _ in range(20):
        m = Matrix(field, [[field.sample(rng) for _ in range(5)] for _ in range(3)])
        ker = kernel_basis(m)
        for v in ker.entries:
            col = Matrix(field, [[x] for x in v])
            assert (m @ col).is_zero()
        assert rank(ker) == ker.rows
        assert rank(m) + ker.rows == m.cols


def test_subspace_ops_trivial_cases():
    ops = subspace_ops(GF, 2, [[1, 0]], [[1, 0]])
    assert (ops.sum_dim, ops.intersection_dim) == (1, 1)
    ops = subspace_ops(GF, 2, [[1, 0]], [[0, 1]])
    assert (ops.sum_dim, ops.intersection_dim) == (2, 0)
    assert ops.quotient_dim == 1


@pytest.mark.parametrize("field", FIELDS)
def test_subspace_dimension_identities_random(field):
    rng = random.Random(5)
    for _ in range(20):
        gens_a = [[field.sample(rng) for _ in range(4)] for _ in range(3)]
        gens_b = [[field.sample(rng) for _ in range(4)] for _ in range(2)]
        ops = subspace_ops(field, 4, gens_a, gens_b)
        assert ops.a.dim + ops.b.dim == ops.sum_dim + ops.intersection_dim
        assert ops.quotient_dim == ops.sum_dim - ops.b.dim
        for g in gens_a:
            assert ops.in_a(g) and ops.in_sum(g)


def test_subspace_canonical_bases_are_equal_for_equal_spaces():
    a = Subspace.span(QQ, 3, [[1, 1, 0], [0, 2, 2]])
    b = Subspace.span(QQ, 3, [[2, 2, 0], [1, 3, 2], [3, 5, 2]])
    assert a == b and a.rows == b.rows


def test_mismatched_ambient_dimension_is_an_error():
    with pytest.raises(LinAlgError):
        subspace_ops(QQ, 3, [[1, 0, 0]], [[1, 0]])


@pytest.mark.parametrize("field", FIELDS)
def test_solve_and_inverse(field):
    rng = random.Random(3)
    for _ in range(10):
        m = Matrix(field, [[field.sample(rng) for _ in range(3)] for _ in range(3)])
        inv = inverse(m)
        if inv is not None:
            assert m @ inv == Matrix.identity(field, 3)
        b = Matrix(field, [[field.sample(rng)] for _ in range(3)])
        sol = solve(m, b)
        if sol is not None:
            assert m @ sol == b


def test_quotient_projection_kernel_is_the_subspace():
    w = Subspace.span(QQ, 4, [[1, 0, 2, 0], [0, 1, 1, 1]])
    quot = w.quotient()
    assert quot.dim == 2
    for row in w.rows.entries:
        assert all(x == 0 for x in quot.apply(row))
    assert (quot.projection @ quot.section()) == Matrix.identity(QQ, 2)


def test_candidate_factors_split_products():
    import random as _random
    from fovea.linalg import candidate_factors, poly_divmod, poly_mul
    rng = _random.Random(3)
    g7 = Field.gf(7)
    # (x^2 + 1)(x - 3) over GF(7); x^2 + 1 is irreducible there
    quad = [g7.one, g7.zero, g7.one]
    lin = [g7.neg(g7.coerce(3)), g7.one]
    poly = poly_mul(g7, quad, lin)
    factors = candidate_factors(g7, poly, rng)
    assert factors
    for fac in factors:
        assert poly_divmod(g7, poly, fac)[1] == []
    assert any(len(fac) == 2 for fac in factors)  # a linear divisor shows up

    # a squareful polynomial: (x - 2)^2 (x - 5)
    sq = poly_mul(g7, poly_mul(g7, [g7.coerce(-2), g7.one], [g7.coerce(-2), g7.one]),
                  [g7.coerce(-5), g7.one])
    factors = candidate_factors(g7, sq, rng)
    assert factors and all(poly_divmod(g7, sq, fac)[1] == [] for fac in factors)

    # over the rationals: x^2 - 1 splits at its rational roots
    qq = Field.rationals()
    poly_q = [qq.coerce(-1), qq.zero, qq.one]
    factors = candidate_factors(qq, poly_q, rng)
    assert any(len(fac) == 2 for fac in factors)
