import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bialgkit.exactla import (
    GF,
    DimensionError,
    FieldMismatchError,
    Matrix,
    Q,
    Subspace,
    charpoly,
    eval_poly,
    rational_roots,
    rref,
    solve_linear,
    subspace_intersect,
    subspace_sum,
    tensor_index,
    tensor_unindex,
)

F2 = GF(2)
F5 = GF(5)


def M(field, rows):
    return Matrix.from_rows(field, rows)


# -- rref -------------------------------------------------------------------

def test_rref_identity_already_reduced():
    m = Matrix.identity(Q, 2)
    red, pivots = rref(m)
    assert red == m
    assert pivots == (0, 1)


def test_rref_dependent_rows_collapse():
    red, pivots = rref(M(Q, [[1, 1], [2, 2]]))
    assert pivots == (0,)
    assert red.data[0] == [Fraction(1), Fraction(1)]
    assert red.data[1] == [Fraction(0), Fraction(0)]


def test_rref_mod2_by_hand():
    # (1,1),(1,2) over F_2 is (1,1),(1,0); eliminating by hand gives identity.
    red, pivots = rref(M(F2, [[1, 1], [1, 2]]))
    assert pivots == (0, 1)
    assert red.data == [[1, 0], [0, 1]]


def test_rref_rejects_nothing_but_matrix_ops_check_fields():
    with pytest.raises(FieldMismatchError):
        M(Q, [[1]]).mul(M(F5, [[1]]))


# -- solve ------------------------------------------------------------------

def test_solve_identity():
    a = Matrix.identity(Q, 3)
    b = [Fraction(3), Fraction(-1, 2), Fraction(0)]
    assert solve_linear(a, b) == b


def test_solve_free_variable_zeroed():
    assert solve_linear(M(Q, [[1, 1]]), [1]) == [Fraction(1), Fraction(0)]


def test_solve_inconsistent():
    assert solve_linear(M(Q, [[1, 0], [1, 0]]), [0, 1]) is None


def test_solve_dimension_mismatch():
    with pytest.raises(DimensionError):
        solve_linear(M(Q, [[1, 0]]), [1, 2])


# -- subspaces --------------------------------------------------------------

def test_subspace_sum_intersect_same_space():
    u = Subspace.from_vectors(Q, 3, [[1, 2, 0], [0, 0, 1]])
    assert subspace_sum(u, u) == u
    assert subspace_intersect(u, u) == u


def test_subspace_axes():
    e0 = Subspace.from_vectors(Q, 2, [[1, 0]])
    e1 = Subspace.from_vectors(Q, 2, [[0, 1]])
    assert subspace_sum(e0, e1) == Subspace.full(Q, 2)
    assert subspace_intersect(e0, e1) == Subspace.zero(Q, 2)


def test_subspace_intersect_hand_computed():
    # span{e0+e1, e2} meets span{e1, e2} in span{e2}: solving the stacked
    # system a(e0+e1)+b e2 = c e1 + d e2 forces a = 0, b = d.
    u = Subspace.from_vectors(Q, 3, [[1, 1, 0], [0, 0, 1]])
    v = Subspace.from_vectors(Q, 3, [[0, 1, 0], [0, 0, 1]])
    expected = Subspace.from_vectors(Q, 3, [[0, 0, 1]])
    assert subspace_intersect(u, v) == expected


def test_subspace_ambient_mismatch():
    u = Subspace.from_vectors(Q, 2, [[1, 0]])
    v = Subspace.from_vectors(Q, 3, [[1, 0, 0]])
    with pytest.raises(DimensionError):
        subspace_sum(u, v)


def test_quotient_matrix_kernel_is_subspace():
    u = Subspace.from_vectors(Q, 4, [[1, 0, 2, 0], [0, 1, -1, 0]])
    q = u.quotient_matrix()
    assert q.nrows == 2
    for row in u.basis:
        assert all(not x for x in q.apply(list(row)))
    # A vector outside the subspace must not be killed.
    assert any(q.apply([0, 0, 0, 1]))


def test_coords_roundtrip():
    u = Subspace.from_vectors(Q, 3, [[1, 0, 2], [0, 1, 1]])
    vec = u.member_from_coords([Fraction(2), Fraction(-1)])
    assert u.coords(vec) == [Fraction(2), Fraction(-1)]
    assert u.coords([1, 1, 1]) is None


# -- tensor indices ---------------------------------------------------------

def test_tensor_index_examples():
    assert tensor_index(0, 0, 3, 7) == 0
    assert tensor_index(1, 2, 2, 4) == 6
    assert tensor_unindex(6, 2, 4) == (1, 2)


def test_tensor_index_out_of_range():
    with pytest.raises(IndexError):
        tensor_index(2, 0, 2, 4)
    with pytest.raises(IndexError):
        tensor_unindex(8, 2, 4)


def test_tensor_index_roundtrip_exhaustive():
    for dl in range(1, 17):
        for dr in range(1, 17):
            for i in range(dl):
                for j in range(dr):
                    flat = tensor_index(i, j, dl, dr)
                    assert tensor_unindex(flat, dl, dr) == (i, j)
            for flat in range(dl * dr):
                i, j = tensor_unindex(flat, dl, dr)
                assert tensor_index(i, j, dl, dr) == flat


# -- property tests ---------------------------------------------------------

q_scalar = st.fractions(min_value=-4, max_value=4, max_denominator=3)
f5_scalar = st.integers(min_value=0, max_value=4)


def matrices(field, scalar):
    return st.integers(1, 4).flatmap(
        lambda r: st.integers(1, 4).flatmap(
            lambda c: st.lists(st.lists(scalar, min_size=c, max_size=c),
                               min_size=r, max_size=r)
        )
    ).map(lambda rows: Matrix.from_rows(field, rows))


@settings(max_examples=60, deadline=None)
@given(st.one_of(matrices(Q, q_scalar), matrices(F5, f5_scalar)))
def test_rref_idempotent(m):
    red, pivots = rref(m)
    red2, pivots2 = rref(red)
    assert red2 == red and pivots2 == pivots


@settings(max_examples=60, deadline=None)
@given(st.one_of(matrices(Q, q_scalar), matrices(F5, f5_scalar)), st.data())
def test_solve_agrees_with_rank_oracle(m, data):
    vec = data.draw(st.lists(
        q_scalar if m.field is Q else f5_scalar,
        min_size=m.nrows, max_size=m.nrows))
    b = [m.field.coerce(x) for x in vec]
    x = solve_linear(m, b)
    # Independent consistency oracle: compare ranks of A and [A | b].
    aug = m.hstack(Matrix.from_rows(m.field, [[v] for v in b]))
    consistent = m.rank() == aug.rank()
    if consistent:
        assert x is not None
        assert m.apply(x) == b
    else:
        assert x is None


def subspaces(field, scalar, ambient=4):
    return st.lists(
        st.lists(scalar, min_size=ambient, max_size=ambient),
        min_size=0, max_size=4,
    ).map(lambda vs: Subspace.from_vectors(field, ambient, vs))


@settings(max_examples=60, deadline=None)
@given(st.one_of(
    st.tuples(subspaces(Q, q_scalar), subspaces(Q, q_scalar)),
    st.tuples(subspaces(F5, f5_scalar), subspaces(F5, f5_scalar)),
))
def test_modular_law(uv):
    u, v = uv
    s = subspace_sum(u, v)
    i = subspace_intersect(u, v)
    assert s.dim + i.dim == u.dim + v.dim
    assert i.is_subspace_of(u) and i.is_subspace_of(v)
    assert u.is_subspace_of(s) and v.is_subspace_of(s)


# -- characteristic polynomials ---------------------------------------------

def _det_laplace(field, rows):
    n = len(rows)
    if n == 0:
        return field.one
    if n == 1:
        return rows[0][0]
    acc = field.zero
    sign = field.one
    for j in range(n):
        a = rows[0][j]
        if a:
            minor = [[r[k] for k in range(n) if k != j] for r in rows[1:]]
            acc = field.add(acc, field.mul(field.mul(sign, a),
                                           _det_laplace(field, minor)))
        sign = field.neg(sign)
    return acc


@settings(max_examples=40, deadline=None)
@given(st.one_of(matrices(Q, q_scalar), matrices(F5, f5_scalar)))
def test_charpoly_matches_determinant_oracle(m):
    if m.nrows != m.ncols:
        m = Matrix.from_rows(m.field, [r[: min(m.nrows, m.ncols)]
                                       for r in m.data[: min(m.nrows, m.ncols)]])
    coeffs = charpoly(m)
    f = m.field
    assert coeffs[-1] == f.one
    # p(t) must equal det(tI - A) evaluated pointwise.
    for t in range(m.nrows + 2):
        tt = f.coerce(t)
        shifted = [[f.sub(tt if i == j else f.zero, m.data[i][j])
                    for j in range(m.nrows)] for i in range(m.nrows)]
        assert eval_poly(coeffs, tt, f) == _det_laplace(f, shifted)


def test_rational_roots_frozen_examples():
    # (x-1)(x-2)^2 = x^3 -5x^2 +8x -4
    coeffs = [Fraction(-4), Fraction(8), Fraction(-5), Fraction(1)]
    assert rational_roots(coeffs, Q) == [(Fraction(1), 1), (Fraction(2), 2)]
    # x^2 + 1 has no rational roots
    assert rational_roots([Fraction(1), Fraction(0), Fraction(1)], Q) == []
    # x(2x-1) has roots 0 and 1/2
    assert rational_roots([Fraction(0), Fraction(-1), Fraction(2)], Q) == [
        (Fraction(0), 1), (Fraction(1, 2), 1)]
    # over F_5: x^2 - 1 = (x-1)(x-4)
    assert rational_roots([4, 0, 1], F5) == [(1, 1), (4, 1)]
    # over F_5: x^2 + 2 is irreducible (squares mod 5 are 0,1,4)
    assert rational_roots([2, 0, 1], F5) == []


def test_field_scalar_normalization():
    assert Q.coerce("6/4") == Fraction(3, 2)
    assert F5.coerce(7) == 2
    assert F5.coerce(Fraction(1, 2)) == 3  # 2 * 3 = 6 = 1 mod 5
    assert math.isclose(float(Q.coerce("-2/6")), -1 / 3)
