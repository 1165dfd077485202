from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from colimkit import exactla as la
from colimkit.errors import NotContainedError, ValidationError
from colimkit.exactla import ExactMatrix, Subspace


def matrices(max_rows=6, max_cols=6, lo=-3, hi=3):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                               min_size=r, max_size=r)))


def test_check_flag_is_on():
    assert la.CHECK_INVARIANTS


def test_rank_one_kernel():
    m = ExactMatrix.from_dense([[1, 2], [2, 4]])
    assert la.rank(m) == 1
    k = la.kernel(m)
    assert k.dim == 1
    v = k.basis.row(0)
    assert m.apply(v) == {}


def test_snf_known():
    m = ExactMatrix.from_dense([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], la.INTEGER)
    res = la.snf(m)
    assert res.invariant_factors == (2, 6, 12)
    la.check_snf(m, res)
    assert abs(la.determinant(res.U)) == 1 and abs(la.determinant(res.V)) == 1


def test_integer_mode_rejects_fractions():
    with pytest.raises(ValidationError):
        ExactMatrix.from_dense([[Fraction(1, 2)]], la.INTEGER)


def test_rref_rejects_integer_mode():
    with pytest.raises(ValidationError):
        la.rref(ExactMatrix.identity(2, la.INTEGER))


def test_empty_and_zero_shapes():
    z = ExactMatrix.zeros(0, 3)
    assert la.rank(z) == 0
    assert la.kernel(z).dim == 3
    assert la.rank(ExactMatrix.zeros(4, 0)) == 0


def test_inverse_and_solve():
    m = ExactMatrix.from_dense([[2, 1], [1, 1]])
    inv = la.inverse(m)
    assert m @ inv == ExactMatrix.identity(2)
    x = la.solve(m, ExactMatrix.from_dense([[3], [2]]))
    assert x.to_dense() == [[1], [1]]
    assert la.solve(ExactMatrix.from_dense([[1, 1], [1, 1]]), ExactMatrix.from_dense([[1], [2]])) is None


def test_quotient_dim_requires_containment():
    big = Subspace.span(3, [{0: 1}])
    small = Subspace.span(3, [{1: 1}])
    with pytest.raises(NotContainedError) as err:
        la.quotient_dim(big, small)
    assert err.value.witness is not None


def test_dense_and_sparse_paths_agree():
    # 70 columns forces the sparse path; the same data in a small block uses dense
    rows = [{j: (i * 7 + j * 3) % 5 - 2 for j in range(0, 70, 9)} for i in range(12)]
    big = ExactMatrix.from_row_dicts(rows, 70)
    cols = sorted({j for r in rows for j in r})
    small = big.take_cols(cols)
    assert la.rank(big) == la.rank(small)


@given(matrices())
def test_rank_matches_sympy(data):
    m = ExactMatrix.from_dense(data)
    assert la.rank(m) == sympy.Matrix(data).rank()


@given(matrices())
def test_rank_of_transpose(data):
    m = ExactMatrix.from_dense(data)
    assert la.rank(m) == la.rank(m.T)


@given(matrices())
def test_rank_nullity(data):
    m = ExactMatrix.from_dense(data)
    k = la.kernel(m)
    assert la.rank(m) + k.dim == m.ncols
    for r in range(k.dim):
        assert m.apply(k.basis.row(r)) == {}


@given(matrices(5, 5, -6, 6))
def test_snf_matches_sympy(data):
    from sympy.matrices.normalforms import smith_normal_form
    m = ExactMatrix.from_dense(data, la.INTEGER)
    res = la.snf(m)
    la.check_snf(m, res)
    d = smith_normal_form(sympy.Matrix(data), domain=sympy.ZZ)
    diag = [abs(int(d[i, i])) for i in range(min(d.shape)) if d[i, i] != 0]
    assert list(res.invariant_factors) == diag
    assert la.invariant_factors(m) == res.invariant_factors


@given(matrices(4, 4, -4, 4))
def test_invariant_factors_divide(data):
    facs = la.invariant_factors(ExactMatrix.from_dense(data, la.INTEGER))
    assert all(b % a == 0 for a, b in zip(facs, facs[1:]))


def _subspace(ambient, vecs):
    return Subspace.span(ambient, [{i: x for i, x in enumerate(v) if x} for v in vecs])


vec_lists = st.lists(st.lists(st.integers(-2, 2), min_size=5, max_size=5), max_size=4)


@settings(max_examples=120)
@given(vec_lists, vec_lists, vec_lists)
def test_modular_law(a, b, c):
    # A ⊆ C  ⇒  A + (B ∩ C) = (A + B) ∩ C
    A, B, C = _subspace(5, a), _subspace(5, b), _subspace(5, c)
    C = la.subspace_sum(A, C)
    lhs = la.subspace_sum(A, la.subspace_intersect(B, C))
    rhs = la.subspace_intersect(la.subspace_sum(A, B), C)
    assert lhs == rhs


@given(vec_lists, vec_lists)
def test_dimension_formula(a, b):
    A, B = _subspace(5, a), _subspace(5, b)
    s, i = la.subspace_sum(A, B), la.subspace_intersect(A, B)
    assert s.dim + i.dim == A.dim + B.dim
    assert A.contains_space(i) and s.contains_space(B)
    assert la.quotient_dim(s, A) == s.dim - A.dim


@given(vec_lists)
def test_annihilator_dimension(a):
    A = _subspace(5, a)
    assert A.annihilator().dim == 5 - A.dim
