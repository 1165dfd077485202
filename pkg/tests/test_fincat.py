import pytest
from hypothesis import given
from hypothesis import strategies as st

from colimkit import exactla as la
from colimkit import generators as gen
from colimkit.errors import ValidationError
from colimkit.fincat import (DiagramFunctor, FinCategory, colim0_coeq, colim_complex,
                            constant_functor, derived_colim, external_tensor,
                            has_pairwise_coproducts, is_strongly_connected, nerve_chains,
                            product_category)


def c2():
    return FinCategory(["*"], [("t", "*", "*")], {("t", "t"): "1_*"})


def arrow():
    return FinCategory(["a", "b"], [("f", "a", "b")], {})


def test_c2_nerve_differentials():
    c = c2()
    cx = colim_complex(c, constant_functor(c, 1, la.INTEGER), 4)
    assert [cx.d(n).to_dense() for n in range(1, 5)] == [[[0]], [[2]], [[0]], [[2]]]


def test_c2_integral_colimits():
    c = c2()
    hs = derived_colim(c, constant_functor(c, 1, la.INTEGER), 4)
    assert [h.describe() for h in hs] == ["Z", "Z/2", "0", "Z/2", "0"]


def test_sign_module_over_c2():
    c = c2()
    m = DiagramFunctor(c, {"*": 1}, {"t": [[-1]]}, la.INTEGER)
    assert [h.describe() for h in derived_colim(c, m, 3)] == ["Z/2", "0", "Z/2", "0"]
    m_q = DiagramFunctor(c, {"*": 1}, {"t": [[-1]]})
    assert colim0_coeq(c, m_q).dim == 0


def test_arrow_category_is_acyclic():
    c = arrow()
    assert [h.dim for h in derived_colim(c, constant_functor(c, 2), 3)] == [2, 0, 0, 0]


def test_nerve_chain_counts():
    c = arrow()
    assert len(nerve_chains(c, 1)) == 1
    assert len(nerve_chains(c, 1, normalized=False)) == 3
    assert len(nerve_chains(c, 2)) == 0


def test_missing_composite_rejected():
    with pytest.raises(ValidationError):
        FinCategory(["a", "b", "c"], [("f", "a", "b"), ("g", "b", "c")], {})


def test_non_associative_rejected():
    # t∘t = t but u∘t, t∘u chosen inconsistently
    mors = [("t", "*", "*"), ("u", "*", "*")]
    comp = {("t", "t"): "t", ("u", "u"): "u", ("t", "u"): "t", ("u", "t"): "1_*"}
    with pytest.raises(ValidationError):
        FinCategory(["*"], mors, comp)


def test_non_functor_rejected():
    with pytest.raises(ValidationError) as err:
        DiagramFunctor(c2(), {"*": 1}, {"t": [[2]]})
    assert err.value.location is not None


def test_wrong_shape_rejected():
    with pytest.raises(ValidationError):
        DiagramFunctor(arrow(), {"a": 1, "b": 2}, {"f": [[1, 0]]})


def test_coproducts():
    ok, _ = has_pairwise_coproducts(gen.join_semilattice(3))
    assert ok
    discrete = FinCategory(["a", "b"], [], {})
    assert not has_pairwise_coproducts(discrete)[0]
    assert not has_pairwise_coproducts(c2())[0]


def test_strong_connectivity():
    assert is_strongly_connected(c2())
    assert not is_strongly_connected(arrow())
    with pytest.raises(ValidationError):
        colim0_coeq(arrow(), constant_functor(arrow(), 1))


def test_product_category_kunneth_for_constants():
    c = product_category(c2(), arrow())
    hs = derived_colim(c, constant_functor(c, 1), 2)
    assert [h.dim for h in hs] == [1, 0, 0]


@given(st.integers(0, 10 ** 6))
def test_normalized_matches_unnormalized(seed):
    c = gen.poset_with_top(seed, 4, 12)
    m = constant_functor(c, 1)
    a = [h.dim for h in derived_colim(c, m, 2)]
    b = [h.dim for h in derived_colim(c, m, 2, normalized=False)]
    assert a == b


@given(st.integers(0, 10 ** 6))
def test_normalized_matches_unnormalized_nonconstant(seed):
    c = gen.random_poset(seed, 4)
    m = gen.poset_functor(seed + 1, c)
    a = [h.dim for h in derived_colim(c, m, 2)]
    b = [h.dim for h in derived_colim(c, m, 2, normalized=False)]
    assert a == b


@given(st.integers(0, 10 ** 6))
def test_terminal_object_acyclic(seed):
    c = gen.poset_with_top(seed)
    assert [h.dim for h in derived_colim(c, constant_functor(c, 1), 3)] == [1, 0, 0, 0]


@given(st.integers(0, 10 ** 6))
def test_coeq_equals_colim0(seed):
    c, m = gen.strongly_connected(seed)
    assert colim0_coeq(c, m).dim == derived_colim(c, m, 0)[0].dim


@given(st.integers(0, 10 ** 6))
def test_kunneth(seed):
    c = gen.join_semilattice(seed)
    phi, psi = gen.poset_functor(seed + 1, c), gen.poset_functor(seed + 2, c)
    a = [h.dim for h in derived_colim(c, phi, 2)]
    b = [h.dim for h in derived_colim(c, psi, 2)]
    t = [h.dim for h in derived_colim(c, external_tensor(c, phi, psi), 2)]
    assert t == [sum(a[i] * b[n - i] for i in range(n + 1)) for n in range(3)]


def test_coeq_over_integers_reports_torsion():
    c = c2()
    m = DiagramFunctor(c, {"*": 1}, {"t": [[-1]]}, la.INTEGER)
    q = colim0_coeq(c, m)
    assert q.dim == 0 and q.torsion == (2,)


def test_circle_poset_has_h1():
    objs = ["a", "b", "c", "d"]
    mors = [("ac", "a", "c"), ("ad", "a", "d"), ("bc", "b", "c"), ("bd", "b", "d")]
    c = FinCategory(objs, mors, {})
    assert [h.dim for h in derived_colim(c, constant_functor(c, 1), 2)] == [1, 1, 0]
