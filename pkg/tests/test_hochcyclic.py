import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from colimkit import generators as gen
from colimkit.acceptance import second_presentation_zero2
from colimkit.algebras import (Bimodule, dual_numbers, ground_field, product_qq,
                               truncated_polynomial, unitalize, zero_mult)
from colimkit.errors import ValidationError
from colimkit.freegraded import GradedFreeAlgebra, hopf_hc_odd, necklace_count, standard_presentation
from colimkit.hochcyclic import (CyclicBicomplexSpec, cyclic_bicomplex, cyclic_homology,
                                 cyclic_nonunital, h1_via_omega, hochschild, lambda_complex,
                                 lambda_homology, magnus_check, omega, sbi_sequence)


def test_hochschild_small():
    assert hochschild(ground_field(), max_degree=4).total == [1, 0, 0, 0, 0]
    assert hochschild(dual_numbers(), max_degree=4, max_weight=6).total == [2, 1, 1, 1, 1]
    assert hochschild(product_qq(), max_degree=3).total == [2, 0, 0, 0]


def test_cyclic_small():
    assert cyclic_homology(ground_field(), 4).total == [1, 0, 1, 0, 1]
    assert cyclic_homology(ground_field(), 4, reduced=True).total == [0] * 5
    assert cyclic_homology(product_qq(), 4).total == [2, 0, 2, 0, 2]
    assert cyclic_homology(dual_numbers(), 4, 6).total == [2, 0, 2, 0, 2]


def test_dual_numbers_weights():
    # the extra class sits in weights 1, 3, 5 for degrees 0, 2, 4
    bw = cyclic_homology(dual_numbers(), 4, 6).by_weight
    assert bw[1] == [1, 0, 0, 0, 0]
    assert bw[3][2] == 1 and bw[5][4] == 1


def test_zero2_hc1_in_weight_two():
    bw = cyclic_nonunital(zero_mult(2), 1, 4).by_weight
    assert {w: bw.get(w, [0, 0])[1] for w in range(1, 5)} == {1: 0, 2: 1, 3: 0, 4: 0}


def test_lambda_complex_of_q():
    cx = lambda_complex(ground_field(), 4)
    assert [cx.dim(n) for n in range(5)] == [1, 0, 1, 0, 1]


def test_bicomplex_blocks_commute():
    spec = CyclicBicomplexSpec(dual_numbers(), 3, False, 4)
    for dc in cyclic_bicomplex(spec).values():
        dc.check()


def test_nonunital_guards():
    with pytest.raises(ValidationError):
        hochschild(zero_mult(1), max_degree=2, max_weight=3)
    with pytest.raises(ValidationError):
        cyclic_nonunital(ground_field(), 2)
    with pytest.raises(ValidationError):
        hochschild(dual_numbers(), max_degree=2)


def test_free_algebra_reduced_cyclic():
    for m in (1, 2):
        f = GradedFreeAlgebra([1] * m, unital=True, max_weight=5)
        bw = cyclic_homology(f, 4, 5, reduced=True).by_weight
        for w in range(1, 6):
            assert bw[w] == [necklace_count(m, w), 0, 0, 0, 0]


def test_free_algebra_hochschild():
    f = GradedFreeAlgebra([1, 1], unital=True, max_weight=5)
    bw = hochschild(f, None, 3, 5).by_weight
    for w in range(1, 6):
        assert bw[w][1] == necklace_count(2, w) and bw[w][2] == bw[w][3] == 0


@pytest.mark.parametrize("a", [ground_field(), dual_numbers(), product_qq()], ids=["Q", "Qe", "QxQ"])
def test_sbi_exact(a):
    res = sbi_sequence(a, 5, 6 if a.graded else None)
    assert res.exact, res.failures


def test_omega_dimensions():
    assert omega(ground_field()).dim == 0
    assert omega(product_qq()).dim == 2
    assert omega(dual_numbers()).dim == 2


def test_h1_via_omega_small():
    assert h1_via_omega(ground_field()) == 0
    assert h1_via_omega(dual_numbers()) == 1
    assert h1_via_omega(product_qq()) == 0


def test_h1_with_other_bimodules():
    from colimkit.exactla import ExactMatrix
    one, zero = ExactMatrix.from_dense([[1]]), ExactMatrix.from_dense([[0]])
    # dual numbers acting on Q through ε ↦ 0 on both sides
    a = dual_numbers()
    k = Bimodule(a, 1, [one, zero], [one, zero], weights=[0])
    assert h1_via_omega(a, k) == hochschild(a, k, 1, 3).total[1] == 1
    # Q x Q: the idempotent acts by 1 on the left and 0 on the right
    b = product_qq()
    m = Bimodule(b, 1, [one, one], [one, zero])
    assert h1_via_omega(b, m) == hochschild(b, m, 1).total[1] == 0


def test_h1_matches_hh1_random_algebras():
    rng = random.Random(11)
    checked = 0
    while checked < 24:
        a = gen.random_algebra(rng, unital=True)
        assert h1_via_omega(a) == hochschild(a, max_degree=1).total[1]
        checked += 1


@settings(max_examples=25)
@given(st.integers(0, 10 ** 6))
def test_lambda_matches_bicomplex(seed):
    a = gen.random_algebra(seed)
    bic = cyclic_homology(a, 3).total if a.unital else cyclic_nonunital(a, 3).total
    assert lambda_homology(a, 3).total == bic


@pytest.mark.parametrize("a", [zero_mult(1), zero_mult(2), truncated_polynomial(3)],
                         ids=lambda a: a.name)
def test_lambda_matches_bicomplex_graded(a):
    bic = cyclic_nonunital(a, 3, 5).by_weight
    lam = lambda_homology(a, 3, 5).by_weight
    for w in range(1, 6):
        assert bic.get(w, [0] * 4) == lam.get(w, [0] * 4)


def test_nonunital_via_unitalization():
    a = truncated_polynomial(3)
    assert cyclic_nonunital(a, 3, 5).total == cyclic_homology(unitalize(a), 3, 5, reduced=True).total


@pytest.mark.parametrize("a", [zero_mult(2), truncated_polynomial(3)], ids=lambda a: a.name)
def test_hopf_matches_bicomplex(a):
    p = standard_presentation(a, 5)
    bw = cyclic_nonunital(a, 3, 5).by_weight
    for n in (0, 1):
        assert hopf_hc_odd(p, n, 5) == {w: bw.get(w, [0] * 4)[2 * n + 1] for w in range(1, 6)}


def test_magnus_check():
    assert magnus_check(standard_presentation(zero_mult(2), 4), 4)["ok"]
    assert magnus_check(second_presentation_zero2(4), 4)["ok"]
    assert magnus_check(standard_presentation(truncated_polynomial(3), 4), 4)["ok"]
