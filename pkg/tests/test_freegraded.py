import pytest
from hypothesis import given
from hypothesis import strategies as st

from colimkit.acceptance import second_presentation_zero2
from colimkit.algebras import StructAlgebra, truncated_polynomial, zero_mult
from colimkit.errors import ValidationError
from colimkit.freegraded import (GradedFreeAlgebra, GradedPresentation, commutator_space,
                                 hopf_hc_odd, identity_presentation, kernel_component,
                                 lemma56_dimension_check, necklace_count,
                                 relations_modulo_square, standard_presentation)


def brute_necklaces(m, w):
    seen = set()
    count = 0
    import itertools
    for word in itertools.product(range(m), repeat=w):
        if word in seen:
            continue
        count += 1
        for k in range(w):
            seen.add(word[k:] + word[:k])
    return count


@given(st.integers(1, 3), st.integers(1, 6))
def test_necklace_formula(m, w):
    assert necklace_count(m, w) == brute_necklaces(m, w)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_lemma_dimension_identity(m):
    assert lemma56_dimension_check(m, 6)["ok"]


def test_words_and_weights():
    f = GradedFreeAlgebra([1, 2], max_weight=4)
    assert f.dim(1) == 1 and f.dim(2) == 2 and f.dim(3) == 3
    assert all(f.word_weight(u) == 4 for u in f.words(4))
    assert f.mul((0,), (1,)) == {(0, 1): 1}
    with pytest.raises(ValidationError):
        f.mul((1,), (1, 0))


def test_commutator_space_one_generator():
    f = GradedFreeAlgebra([1], max_weight=5)
    assert commutator_space(f, 4).dim == 0


def test_zero2_values():
    p = standard_presentation(zero_mult(2), 6)
    assert hopf_hc_odd(p, 0, 6) == {1: 0, 2: 1, 3: 0, 4: 0, 5: 0, 6: 0}
    assert hopf_hc_odd(p, 1, 6)[4] == 4


def test_monogenic_vanishing():
    for a in (zero_mult(1), truncated_polynomial(3), truncated_polynomial(4)):
        p = standard_presentation(a, 6)
        assert p.free.m == 1
        for n in (0, 1):
            assert not any(hopf_hc_odd(p, n, 6).values())


def test_two_presentations_agree():
    p1 = standard_presentation(zero_mult(2), 6)
    p2 = second_presentation_zero2(6)
    for n in (0, 1):
        assert hopf_hc_odd(p1, n, 6) == hopf_hc_odd(p2, n, 6)


def test_identity_presentation_has_no_relations():
    p = identity_presentation(2, 4)
    assert all(kernel_component(p, w).dim == 0 for w in range(1, 5))
    assert hopf_hc_odd(p, 0, 4) == {1: 0, 2: 0, 3: 0, 4: 0}


def test_relations_modulo_square_zero_mult():
    p = standard_presentation(zero_mult(2), 4)
    # R = F_{≥2}, R² = F_{≥4}
    assert relations_modulo_square(p, 4) == {1: 0, 2: 4, 3: 8, 4: 0}


def test_non_surjective_rejected():
    f = GradedFreeAlgebra([1], max_weight=3)
    with pytest.raises(ValidationError):
        GradedPresentation(f, zero_mult(2), {0: {0: 1}})


def test_inhomogeneous_image_rejected():
    f = GradedFreeAlgebra([1], max_weight=3)
    with pytest.raises(ValidationError):
        GradedPresentation(f, truncated_polynomial(3), {0: {0: 1, 1: 1}})


def test_ungraded_target_rejected():
    f = GradedFreeAlgebra([1], max_weight=3)
    a = StructAlgebra(1, {})
    with pytest.raises(ValidationError):
        GradedPresentation(f, a, {0: {0: 1}})


def test_weight_cap():
    p = standard_presentation(zero_mult(1), 4)
    with pytest.raises(ValidationError):
        hopf_hc_odd(p, 0, 6)
