import pytest

from colimkit.errors import ValidationError
from colimkit.steinberg import (ElementaryMatrixGroupContext, FiniteRing, e_matrix, fiber_product,
                                gamma_generators_trivial, identity_matrix, matmul,
                                steinberg_relations_check, zmod_quotient_map)


@pytest.mark.parametrize("m,n", [(4, 3), (6, 3), (2, 4)])
def test_relations_hold(m, n):
    v = steinberg_relations_check(ElementaryMatrixGroupContext(FiniteRing.zmod(m), n))
    assert v.ok and not v.violations


def test_relation_counts():
    v = steinberg_relations_check(ElementaryMatrixGroupContext(FiniteRing.zmod(4), 3))
    # 6 ordered pairs, 6 index triples, 24 commuting pairs of pairs; 16 (x, y) each
    assert v.checked == {"additive": 96, "commutator": 96, "commuting": 384 - 96}


def test_e_matrix():
    ctx = ElementaryMatrixGroupContext(FiniteRing.zmod(5), 3)
    e = e_matrix(ctx, 1, 3, 2)
    assert e[0][2] == 2 and e[0][0] == 1 and e[1][0] == 0
    assert matmul(ctx, e, e_matrix(ctx, 1, 3, 3)) == identity_matrix(ctx)
    with pytest.raises(ValidationError):
        e_matrix(ctx, 2, 2, 1)
    with pytest.raises(ValidationError):
        e_matrix(ctx, 0, 2, 1)


def test_small_size_rejected():
    with pytest.raises(ValidationError):
        ElementaryMatrixGroupContext(FiniteRing.zmod(3), 2)


def test_ring_axioms_checked():
    add = [[(a + b) % 3 for b in range(3)] for a in range(3)]
    bad_mul = [[0, 0, 0], [0, 1, 2], [0, 2, 2]]
    with pytest.raises(ValidationError):
        FiniteRing(add, bad_mul)


def test_explicit_tables_match_zmod():
    z = FiniteRing.zmod(6)
    r = FiniteRing(z.add_t, z.mul_t)
    assert steinberg_relations_check(ElementaryMatrixGroupContext(r, 3)).ok


@pytest.mark.parametrize("m,k,size", [(4, 2, 8), (9, 3, 27)])
def test_fiber_product_size(m, k, size):
    fp = fiber_product(FiniteRing.zmod(m), FiniteRing.zmod(k), zmod_quotient_map(m, k))
    assert fp.ring.size == size


def test_fiber_product_over_identity_is_diagonal():
    b = FiniteRing.zmod(5)
    fp = fiber_product(b, b, list(range(5)))
    assert fp.ring.size == 5 and all(x == y for x, y in fp.pairs)


def test_fiber_product_rejects_bad_maps():
    b, a = FiniteRing.zmod(4), FiniteRing.zmod(2)
    with pytest.raises(ValidationError):
        fiber_product(b, a, [0, 1, 1, 0])        # not additive
    with pytest.raises(ValidationError):
        fiber_product(FiniteRing.zmod(2), FiniteRing.zmod(4), [0, 2])  # does not preserve 1


@pytest.mark.parametrize("m,k,pairs", [(4, 2, 4), (9, 3, 9)])
def test_gamma_generators(m, k, pairs):
    v = gamma_generators_trivial(FiniteRing.zmod(m), FiniteRing.zmod(k), zmod_quotient_map(m, k))
    assert v.ok and v.checked["pairs"] == pairs


def test_quotient_map_requires_divisor():
    with pytest.raises(ValidationError):
        zmod_quotient_map(6, 4)
