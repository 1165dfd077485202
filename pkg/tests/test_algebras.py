from fractions import Fraction

import pytest

from colimkit.algebras import (Bimodule, StructAlgebra, dual_numbers, ground_field, product_qq,
                               truncated_polynomial, unitalize, zero_mult)
from colimkit.errors import ValidationError


def test_rebase_moves_unit_to_zero():
    # Q x Q with the unit (1, 1) given in the idempotent basis
    a = StructAlgebra(2, {(0, 0): {0: 1}, (1, 1): {1: 1}}, unit=[1, 1])
    assert a.unit_key == 0
    for k in range(2):
        assert a.mul(0, k) == {k: 1} and a.mul(k, 0) == {k: 1}
    # the remaining basis vector is e_1 = (0, 1), an idempotent
    assert a.mul(1, 1) == {1: 1}
    assert a.from_input_coordinates({1: 1}) == {1: 1}
    assert a.from_input_coordinates({0: 1}) == {0: 1, 1: -1}


def test_non_associative_rejected():
    # e0*e0 = e1, e1*e0 = 0 but e0*e1 = e0 breaks associativity
    with pytest.raises(ValidationError):
        StructAlgebra(2, {(0, 0): {1: 1}, (0, 1): {0: 1}})


def test_bad_unit_rejected():
    with pytest.raises(ValidationError):
        StructAlgebra(2, {(0, 0): {0: 1}}, unit=[1, 0])


def test_grading_enforced():
    with pytest.raises(ValidationError):
        StructAlgebra(2, {(0, 0): {0: 1}}, weights=[1, 2])


def test_unitalize():
    a = unitalize(truncated_polynomial(3))
    assert a.dim == 3 and a.unit_key == 0
    assert a.weight(0) == 0 and a.weight(1) == 1 and a.weight(2) == 2
    assert a.mul(1, 1) == {2: 1}


def test_named_algebras():
    assert ground_field().dim == 1 and ground_field().unital
    e = dual_numbers()
    assert e.mul(1, 1) == {} and e.graded
    assert product_qq().dim == 2
    assert zero_mult(3).mul(0, 1) == {}
    t = truncated_polynomial(4)
    assert t.mul(0, 1) == {2: 1} and t.mul(1, 1) == {}


def test_mul_vec_rational():
    e = dual_numbers()
    x = {0: Fraction(1, 2), 1: 3}
    assert e.mul_vec(x, x) == {0: Fraction(1, 4), 1: 3}


def test_regular_bimodule():
    a = dual_numbers()
    m = Bimodule.regular(a)
    m.validate()
    assert m.act_left(1, 0) == {1: 1}
    assert m.act_right(1, 1) == {}


def test_bimodule_validation():
    a = dual_numbers()
    reg = Bimodule.regular(a)
    with pytest.raises(ValidationError):
        Bimodule(a, 2, reg.left, [reg.right[0], reg.right[0]])
