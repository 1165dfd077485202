import json

import pytest

from colimkit import generators as gen
from colimkit.algebras import dual_numbers, product_qq, truncated_polynomial
from colimkit.documents import (algebra_from_doc, algebra_to_doc, category_from_doc,
                                category_to_doc, functor_from_doc, functor_to_doc, group_from_doc,
                                module_from_doc, parse_number, presentation_from_doc,
                                presentation_to_doc, ring_from_doc)
from colimkit.errors import ValidationError
from colimkit.fincat import derived_colim
from colimkit.freegraded import hopf_hc_odd, standard_presentation


def roundtrip(doc):
    return json.loads(json.dumps(doc))


def test_parse_number():
    from fractions import Fraction
    assert parse_number("3/4") == Fraction(3, 4)
    assert parse_number(-2) == -2
    with pytest.raises(ValidationError):
        parse_number(0.5)
    with pytest.raises(ValidationError):
        parse_number("1/0")


def test_category_and_functor_roundtrip():
    c = gen.random_poset(4, 5)
    m = gen.poset_functor(5, c)
    c2 = category_from_doc(roundtrip(category_to_doc(c)))
    m2 = functor_from_doc(roundtrip(functor_to_doc(m)), c2)
    assert [h.dim for h in derived_colim(c, m, 2)] == [h.dim for h in derived_colim(c2, m2, 2)]
    assert functor_to_doc(m2) == functor_to_doc(m)


def test_functor_with_fractions():
    doc = {"objects": ["a", "b"], "morphisms": [{"name": "f", "dom": "a", "cod": "b"}], "compose": []}
    c = category_from_doc(doc)
    m = functor_from_doc({"coeff": "Q", "dims": {"a": 1, "b": 1}, "maps": {"f": [["1/2"]]}}, c)
    assert functor_to_doc(m)["maps"]["f"] == [["1/2"]]
    with pytest.raises(ValidationError):
        functor_from_doc({"coeff": "Z", "dims": {"a": 1, "b": 1}, "maps": {"f": [["1/2"]]}}, c)


def test_category_errors_have_locations():
    with pytest.raises(ValidationError) as err:
        category_from_doc({"objects": ["a"], "morphisms": [{"name": "f", "dom": "a"}]})
    assert err.value.location == "morphisms[0]"
    with pytest.raises(ValidationError):
        category_from_doc({"morphisms": []})


def test_group_documents():
    assert group_from_doc({"perm_generators": [[1, 0, 2], [1, 2, 0]]}).order == 6
    assert group_from_doc({"table": [[0, 1], [1, 0]]}).order == 2
    g = group_from_doc({"cyclic": 4})
    m = module_from_doc({"coeff": "Z", "rank": 1, "actions": [[[1]], [[-1]], [[1]], [[-1]]]}, g)
    assert m.rank == 1
    with pytest.raises(ValidationError):
        module_from_doc({"rank": 1, "actions": [[[1]]]}, g)
    with pytest.raises(ValidationError):
        group_from_doc({"elements": 3})


@pytest.mark.parametrize("a", [dual_numbers(), product_qq(), truncated_polynomial(4)],
                         ids=lambda a: a.name or "A")
def test_algebra_roundtrip(a):
    b = algebra_from_doc(roundtrip(algebra_to_doc(a)))
    assert b.dim == a.dim and b.table == a.table and b.unit_key == a.unit_key
    assert b.graded == a.graded


def test_algebra_with_nonstandard_unit():
    # Q x Q in the idempotent basis, unit (1, 1)
    doc = {"dim": 2, "unital": True, "unit": [1, 1],
           "table": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]}
    a = algebra_from_doc(doc)
    assert a.unit_key == 0 and a.mul(1, 1) == {1: 1}


def test_algebra_errors():
    with pytest.raises(ValidationError):
        algebra_from_doc({"dim": 1, "table": [[[1, 0]]]})
    with pytest.raises(ValidationError):
        algebra_from_doc({"dim": 1, "unital": True, "table": [[[1]]]})


def test_presentation_roundtrip():
    p = standard_presentation(truncated_polynomial(3), 5)
    q = presentation_from_doc(roundtrip(presentation_to_doc(p)), 5)
    assert hopf_hc_odd(p, 0, 5) == hopf_hc_odd(q, 0, 5)


def test_presentation_per_weight_images():
    doc = {"generators": [{"name": "x", "weight": 1}, {"name": "y", "weight": 1}],
           "algebra": {"dim": 2, "weights": [1, 1], "table": [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]},
           "images": {"x": {"1": [1, 0]}, "y": {"1": [1, 1]}}}
    p = presentation_from_doc(doc, 4)
    assert p.images == [{0: 1}, {0: 1, 1: 1}]
    doc["images"]["y"] = {"1": [1]}
    with pytest.raises(ValidationError):
        presentation_from_doc(doc, 4)


def test_ring_documents():
    assert ring_from_doc("Z/6").size == 6
    assert ring_from_doc({"zmod": 4}).size == 4
    z = ring_from_doc({"add": [[0, 1], [1, 0]], "mul": [[0, 0], [0, 1]]})
    assert z.size == 2
    with pytest.raises(ValidationError):
        ring_from_doc("Q")
