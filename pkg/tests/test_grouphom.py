import pytest

from colimkit import exactla as la
from colimkit.complexes import induced_on_homology_z, is_surjective_abelian
from colimkit.errors import ValidationError
from colimkit.grouphom import (FinGroup, GModule, abelianization_invariants, cyclic_group_oracle,
                               group_homology, quotient_map_chain)


def shape(hs):
    return [(h.betti, tuple(h.torsion)) for h in hs]


@pytest.mark.parametrize("q", [1, 2, 3, 4, 5, 6])
def test_cyclic_trivial_matches_oracle(q):
    g = FinGroup.cyclic(q)
    m = GModule.trivial(g)
    assert shape(group_homology(g, m, 4)) == shape(cyclic_group_oracle(q, m, 4))


@pytest.mark.parametrize("q", [2, 4, 6])
def test_cyclic_sign_module_matches_oracle(q):
    g = FinGroup.cyclic(q)
    m = GModule.sign_cyclic(g)
    assert shape(group_homology(g, m, 4)) == shape(cyclic_group_oracle(q, m, 4))


def test_cyclic_rank_two_module():
    # generator swaps the two coordinates
    g = FinGroup.cyclic(2)
    swap = [[0, 1], [1, 0]]
    m = GModule(g, 2, [[[1, 0], [0, 1]], swap])
    assert shape(group_homology(g, m, 3)) == shape(cyclic_group_oracle(2, m, 3))


def test_c2_and_c3_values():
    for q in (2, 3):
        g = FinGroup.cyclic(q)
        got = [h.describe() for h in group_homology(g, GModule.trivial(g), 4)]
        assert got == ["Z", f"Z/{q}", "0", f"Z/{q}", "0"]


def test_symmetric_group():
    s3 = FinGroup.symmetric(3)
    assert s3.order == 6
    got = [h.describe() for h in group_homology(s3, GModule.trivial(s3), 4)]
    assert got == ["Z", "Z/2", "0", "Z/6", "0"]
    assert abelianization_invariants(s3) == (2,)


def test_klein_four_h1():
    v4 = FinGroup.from_permutations([[1, 0, 3, 2], [2, 3, 0, 1]])
    h1 = group_homology(v4, GModule.trivial(v4), 1)[1]
    assert h1.torsion == (2, 2)
    assert abelianization_invariants(v4) == (2, 2)


@pytest.mark.parametrize("g", [FinGroup.cyclic(4), FinGroup.symmetric(3)])
def test_rational_vanishing(g):
    m = GModule.trivial(g, 1, la.RATIONAL)
    assert [h.dim for h in group_homology(g, m, 3)] == [1, 0, 0, 0]


def test_quotient_map_surjective_on_h1():
    g, h = FinGroup.cyclic(4), FinGroup.cyclic(2)
    f = quotient_map_chain(g, h, [x % 2 for x in range(4)], GModule.trivial(g), GModule.trivial(h), 2)
    m, src, tgt = induced_on_homology_z(f, 1)
    assert src == (4,) and tgt == (2,)
    assert is_surjective_abelian(m, tgt)


def test_bad_tables_rejected():
    with pytest.raises(ValidationError):
        FinGroup([[0, 1], [0, 1]])
    with pytest.raises(ValidationError):
        FinGroup([[0, 1, 2], [1, 0, 0], [2, 0, 0]])


def test_bad_module_rejected():
    g = FinGroup.cyclic(3)
    with pytest.raises(ValidationError):
        GModule(g, 1, [[[1]], [[-1]], [[1]]])
    with pytest.raises(ValidationError):
        GModule.sign_cyclic(g)


def test_order_cap():
    g = FinGroup.cyclic(9)
    with pytest.raises(ValidationError):
        group_homology(g, GModule.trivial(g), 1)


def test_oracle_rejects_non_cyclic():
    s3 = FinGroup.symmetric(3)
    with pytest.raises(ValidationError):
        cyclic_group_oracle(6, GModule.trivial(s3), 2)
