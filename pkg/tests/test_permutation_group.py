"""Tests for permutation group closure and inner automorphism groups"""

import pytest

from qhk.constructors import make_dihedral, make_trivial
from qhk.exceptions import GroupTooLarge
from qhk.permutation_group import PermutationGroup, inner_group
from tests.corpus import q12_10, q15_2, qs6, r3_t2, r3_t2_extension


def test_symmetric_group_order():
    """A transposition and an n-cycle generate S_n"""
    group = PermutationGroup(5, [(1, 0, 2, 3, 4), (1, 2, 3, 4, 0)])
    assert group.order == 120
    assert (4, 3, 2, 1, 0) in group


def test_trivial_generators():
    """No generators, or only the identity, give the trivial group"""
    assert PermutationGroup(3, []).order == 1
    assert PermutationGroup(3, [(0, 1, 2)]).order == 1


def test_rejects_non_permutation():
    """Generators must be permutations of the degree"""
    with pytest.raises(ValueError):
        PermutationGroup(3, [(0, 0, 1)])


def test_order_cap():
    """Closure stops once the cap is exceeded"""
    group = PermutationGroup(
        6, [(1, 0, 2, 3, 4, 5), (1, 2, 3, 4, 5, 0)], max_order=100
    )
    with pytest.raises(GroupTooLarge) as exc:
        group.order
    assert exc.value.cap == 100


@pytest.mark.parametrize(
    "build, order",
    [
        (qs6, 24),
        (q12_10, 216),
        (q15_2, 60),
        (lambda: make_dihedral(6), 6),
        (lambda: make_dihedral(10), 10),
        (lambda: make_dihedral(5), 10),
        (lambda: make_trivial(4), 1),
    ],
)
def test_inner_group_orders(build, order):
    """|Inn(X)| of the corpus"""
    assert inner_group(build()).order == order


def test_inner_group_order_is_an_invariant():
    """The cocycle rebuild and the transcribed table share |Inn|"""
    assert inner_group(r3_t2()).order == inner_group(r3_t2_extension()).order


def test_orders_match_sympy():
    """Cross-check the breadth-first closure against sympy"""
    sympy_comb = pytest.importorskip("sympy.combinatorics")
    for Q in (qs6(), r3_t2(), make_dihedral(7), q12_10()):
        generators = sorted({Q.column(b) for b in Q.elements})
        expected = sympy_comb.PermutationGroup(
            [sympy_comb.Permutation(list(g)) for g in generators]
        ).order()
        assert inner_group(Q).order == expected
