"""Tests for the isomorphism search"""

import pytest

from qhk.constructors import (
    make_alexander,
    make_conjugation_class,
    make_dihedral,
    make_trivial,
)
from qhk.exceptions import SearchBudgetExceeded, SizeMismatch
from qhk.isomorphism import are_isomorphic, element_signatures
from qhk.quandle import validate_table
from tests.corpus import q12_10, qs6, r3_t2, r3_t2_extension


def _relabel(Q, perm):
    """The table of Q transported along the bijection perm"""
    inv = [0] * Q.size
    for x, y in enumerate(perm):
        inv[y] = x
    grid = [
        [perm[Q.op(inv[a], inv[b])] for b in Q.elements]
        for a in Q.elements
    ]
    return validate_table(grid)


def test_dihedral_is_alexander():
    """R3 is the Alexander quandle with t = 2"""
    assert are_isomorphic(make_dihedral(3), make_alexander(3, 2))


def test_trivial_is_not_dihedral():
    """T3 and R3 differ"""
    assert not are_isomorphic(make_trivial(3), make_dihedral(3))


def test_relabelled_tables_are_isomorphic():
    """Any relabelling of a table is found"""
    perm = [3, 0, 5, 1, 4, 2]
    assert are_isomorphic(qs6(), _relabel(qs6(), perm))
    perm = [11, 4, 7, 0, 2, 9, 1, 10, 3, 8, 6, 5]
    assert are_isomorphic(q12_10(), _relabel(q12_10(), perm))


def test_cocycle_rebuild_matches_transcribed_table():
    """The extension pipeline reproduces the 4-AQ table up to labels"""
    assert are_isomorphic(r3_t2(), r3_t2_extension())


def test_non_isomorphic_same_size():
    """QS6, the 4-AQ extension and R6 are pairwise distinct"""
    assert not are_isomorphic(qs6(), r3_t2())
    assert not are_isomorphic(qs6(), make_dihedral(6))
    assert not are_isomorphic(r3_t2(), make_dihedral(6))


def test_conjugation_classes():
    """The class of 4-cycles matches QS6 under any relabelling"""
    Q = make_conjugation_class(4, [4])
    assert are_isomorphic(Q, qs6())
    assert are_isomorphic(_relabel(Q, [2, 0, 1, 5, 3, 4]), qs6())
    assert not are_isomorphic(Q, make_conjugation_class(4, [2, 1, 1]))


def test_signatures_are_invariant():
    """Signature multisets of isomorphic tables coincide"""
    perm = [5, 4, 3, 2, 1, 0]
    assert sorted(element_signatures(qs6())) == sorted(
        element_signatures(_relabel(qs6(), perm))
    )


def test_size_mismatch():
    """Tables of different sizes are rejected"""
    with pytest.raises(SizeMismatch):
        are_isomorphic(make_dihedral(3), make_dihedral(5))


def test_size_budget():
    """Sizes over the limit are refused"""
    with pytest.raises(SearchBudgetExceeded):
        are_isomorphic(make_dihedral(5), make_dihedral(5), max_size=4)


def test_node_budget():
    """The search gives up after max_nodes"""
    with pytest.raises(SearchBudgetExceeded):
        are_isomorphic(make_trivial(6), make_trivial(6), max_nodes=3)
