"""Tests for the builtin quandle families"""

import math

import pytest

from qhk.constructors import (
    compose,
    conjugacy_class,
    cycle_type,
    inverse,
    make_alexander,
    make_conjugation_class,
    make_dihedral,
    make_takasaki,
    make_trivial,
)
from qhk.exceptions import BadPartition, ConstructionError, NonUnitParameter
from qhk.isomorphism import are_isomorphic
from qhk.quandle import aq_profile, is_connected, is_quasigroup, lemma_checks
from tests.corpus import qs6


def test_trivial():
    """a*b = a"""
    Q = make_trivial(3)
    assert Q.to_lists() == [[0, 0, 0], [1, 1, 1], [2, 2, 2]]
    assert Q.name == "T3"


def test_dihedral_formula():
    """R3 is a*b = 2b - a mod 3"""
    Q = make_dihedral(3)
    for a in range(3):
        for b in range(3):
            assert Q.op(a, b) == (2 * b - a) % 3
    assert Q.name == "R3"


def test_dihedral_odd_is_quasigroup():
    """Odd dihedral quandles are Latin"""
    for n in (3, 5, 7):
        assert is_quasigroup(make_dihedral(n))
    assert not is_quasigroup(make_dihedral(6))


def test_takasaki_single_factor_is_dihedral():
    """T(Z_n) is R_n"""
    assert make_takasaki([5]).table == make_dihedral(5).table


def test_takasaki_product():
    """T(Z3 x Z3) is a 9-element quasigroup quandle"""
    Q = make_takasaki([3, 3])
    assert Q.size == 9
    assert is_quasigroup(Q)
    # (1,2) * (0,0) = (2,1): index 1*3+2 = 5 maps to 2*3+1 = 7
    assert Q.op(5, 0) == 7


def test_alexander():
    """a*b = t a + (1-t) b"""
    Q = make_alexander(8, 3)
    for a in range(8):
        for b in range(8):
            assert Q.op(a, b) == (3 * a - 2 * b) % 8


def test_alexander_non_unit():
    """t must be a unit modulo n"""
    with pytest.raises(NonUnitParameter) as exc:
        make_alexander(8, 2)
    assert exc.value.t == 2
    assert exc.value.n == 8


def test_nonpositive_parameters():
    """Sizes must be positive integers"""
    with pytest.raises(ConstructionError):
        make_trivial(0)
    with pytest.raises(ConstructionError):
        make_dihedral(-3)
    with pytest.raises(ConstructionError):
        make_takasaki([])


def test_permutation_helpers():
    """compose, inverse and cycle_type agree with each other"""
    p = (1, 2, 0, 4, 3)
    assert cycle_type(p) == (3, 2)
    assert compose(p, inverse(p)) == tuple(range(5))
    assert compose(inverse(p), p) == tuple(range(5))
    assert cycle_type((0, 1, 2)) == (1, 1, 1)


def test_conjugacy_class_sizes():
    """Class sizes follow n! / centralizer order"""
    assert len(conjugacy_class(4, [4])) == 6
    assert len(conjugacy_class(5, [2, 2, 1])) == 15
    assert len(conjugacy_class(4, [2, 1, 1])) == 6
    assert len(conjugacy_class(5, [3, 1, 1])) == 20


def test_conjugacy_class_bad_partition():
    """The cycle type must partition the degree"""
    with pytest.raises(BadPartition):
        conjugacy_class(5, [2, 2])
    with pytest.raises(BadPartition):
        conjugacy_class(4, [4, 0])


def test_four_cycles_match_qs6():
    """The class of 4-cycles in S4 is the 2-AQ quandle of order 6"""
    Q = make_conjugation_class(4, [4])
    assert Q.size == 6
    assert are_isomorphic(Q, qs6())


def test_conjugation_class_is_deterministic():
    """Elements are ordered by one-line notation"""
    first = make_conjugation_class(5, [2, 2, 1])
    second = make_conjugation_class(5, [2, 2, 1])
    assert first.table == second.table
    assert first.size == 15
    assert first.name == "Conj(S5,[2,2,1])"


@pytest.mark.parametrize("n", [4, 5, 6])
def test_transpositions_are_almost_quasigroup(n):
    """Transpositions of S_n form a (C(n-2,2)+1)-AQ quandle"""
    Q = make_conjugation_class(n, [2] + [1] * (n - 2))
    assert Q.size == math.comb(n, 2)
    assert is_connected(Q)
    profile = aq_profile(Q)
    assert profile is not None
    assert profile.m == math.comb(n - 2, 2) + 1
    assert lemma_checks(Q, profile).passed
