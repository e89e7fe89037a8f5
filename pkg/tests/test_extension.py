"""Tests for dynamical cocycle extensions"""

import pytest

from qhk.constructors import make_dihedral, make_trivial
from qhk.exceptions import (
    BijectionCondFail,
    CocycleCondFail,
    CocycleError,
    IdentityCondFail,
    NotQuasigroup,
)
from qhk.extension import (
    constant_cocycle,
    extend,
    make_cocycle_spec,
    quasigroup_by_trivial_cocycle,
    validate_cocycle,
)
from qhk.isomorphism import are_isomorphic
from qhk.quandle import aq_profile, is_connected, orbits
from tests.corpus import qs6, r3_t2


def _as_lists(spec):
    return [
        [[list(line) for line in grid] for grid in row]
        for row in spec.alpha
    ]


def test_quasigroup_by_trivial_is_valid():
    """The R3 over T2 cocycle satisfies all three conditions"""
    spec = quasigroup_by_trivial_cocycle(make_dihedral(3), 2)
    assert validate_cocycle(spec) is spec
    assert spec.base.size == 2
    assert spec.fiber_size == 3
    assert spec.value(0, 0, 0, 1) == 2
    assert spec.value(0, 1, 2, 1) == 2


def test_extension_matches_table():
    """Extending R3 over T2 gives the 4-AQ quandle with two orbits"""
    Q = extend(quasigroup_by_trivial_cocycle(make_dihedral(3), 2))
    assert Q.size == 6
    assert orbits(Q).count == 2
    assert are_isomorphic(Q, r3_t2())
    assert aq_profile(Q).m == 4


def test_pair_linearization():
    """(s, a) has index s * |X| + a"""
    spec = quasigroup_by_trivial_cocycle(make_dihedral(3), 2)
    assert spec.pair_index(2, 1) == 5
    assert spec.pair(5) == (2, 1)
    assert spec.size == 6
    Q = extend(spec)
    # (0,0) * (1,0) = (0*1, 0) = (2, 0) in R3 over T2
    assert Q.op(spec.pair_index(0, 0), spec.pair_index(1, 0)) == 4


def test_single_fiber_point():
    """Over T1 the extension is the fiber itself"""
    R3 = make_dihedral(3)
    Q = extend(quasigroup_by_trivial_cocycle(R3, 1))
    assert Q.table == R3.table


def test_constant_cocycle_is_product():
    """A trivial fiber action gives copies of the base"""
    spec = constant_cocycle(qs6(), 1)
    assert extend(spec).table == qs6().table
    Q = extend(constant_cocycle(make_dihedral(3), 2))
    assert Q.size == 6
    assert orbits(Q).count == 2


@pytest.mark.parametrize("fiber, n, m", [(5, 3, 11), (7, 2, 8), (3, 3, 7)])
def test_extension_profile(fiber, n, m):
    """R_k over T_n is ((n-1)k + 1)-AQ with n orbits"""
    Q = extend(quasigroup_by_trivial_cocycle(make_dihedral(fiber), n))
    assert Q.size == fiber * n
    profile = aq_profile(Q)
    assert profile is not None
    assert profile.m == m
    assert orbits(Q).count == n
    assert not is_connected(Q)


def test_needs_quasigroup_fiber():
    """QS6 is not Latin"""
    with pytest.raises(NotQuasigroup):
        quasigroup_by_trivial_cocycle(qs6(), 2)


def test_perturbed_cocycle_fails():
    """Swapping two values in one grid breaks the cocycle condition"""
    spec = quasigroup_by_trivial_cocycle(make_dihedral(3), 2)
    alpha = _as_lists(spec)
    alpha[0][1][0][0], alpha[0][1][1][0] = 1, 0
    broken = make_cocycle_spec(spec.base, 3, alpha)
    with pytest.raises(CocycleCondFail) as exc:
        validate_cocycle(broken)
    assert "(a,b,c)" in str(exc.value)
    with pytest.raises(CocycleError):
        extend(broken)


def test_identity_condition():
    """alpha_(a,a)(s,s) must be s"""
    spec = constant_cocycle(make_trivial(1), 2)
    alpha = _as_lists(spec)
    alpha[0][0] = [[1, 0], [0, 1]]
    with pytest.raises(IdentityCondFail) as exc:
        validate_cocycle(make_cocycle_spec(spec.base, 2, alpha))
    assert exc.value.a == 0
    assert exc.value.s == 0


def test_bijection_condition():
    """Columns of every grid must be permutations"""
    spec = constant_cocycle(make_trivial(2), 2)
    alpha = _as_lists(spec)
    alpha[0][1] = [[0, 0], [0, 0]]
    with pytest.raises(BijectionCondFail) as exc:
        validate_cocycle(make_cocycle_spec(spec.base, 2, alpha))
    assert (exc.value.a, exc.value.b, exc.value.t) == (0, 1, 0)


def test_make_cocycle_spec_checks_shape():
    """Grids must be |S| x |S| with values in S"""
    base = make_trivial(2)
    with pytest.raises(CocycleError):
        make_cocycle_spec(base, 2, [[[[0, 1]]]])
    grid = [[0, 5], [1, 1]]
    with pytest.raises(CocycleError):
        make_cocycle_spec(base, 2, [[grid, grid], [grid, grid]])
