"""Tests for table validation and quandle classification"""

import pytest

from qhk.constructors import make_dihedral, make_trivial
from qhk.exceptions import (
    DistributivityFail,
    IdempotencyFail,
    NotAPermutationColumn,
    NotAQ,
    OutOfRangeEntry,
    TableValidationError,
)
from qhk.quandle import (
    TableKind,
    annihilation_bound,
    aq_profile,
    as_quandle,
    is_connected,
    is_quasigroup,
    lemma_checks,
    op_bar,
    orbits,
    stabilizer,
    stabilizer_subquandle_check,
    stabilizer_translation_check,
    validate_table,
)
from tests.corpus import (
    QS6_ROWS,
    q12_10,
    qs6,
    r3_t2,
    small_corpus,
    zero_based,
)


def test_validate_qs6():
    """The 2-AQ table of order 6 is a quandle"""
    Q = qs6()
    assert Q.size == 6
    assert Q.is_quandle
    assert Q.op(0, 2) == 5


def test_validate_single_element():
    """[[0]] is the trivial quandle of order 1"""
    Q = validate_table([[0]])
    assert Q.size == 1
    assert aq_profile(Q).m == 1


def test_validate_corrupted_entry():
    """Changing one entry of a valid table is caught with a witness"""
    grid = zero_based(QS6_ROWS)
    grid[0][2] = 4
    with pytest.raises((NotAPermutationColumn, DistributivityFail)) as exc:
        validate_table(grid)
    assert isinstance(exc.value, TableValidationError)
    if isinstance(exc.value, NotAPermutationColumn):
        assert exc.value.b == 2


def test_validate_repeated_column_names_column():
    """A column with a repeated value reports that column"""
    with pytest.raises(NotAPermutationColumn) as exc:
        validate_table([[0, 0], [0, 1]])
    assert exc.value.b == 0
    assert "column 1" in str(exc.value).lower()


def test_validate_out_of_range():
    """Entries must lie in 0..n-1"""
    with pytest.raises(OutOfRangeEntry):
        validate_table([[0, 2], [1, 1]])


def test_validate_ragged_rows():
    """Every row needs n entries"""
    with pytest.raises(TableValidationError):
        validate_table([[0, 1], [1]])


def test_validate_idempotency():
    """A rack that is not idempotent fails as a quandle, passes as a rack"""
    swap = [[1, 1], [0, 0]]
    with pytest.raises(IdempotencyFail) as exc:
        validate_table(swap, "quandle")
    assert exc.value.a == 0
    rack = validate_table(swap, "rack")
    assert rack.kind is TableKind.RACK
    assert not rack.is_quandle


def test_validate_distributivity():
    """Idempotent with bijective columns, but not self-distributive"""
    grid = [[0, 2, 0], [2, 1, 1], [1, 0, 2]]
    with pytest.raises(DistributivityFail) as exc:
        validate_table(grid)
    a, b, c = exc.value.a, exc.value.b, exc.value.c
    assert grid[grid[a][b]][c] != grid[grid[a][c]][grid[b][c]]


def test_as_quandle_promotes_idempotent_rack():
    """A rack-validated quandle can be promoted"""
    rack = validate_table(zero_based(QS6_ROWS), "rack")
    assert as_quandle(rack).is_quandle
    with pytest.raises(IdempotencyFail):
        as_quandle(validate_table([[1, 1], [0, 0]], "rack"))


def test_op_bar_qs6():
    """The unique c with c*3 = 1 is 5 (1-based)"""
    Q = qs6()
    assert op_bar(Q, 0, 2) == 4


def test_op_bar_inverts_right_translation():
    """op_bar(a, b)*b = a and op_bar(a*b, b) = a everywhere"""
    for Q in small_corpus() + [q12_10()]:
        for a in Q.elements:
            assert op_bar(Q, a, a) == a
            for b in Q.elements:
                assert Q.op(op_bar(Q, a, b), b) == a
                assert op_bar(Q, Q.op(a, b), b) == a


def test_op_bar_dihedral_is_involutive():
    """Right translations of R5 are involutions"""
    Q = make_dihedral(5)
    for a in Q.elements:
        for b in Q.elements:
            assert op_bar(Q, a, b) == Q.op(a, b)


def test_orbits():
    """Orbit counts of the corpus"""
    assert orbits(qs6()).count == 1
    assert orbits(make_trivial(4)).count == 4
    partition = orbits(r3_t2())
    assert partition.blocks == ((0, 1, 2), (3, 4, 5))
    assert partition.block_of(4) == (3, 4, 5)
    assert partition.sizes() == (3, 3)


def test_orbits_are_closed():
    """Blocks are closed under x -> x*b"""
    for Q in small_corpus():
        for block in orbits(Q).blocks:
            for x in block:
                for b in Q.elements:
                    assert Q.op(x, b) in block


def test_connected_and_quasigroup():
    """R5 is a connected quasigroup, QS6 only connected, T2 neither"""
    R5 = make_dihedral(5)
    assert is_connected(R5) and is_quasigroup(R5)
    assert is_connected(qs6()) and not is_quasigroup(qs6())
    T2 = make_trivial(2)
    assert not is_connected(T2) and not is_quasigroup(T2)


def test_quasigroup_implies_connected():
    """Every quasigroup in the corpus is connected"""
    for Q in small_corpus():
        if is_quasigroup(Q):
            assert is_connected(Q)


def test_stabilizer_lists_element_first():
    """S_a starts with a"""
    Q = r3_t2()
    assert stabilizer(Q, 0) == (0, 3, 4, 5)
    assert stabilizer(Q, 4) == (4, 0, 1, 2)


def test_aq_profile_qs6():
    """QS6 is 2-AQ with trivial stabilizers and N = 24"""
    profile = aq_profile(qs6())
    assert profile.m == 2
    assert profile.trivial_stabilizers
    assert profile.annihilation_bound == 24
    assert profile.stabilizers[0] == (0, 1)


def test_aq_profile_trivial_quandle():
    """T_k is k-AQ; the bound is the 0 marker"""
    profile = aq_profile(make_trivial(3))
    assert profile.m == 3
    assert profile.is_trivial_quandle
    assert profile.annihilation_bound == 0


def test_aq_profile_q12_10():
    """Table of order 12 is 3-AQ with N = 108"""
    profile = aq_profile(q12_10())
    assert profile.m == 3
    assert profile.trivial_stabilizers
    assert profile.annihilation_bound == 108


def test_aq_profile_r3_t2():
    """The extension is 4-AQ with a stabilizer that is not trivial"""
    Q = r3_t2()
    profile = aq_profile(Q)
    assert profile.m == 4
    assert not profile.trivial_stabilizers
    assert set(profile.stabilizers[0]) == {0, 3, 4, 5}
    assert Q.op(3, 4) == 5


def test_aq_profile_negative():
    """R4 leaves some a*x = b unsolvable; racks have no profile"""
    assert aq_profile(make_dihedral(4)) is None
    assert aq_profile(validate_table([[1, 1], [0, 0]], "rack")) is None


def test_annihilation_bound():
    """N = m lcm(n, n-m)"""
    assert annihilation_bound(6, 2) == 24
    assert annihilation_bound(12, 3) == 108
    assert annihilation_bound(5, 1) == 20
    assert annihilation_bound(15, 3) == 180
    assert annihilation_bound(4, 4) == 0


def test_stabilizer_subquandle_check():
    """Stabilizers are closed; QS6 and Q(12,10) ones are trivial"""
    check = stabilizer_subquandle_check(qs6(), 0)
    assert check.closed and check.trivial
    check = stabilizer_subquandle_check(q12_10(), 0)
    assert check.closed and check.trivial
    check = stabilizer_subquandle_check(make_dihedral(5), 2)
    assert check.closed and check.trivial
    check = stabilizer_subquandle_check(r3_t2(), 0)
    assert check.closed and not check.trivial


def test_stabilizer_subquandle_check_needs_profile():
    """Quandles without an m-AQ profile are refused"""
    with pytest.raises(NotAQ):
        stabilizer_subquandle_check(make_dihedral(4), 0)


def test_lemma_checks_on_corpus():
    """Every m-AQ member satisfies the stabilizer lemmas"""
    for Q in small_corpus() + [q12_10()]:
        profile = aq_profile(Q)
        if profile is None:
            continue
        report = lemma_checks(Q, profile)
        assert report.passed, Q
        assert stabilizer_translation_check(Q, profile) is None
        if profile.m <= 3:
            assert profile.trivial_stabilizers
        if profile.trivial_stabilizers and not profile.is_trivial_quandle:
            assert is_connected(Q)


def test_lemma_report_dict():
    """Reports use 1-based labels"""
    data = lemma_checks(qs6()).to_dict()
    assert data["passed"] is True
    assert data["translation_witness"] is None


def test_profile_dict_is_one_based():
    """Stabilizers are reported with 1-based labels"""
    data = aq_profile(qs6()).to_dict()
    assert data["stabilizers"][0] == [1, 2]
    assert data["annihilation_bound"] == 24
