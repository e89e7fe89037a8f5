"""
Finite racks and quandles

Operation tables, axiom validation and the structural classification used
by the rest of the package: orbits, connectivity, the quasigroup property,
stabilizer sets and the m-almost quasigroup (m-AQ) profile.

Elements are 0-based here; files and reports use 1-based labels.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .exceptions import (
    DistributivityFail,
    IdempotencyFail,
    NotAPermutationColumn,
    NotAQ,
    OutOfRangeEntry,
    TableValidationError,
)

logger = logging.getLogger(__name__)


class TableKind(str, Enum):
    """Which axioms a table was validated against"""

    RACK = "rack"
    QUANDLE = "quandle"

    @classmethod
    def parse(cls, value) -> "TableKind":
        if isinstance(value, cls):
            return value
        return cls(str(value).strip().lower())


@dataclass(frozen=True)
class QuandleTable:
    """A validated finite rack or quandle, table[a][b] = a*b.

    Instances are built by validate_table (directly or through the
    constructors) and never mutated.
    """

    size: int
    table: Tuple[Tuple[int, ...], ...]
    kind: TableKind = TableKind.QUANDLE
    name: str = ""

    def op(self, a: int, b: int) -> int:
        return self.table[a][b]

    def row(self, a: int) -> Tuple[int, ...]:
        """Left multiplication x -> a*x as a tuple"""
        return self.table[a]

    def column(self, b: int) -> Tuple[int, ...]:
        """Right translation x -> x*b as a tuple (a permutation)"""
        return tuple(self.table[x][b] for x in range(self.size))

    @property
    def is_quandle(self) -> bool:
        return self.kind is TableKind.QUANDLE

    @property
    def elements(self) -> range:
        return range(self.size)

    def to_lists(self, one_based: bool = False) -> List[List[int]]:
        shift = 1 if one_based else 0
        return [[v + shift for v in row] for row in self.table]

    def renamed(self, name: str) -> "QuandleTable":
        return QuandleTable(self.size, self.table, self.kind, name)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"QuandleTable({self.kind.value}{label}, size={self.size})"


def validate_table(
    raw: Sequence[Sequence[int]],
    kind="quandle",
    name: str = "",
) -> QuandleTable:
    """
    Validate an n x n grid (0-based entries) against the rack axioms.

    Checks run in a fixed order (entry range, invertibility, idempotency
    for quandles, right self-distributivity) and the first violation is
    raised with its witness.

    Args:
        raw: Grid with raw[a][b] = a*b
        kind: "rack" or "quandle"
        name: Optional label carried into reports

    Returns:
        The validated QuandleTable

    Raises:
        TableValidationError: The first violated axiom, with a witness
    """
    kind = TableKind.parse(kind)
    n = len(raw)
    if n < 1:
        raise TableValidationError("A table needs at least one element")

    rows: List[Tuple[int, ...]] = []
    for a, row in enumerate(raw):
        if len(row) != n:
            raise TableValidationError(
                f"Row {a + 1} has {len(row)} entries, expected {n}"
            )
        for b, value in enumerate(row):
            if (
                isinstance(value, bool)
                or not isinstance(value, int)
                or not 0 <= value < n
            ):
                raise OutOfRangeEntry(a, b, value, n)
        rows.append(tuple(row))

    for b in range(n):
        seen = set()
        for a in range(n):
            value = rows[a][b]
            if value in seen:
                raise NotAPermutationColumn(b, value)
            seen.add(value)

    if kind is TableKind.QUANDLE:
        for a in range(n):
            if rows[a][a] != a:
                raise IdempotencyFail(a)

    for a in range(n):
        row_a = rows[a]
        for b in range(n):
            ab = row_a[b]
            row_ab = rows[ab]
            row_b = rows[b]
            for c in range(n):
                if row_ab[c] != rows[row_a[c]][row_b[c]]:
                    raise DistributivityFail(a, b, c)

    logger.debug("Validated %s table of size %d", kind.value, n)
    return QuandleTable(n, tuple(rows), kind, name)


def as_quandle(Q: QuandleTable) -> QuandleTable:
    """
    Re-validate a rack as a quandle.

    A quasigroup rack always passes: a*b = a*(b*b) and left cancellation
    force b*b = b.

    Raises:
        IdempotencyFail: If some a*a != a
    """
    if Q.is_quandle:
        return Q
    for a in Q.elements:
        if Q.table[a][a] != a:
            raise IdempotencyFail(a)
    return QuandleTable(Q.size, Q.table, TableKind.QUANDLE, Q.name)


def op_bar(Q: QuandleTable, a: int, b: int) -> int:
    """
    The inverse operation: the unique c with c*b = a.

    Follows the orbit a, a*b, (a*b)*b, ... of the right translation by b
    until it closes; the element just before a is the answer.
    """
    column = Q.table
    c = a
    nxt = column[c][b]
    while nxt != a:
        c = nxt
        nxt = column[c][b]
    return c


# =============================================================================
# Orbits and connectivity
# =============================================================================


@dataclass(frozen=True)
class OrbitPartition:
    """Orbits of X under the right multiplication action"""

    blocks: Tuple[Tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.blocks)

    def block_of(self, x: int) -> Tuple[int, ...]:
        for block in self.blocks:
            if x in block:
                return block
        raise KeyError(x)

    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(block) for block in self.blocks)


def orbits(Q: QuandleTable) -> OrbitPartition:
    """
    Partition X into orbits of the group generated by all x -> x*b.

    Forward closure suffices on a finite set: inverses are powers of the
    right translations.
    """
    parent = list(Q.elements)

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in Q.elements:
        for b in Q.elements:
            ra, rb = find(a), find(Q.table[a][b])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

    groups: Dict[int, List[int]] = {}
    for x in Q.elements:
        groups.setdefault(find(x), []).append(x)
    blocks = tuple(
        sorted((tuple(sorted(block)) for block in groups.values()))
    )
    return OrbitPartition(blocks)


def is_connected(Q: QuandleTable) -> bool:
    return orbits(Q).count == 1


def is_quasigroup(Q: QuandleTable) -> bool:
    """Every left multiplication x -> a*x is a permutation"""
    return all(len(set(row)) == Q.size for row in Q.table)


# =============================================================================
# Stabilizers and the m-AQ profile
# =============================================================================


def stabilizer(Q: QuandleTable, a: int) -> Tuple[int, ...]:
    """
    S_a = {x : a*x = a}, listed with a first and the rest ascending.

    The order fixes a^(1) = a; sums over S_a never depend on it.
    """
    row = Q.table[a]
    rest = [x for x in Q.elements if x != a and row[x] == a]
    if row[a] == a:
        return (a, *rest)
    return tuple(rest)


def is_trivial_subset(Q: QuandleTable, subset: Sequence[int]) -> bool:
    """s*t = s for all s, t in the subset"""
    return all(Q.table[s][t] == s for s in subset for t in subset)


@dataclass(frozen=True)
class AQProfile:
    """m-almost quasigroup classification of a quandle"""

    size: int
    m: int
    stabilizers: Tuple[Tuple[int, ...], ...]
    trivial_stabilizers: bool
    annihilation_bound: int
    _sets: Tuple[FrozenSet[int], ...] = field(
        default=(), repr=False, compare=False
    )

    @property
    def is_trivial_quandle(self) -> bool:
        """m = |X|: annihilation_bound is the 0 marker"""
        return self.m == self.size

    def stabilizer_set(self, a: int) -> FrozenSet[int]:
        if self._sets:
            return self._sets[a]
        return frozenset(self.stabilizers[a])

    def to_dict(self) -> Dict:
        return {
            "m": self.m,
            "trivial_stabilizers": self.trivial_stabilizers,
            "annihilation_bound": self.annihilation_bound,
            "stabilizers": [
                [x + 1 for x in stab] for stab in self.stabilizers
            ],
        }


def annihilation_bound(size: int, m: int) -> int:
    """N = m * lcm(|X|, |X| - m), or 0 for the trivial quandle (m = |X|)"""
    if m >= size:
        return 0
    return m * math.lcm(size, size - m)


def aq_profile(Q: QuandleTable) -> Optional[AQProfile]:
    """
    Classify Q as an m-almost quasigroup quandle.

    Returns:
        The profile when every stabilizer has the same size m and every
        equation a*x = b with b outside S_a has exactly one solution;
        None otherwise (including racks that are not quandles).
    """
    if not Q.is_quandle:
        logger.debug("aq_profile: %r is not a quandle", Q)
        return None

    stabilizers = tuple(stabilizer(Q, a) for a in Q.elements)
    m = len(stabilizers[0])
    if any(len(stab) != m for stab in stabilizers):
        logger.debug("aq_profile: stabilizer sizes differ in %r", Q)
        return None

    sets = tuple(frozenset(stab) for stab in stabilizers)
    for a in Q.elements:
        counts = [0] * Q.size
        for value in Q.table[a]:
            counts[value] += 1
        for b in Q.elements:
            if b not in sets[a] and counts[b] != 1:
                logger.debug(
                    "aq_profile: %d*x = %d has %d solutions",
                    a + 1,
                    b + 1,
                    counts[b],
                )
                return None

    trivial = all(is_trivial_subset(Q, stab) for stab in stabilizers)
    return AQProfile(
        size=Q.size,
        m=m,
        stabilizers=stabilizers,
        trivial_stabilizers=trivial,
        annihilation_bound=annihilation_bound(Q.size, m),
        _sets=sets,
    )


@dataclass(frozen=True)
class StabilizerCheck:
    closed: bool
    trivial: bool


def _require_profile(
    Q: QuandleTable, profile: Optional[AQProfile]
) -> AQProfile:
    if profile is None:
        profile = aq_profile(Q)
    if profile is None:
        raise NotAQ(f"{Q!r} is not an m-almost quasigroup quandle")
    return profile


def stabilizer_subquandle_check(
    Q: QuandleTable, a: int, profile: Optional[AQProfile] = None
) -> StabilizerCheck:
    """
    Check that S_a is a subquandle and whether it is trivial.

    Raises:
        NotAQ: If Q has no m-AQ profile
    """
    profile = _require_profile(Q, profile)
    stab = profile.stabilizers[a]
    members = profile.stabilizer_set(a)
    closed = all(
        Q.table[s][t] in members and op_bar(Q, s, t) in members
        for s in stab
        for t in stab
    )
    return StabilizerCheck(closed=closed, trivial=is_trivial_subset(Q, stab))


@dataclass(frozen=True)
class LemmaReport:
    """Structural facts every m-AQ quandle must satisfy"""

    subquandles: bool
    translation: bool
    translation_witness: Optional[Tuple[int, int]]
    small_m_trivial: bool
    trivial_implies_connected: bool

    @property
    def passed(self) -> bool:
        return (
            self.subquandles
            and self.translation
            and self.small_m_trivial
            and self.trivial_implies_connected
        )

    def to_dict(self) -> Dict:
        witness = None
        if self.translation_witness is not None:
            witness = [x + 1 for x in self.translation_witness]
        return {
            "subquandles": self.subquandles,
            "translation": self.translation,
            "translation_witness": witness,
            "small_m_trivial": self.small_m_trivial,
            "trivial_implies_connected": self.trivial_implies_connected,
            "passed": self.passed,
        }


def stabilizer_translation_check(
    Q: QuandleTable, profile: AQProfile
) -> Optional[Tuple[int, int]]:
    """
    Check S_a * b = S_(a*b) for all a, b.

    Returns:
        None when the equality holds everywhere, else the first (a, b)
    """
    for a in Q.elements:
        stab = profile.stabilizers[a]
        for b in Q.elements:
            moved = frozenset(Q.table[s][b] for s in stab)
            if moved != profile.stabilizer_set(Q.table[a][b]):
                return (a, b)
    return None


def lemma_checks(
    Q: QuandleTable, profile: Optional[AQProfile] = None
) -> LemmaReport:
    """
    Run the stabilizer lemmas on an m-AQ quandle.

    Stabilizers are closed subquandles; S_a*b = S_(a*b); m <= 3 forces
    trivial stabilizers; trivial stabilizers on a nontrivial quandle
    force connectivity.
    """
    profile = _require_profile(Q, profile)
    subquandles = all(
        stabilizer_subquandle_check(Q, a, profile).closed
        for a in Q.elements
    )
    witness = stabilizer_translation_check(Q, profile)
    small_m = profile.m > 3 or profile.trivial_stabilizers
    connected = (
        profile.is_trivial_quandle
        or not profile.trivial_stabilizers
        or is_connected(Q)
    )
    return LemmaReport(
        subquandles=subquandles,
        translation=witness is None,
        translation_witness=witness,
        small_m_trivial=small_m,
        trivial_implies_connected=connected,
    )
