"""
Sparse exact integer matrices

Boundary maps are stored column-wise as {col: {row: value}} with Python
ints, so entries never overflow. Invariant factors come from a sparse
Smith elimination:

1. Unit phase. Entries equal to +-1 are used as pivots first, picking the
   shortest column and then its shortest row to limit fill-in. A unit
   pivot clears its row by column operations; its column is then cleared
   by row operations that touch nothing else, so the pair is dropped.
2. General phase. What remains is reduced with minimal-absolute-value
   pivots, alternating row and column division steps until the pivot
   row and column are clear.
3. The diagonal is brought into a divisibility chain with gcd/lcm
   exchanges.

Ranks over GF(p) use a separate elimination so mod-p homology never
depends on the integral code path.
"""

import heapq
import logging
import math
from collections import defaultdict
from typing import Dict, Iterable, Iterator, List, Optional, Set, Tuple

logger = logging.getLogger(__name__)

Column = Dict[int, int]


class SparseIntMatrix:
    """
    Exact integer matrix with no stored zeros.

    Args:
        rows: Number of rows
        cols: Number of columns
        columns: Optional {col: {row: value}}; zero values are dropped
    """

    __slots__ = ("rows", "cols", "_columns")

    def __init__(
        self,
        rows: int,
        cols: int,
        columns: Optional[Dict[int, Column]] = None,
    ):
        if rows < 0 or cols < 0:
            raise ValueError(f"Bad shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self._columns: Dict[int, Column] = {}
        for j, column in (columns or {}).items():
            if not 0 <= j < cols:
                raise IndexError(f"Column {j} outside 0..{cols - 1}")
            kept = {}
            for i, value in column.items():
                if not 0 <= i < rows:
                    raise IndexError(f"Row {i} outside 0..{rows - 1}")
                if value:
                    kept[i] = int(value)
            if kept:
                self._columns[j] = kept

    # -------------------------------------------------------------------------
    # Construction
    # -------------------------------------------------------------------------

    @classmethod
    def from_entries(
        cls, rows: int, cols: int, entries: Iterable[Tuple[int, int, int]]
    ) -> "SparseIntMatrix":
        """Build from (i, j, value) triples; repeated coordinates add up"""
        columns: Dict[int, Column] = defaultdict(dict)
        for i, j, value in entries:
            column = columns[j]
            column[i] = column.get(i, 0) + value
        return cls(rows, cols, columns)

    @classmethod
    def from_dense(cls, grid: List[List[int]]) -> "SparseIntMatrix":
        rows = len(grid)
        cols = len(grid[0]) if rows else 0
        return cls.from_entries(
            rows,
            cols,
            (
                (i, j, value)
                for i, line in enumerate(grid)
                for j, value in enumerate(line)
                if value
            ),
        )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "SparseIntMatrix":
        return cls(rows, cols)

    # -------------------------------------------------------------------------
    # Access
    # -------------------------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return sum(len(column) for column in self._columns.values())

    def get(self, i: int, j: int) -> int:
        return self._columns.get(j, {}).get(i, 0)

    def column(self, j: int) -> Column:
        return dict(self._columns.get(j, {}))

    def columns(self) -> Iterator[Tuple[int, Column]]:
        for j in sorted(self._columns):
            yield j, dict(self._columns[j])

    def entries(self) -> List[Tuple[int, int, int]]:
        """All stored (i, j, value) triples, row-major"""
        return sorted(
            (i, j, value)
            for j, column in self._columns.items()
            for i, value in column.items()
        )

    def is_zero(self) -> bool:
        return not self._columns

    def to_dense(self) -> List[List[int]]:
        grid = [[0] * self.cols for _ in range(self.rows)]
        for j, column in self._columns.items():
            for i, value in column.items():
                grid[i][j] = value
        return grid

    def transpose(self) -> "SparseIntMatrix":
        return SparseIntMatrix.from_entries(
            self.cols,
            self.rows,
            ((j, i, value) for i, j, value in self.entries()),
        )

    def matmul(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        """self @ other"""
        if self.cols != other.rows:
            raise ValueError(
                f"Cannot multiply {self.rows}x{self.cols} by "
                f"{other.rows}x{other.cols}"
            )
        result: Dict[int, Column] = {}
        for j, column in other._columns.items():
            acc: Column = defaultdict(int)
            for k, b in column.items():
                for i, a in self._columns.get(k, {}).items():
                    acc[i] += a * b
            kept = {i: v for i, v in acc.items() if v}
            if kept:
                result[j] = kept
        return SparseIntMatrix(self.rows, other.cols, result)

    __matmul__ = matmul

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._columns == other._columns

    def __repr__(self) -> str:
        return f"SparseIntMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


# =============================================================================
# Smith normal form
# =============================================================================


class _Eliminator:
    """Mutable working copy: columns plus a row -> columns index"""

    def __init__(self, M: SparseIntMatrix):
        self.cols: Dict[int, Column] = {j: c for j, c in M.columns()}
        self.rows: Dict[int, Set[int]] = defaultdict(set)
        for j, column in self.cols.items():
            for i in column:
                self.rows[i].add(j)
        self.pivots: List[int] = []

    def axpy_column(self, target: int, factor: int, source: int) -> None:
        """col[target] -= factor * col[source]"""
        if not factor:
            return
        dest = self.cols[target]
        for i, value in self.cols[source].items():
            new = dest.get(i, 0) - factor * value
            if new:
                if i not in dest:
                    self.rows[i].add(target)
                dest[i] = new
            elif i in dest:
                del dest[i]
                self.rows[i].discard(target)
        if not dest:
            del self.cols[target]

    def axpy_row(self, target: int, factor: int, source: int) -> None:
        """row[target] -= factor * row[source]"""
        if not factor:
            return
        for j in list(self.rows[source]):
            column = self.cols[j]
            new = column.get(target, 0) - factor * column[source]
            if new:
                if target not in column:
                    self.rows[target].add(j)
                column[target] = new
            elif target in column:
                del column[target]
                self.rows[target].discard(j)

    def drop(self, i: int, j: int) -> None:
        """Remove pivot row i and column j (the pivot entry is recorded)"""
        for r in self.cols.pop(j, {}):
            self.rows[r].discard(j)
        for k in self.rows.pop(i, set()):
            column = self.cols[k]
            del column[i]
            if not column:
                del self.cols[k]

    # -------------------------------------------------------------------------

    def unit_phase(self) -> None:
        heap = [(len(c), j) for j, c in self.cols.items()]
        heapq.heapify(heap)
        while heap:
            length, j = heapq.heappop(heap)
            column = self.cols.get(j)
            if column is None or len(column) != length:
                continue
            best = None
            for i, value in column.items():
                if value in (1, -1):
                    weight = len(self.rows[i])
                    if best is None or weight < best[0]:
                        best = (weight, i)
            if best is None:
                continue
            i = best[1]
            pivot = column[i]
            touched = [k for k in self.rows[i] if k != j]
            for k in touched:
                # pivot is +-1, so it is its own inverse
                self.axpy_column(k, self.cols[k][i] * pivot, j)
            self.drop(i, j)
            self.pivots.append(1)
            for k in touched:
                if k in self.cols:
                    heapq.heappush(heap, (len(self.cols[k]), k))

    def _smallest_entry(self) -> Tuple[int, int]:
        best: Optional[Tuple[int, int, int]] = None
        for j, column in self.cols.items():
            for i, value in column.items():
                size = abs(value)
                if best is None or size < best[0]:
                    best = (size, i, j)
                    if size == 1:
                        return i, j
        assert best is not None
        return best[1], best[2]

    def general_phase(self) -> None:
        while self.cols:
            i, j = self._smallest_entry()
            while True:
                p = self.cols[j][i]
                for k in [k for k in self.rows[i] if k != j]:
                    self.axpy_column(k, self.cols[k][i] // p, j)
                for r in [r for r in self.cols[j] if r != i]:
                    self.axpy_row(r, self.cols[j][r] // p, i)
                # remainders are strictly smaller than |p|
                candidates = [
                    (abs(self.cols[k][i]), i, k)
                    for k in self.rows[i]
                    if k != j
                ] + [
                    (abs(value), r, j)
                    for r, value in self.cols[j].items()
                    if r != i
                ]
                if not candidates:
                    self.pivots.append(abs(p))
                    self.drop(i, j)
                    break
                _, i, j = min(candidates)


def invariant_chain(values: Iterable[int]) -> List[int]:
    """
    Rewrite nonzero diagonal entries as invariant factors d1 | d2 | ...

    The abelian group Z/d1 + ... + Z/dk is unchanged.
    """
    ones = 0
    rest: List[int] = []
    for value in values:
        value = abs(value)
        if value == 0:
            raise ValueError("Diagonal entries must be nonzero")
        if value == 1:
            ones += 1
        else:
            rest.append(value)
    rest.sort()
    for a in range(len(rest)):
        for b in range(a + 1, len(rest)):
            g = math.gcd(rest[a], rest[b])
            if g != rest[a]:
                rest[b] = rest[a] * rest[b] // g
                rest[a] = g
    chain = [1] * ones + [d for d in rest if d == 1]
    chain += sorted(d for d in rest if d != 1)
    return chain


def smith_invariants(M: SparseIntMatrix) -> List[int]:
    """
    Nonzero invariant factors of M, ascending (1s included).

    len(result) is the rank of M.
    """
    work = _Eliminator(M)
    work.unit_phase()
    units = len(work.pivots)
    remaining = len(work.cols)
    work.general_phase()
    logger.debug(
        "Smith elimination on %r: %d unit pivots, %d columns left for the "
        "general phase",
        M,
        units,
        remaining,
    )
    return invariant_chain(work.pivots)


def integer_rank(M: SparseIntMatrix) -> int:
    return len(smith_invariants(M))


# =============================================================================
# Rank over GF(p)
# =============================================================================


def rank_mod_p(M: SparseIntMatrix, p: int) -> int:
    """
    Rank of M over GF(p), by column reduction against pivot vectors keyed
    on their lowest row index.
    """
    if p < 2 or any(p % q == 0 for q in range(2, math.isqrt(p) + 1)):
        raise ValueError(f"{p} is not a prime")
    basis: Dict[int, Column] = {}
    for _, column in M.columns():
        vector = {i: v % p for i, v in column.items() if v % p}
        while vector:
            lead = min(vector)
            known = basis.get(lead)
            if known is None:
                scale = pow(vector[lead], -1, p)
                basis[lead] = {i: v * scale % p for i, v in vector.items()}
                break
            factor = vector[lead]
            for i, v in known.items():
                new = (vector.get(i, 0) - factor * v) % p
                if new:
                    vector[i] = new
                else:
                    vector.pop(i, None)
    return len(basis)
