"""
Rack, degenerate and quandle chain groups

C_n^R is free on all n-tuples of elements, C_n^D on the degenerate ones
(x_i = x_{i+1} for some i) and C_n^Q on the rest. The rack boundary is

    d_n(x) = sum_{i=1..n} (-1)^i (d_i^0(x) - d_i^*(x))

where d_i^0 deletes x_i and d_i^* also acts on x_1..x_{i-1} by *x_i. The
i = 1 term always cancels and is kept so the sum matches the usual
presentation term by term.
"""

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from .constants import Defaults, Theory
from .exceptions import ChainComplexError, DegreeTooLarge, NotAQuandle
from .quandle import QuandleTable
from .sparse import SparseIntMatrix

logger = logging.getLogger(__name__)

Chain = Tuple[int, ...]
Terms = Dict[Chain, int]


def is_degenerate(x: Sequence[int]) -> bool:
    return any(x[i] == x[i + 1] for i in range(len(x) - 1))


def face_delete(x: Chain, i: int) -> Chain:
    """d_i^0: drop position i (1-based)"""
    return x[: i - 1] + x[i:]


def face_act(Q: QuandleTable, x: Chain, i: int) -> Chain:
    """d_i^*: (x_1*x_i, ..., x_{i-1}*x_i, x_{i+1}, ..., x_n)"""
    xi = x[i - 1]
    table = Q.table
    return tuple(table[v][xi] for v in x[: i - 1]) + x[i:]


def add_term(terms: Terms, x: Chain, coefficient: int) -> None:
    """terms[x] += coefficient, dropping zeros"""
    value = terms.get(x, 0) + coefficient
    if value:
        terms[x] = value
    else:
        terms.pop(x, None)


def rack_boundary_terms(Q: QuandleTable, x: Chain) -> Terms:
    """The rack boundary of one tuple, as {tuple: coefficient}"""
    terms: Terms = {}
    for i in range(1, len(x) + 1):
        sign = -1 if i % 2 else 1
        add_term(terms, face_delete(x, i), sign)
        add_term(terms, face_act(Q, x, i), -sign)
    return terms


def boundary_terms(Q: QuandleTable, x: Chain, theory: Theory) -> Terms:
    """
    Boundary of a basis tuple in the given theory.

    Raises:
        ChainComplexError: If a degenerate tuple has a non-degenerate
            boundary term (the table is not a quandle)
    """
    terms = rack_boundary_terms(Q, x)
    if theory is Theory.RACK:
        return terms
    if theory is Theory.DEGENERATE:
        for y in terms:
            if not is_degenerate(y):
                raise ChainComplexError(
                    f"Boundary of degenerate tuple {_show(x)} has the "
                    f"non-degenerate term {_show(y)}"
                )
        return terms
    return {y: c for y, c in terms.items() if not is_degenerate(y)}


def _show(x: Chain) -> str:
    return "(" + ",".join(str(v + 1) for v in x) + ")"


# =============================================================================
# Bases
# =============================================================================


@dataclass(frozen=True)
class ChainBasis:
    """Lexicographically ordered basis of C_n in one theory"""

    theory: Theory
    degree: int
    tuples: Tuple[Chain, ...]
    index: Dict[Chain, int] = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.tuples)

    def __contains__(self, x) -> bool:
        return tuple(x) in self.index


def basis_size_bound(size: int, degree: int) -> int:
    """Tuples enumerated to build a basis of this degree"""
    return size**degree


def basis(
    Q: QuandleTable,
    n: int,
    theory,
    max_basis: int = Defaults.MAX_BASIS,
) -> ChainBasis:
    """
    Enumerate the basis of C_n in lexicographic order.

    Raises:
        ValueError: If n < 0
        NotAQuandle: For D and Q on a rack
        DegreeTooLarge: If |X|^n exceeds max_basis
    """
    theory = Theory.parse(theory)
    if n < 0:
        raise ValueError(f"Degree must be non-negative, got {n}")
    if theory.needs_quandle and not Q.is_quandle:
        raise NotAQuandle(f"The {theory.name.lower()} complex")
    required = basis_size_bound(Q.size, n)
    if required > max_basis:
        raise DegreeTooLarge(n, required, max_basis)

    every = itertools.product(range(Q.size), repeat=n)
    if theory is Theory.RACK:
        tuples = tuple(every)
    elif theory is Theory.DEGENERATE:
        tuples = tuple(x for x in every if is_degenerate(x))
    else:
        tuples = tuple(x for x in every if not is_degenerate(x))
    logger.debug(
        "Basis %s_%d of %r: %d tuples", theory.value, n, Q, len(tuples)
    )
    return ChainBasis(
        theory, n, tuples, {x: k for k, x in enumerate(tuples)}
    )


# =============================================================================
# Boundary matrices
# =============================================================================


def _boundary_columns(
    Q: QuandleTable,
    theory: Theory,
    columns: Sequence[Chain],
) -> List[Terms]:
    return [boundary_terms(Q, x, theory) for x in columns]


def _chunks(items: Sequence, count: int) -> List[Sequence]:
    step = max(1, -(-len(items) // count))
    return [items[k : k + step] for k in range(0, len(items), step)]


def boundary_from_bases(
    Q: QuandleTable,
    source: ChainBasis,
    target: ChainBasis,
    jobs: int = 1,
) -> SparseIntMatrix:
    """
    Matrix of d_n : C_n -> C_{n-1}, |target| rows by |source| columns.

    Columns are independent, so jobs > 1 splits them across processes.
    """
    theory = source.theory
    if jobs > 1 and len(source) > 1000:
        chunks = _chunks(source.tuples, jobs * 4)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(
                _boundary_columns,
                itertools.repeat(Q),
                itertools.repeat(theory),
                chunks,
            )
            images = [terms for part in parts for terms in part]
    else:
        images = _boundary_columns(Q, theory, source.tuples)

    columns: Dict[int, Dict[int, int]] = {}
    for j, terms in enumerate(images):
        if not terms:
            continue
        column = {}
        for y, coefficient in terms.items():
            row = target.index.get(y)
            if row is None:
                raise ChainComplexError(
                    f"Boundary term {_show(y)} is not a basis element of "
                    f"{theory.value}_{target.degree}"
                )
            column[row] = coefficient
        columns[j] = column
    return SparseIntMatrix(len(target), len(source), columns)


def boundary_matrix(
    Q: QuandleTable,
    n: int,
    theory,
    max_basis: int = Defaults.MAX_BASIS,
    jobs: int = 1,
) -> SparseIntMatrix:
    """
    Matrix of d_n in the given theory w.r.t. the lexicographic bases.

    d_0 is the 0 x |C_0| matrix and d_1 is zero.
    """
    theory = Theory.parse(theory)
    source = basis(Q, n, theory, max_basis)
    if n == 0:
        return SparseIntMatrix(0, len(source))
    target = basis(Q, n - 1, theory, max_basis)
    return boundary_from_bases(Q, source, target, jobs)
