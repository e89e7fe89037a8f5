"""
Builtin quandle families

Trivial, dihedral, Takasaki, Alexander and conjugation-class quandles.
Every constructor returns a table that went through validate_table.
"""

import itertools
import logging
import math
from typing import List, Sequence, Tuple

from .exceptions import BadPartition, ConstructionError, NonUnitParameter
from .quandle import QuandleTable, validate_table

logger = logging.getLogger(__name__)

Permutation = Tuple[int, ...]


def _require_positive(name: str, value: int) -> None:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ConstructionError(
            f"{name} must be a positive integer, got {value!r}"
        )


def make_trivial(n: int) -> QuandleTable:
    """T_n: a*b = a"""
    _require_positive("n", n)
    grid = [[a] * n for a in range(n)]
    return validate_table(grid, "quandle", name=f"T{n}")


def make_dihedral(n: int) -> QuandleTable:
    """R_n: a*b = 2b - a mod n"""
    _require_positive("n", n)
    grid = [[(2 * b - a) % n for b in range(n)] for a in range(n)]
    return validate_table(grid, "quandle", name=f"R{n}")


def make_takasaki(moduli: Sequence[int]) -> QuandleTable:
    """
    T(G) for G = Z_m1 x ... x Z_mk, with a*b = 2b - a componentwise.

    Elements are the tuples of G in lexicographic order, so the index of
    (g1, ..., gk) is its mixed-radix value.
    """
    moduli = list(moduli)
    if not moduli:
        raise ConstructionError("Takasaki quandle needs at least one factor")
    for modulus in moduli:
        _require_positive("modulus", modulus)

    elements = list(itertools.product(*(range(m) for m in moduli)))
    index = {g: i for i, g in enumerate(elements)}
    grid = [
        [
            index[
                tuple(
                    (2 * hb - ga) % m for ga, hb, m in zip(g, h, moduli)
                )
            ]
            for h in elements
        ]
        for g in elements
    ]
    label = "x".join(str(m) for m in moduli)
    return validate_table(grid, "quandle", name=f"T(Z{label})")


def make_alexander(n: int, t: int) -> QuandleTable:
    """
    Alexander quandle on Z_n: a*b = t*a + (1 - t)*b mod n.

    Raises:
        NonUnitParameter: If gcd(t, n) != 1
    """
    _require_positive("n", n)
    if math.gcd(t % n, n) != 1:
        raise NonUnitParameter(t, n)
    grid = [
        [(t * a + (1 - t) * b) % n for b in range(n)] for a in range(n)
    ]
    return validate_table(grid, "quandle", name=f"Alexander({n},{t})")


# =============================================================================
# Conjugation quandles
# =============================================================================


def cycle_type(perm: Permutation) -> Tuple[int, ...]:
    """Cycle lengths of a permutation (fixed points included), descending"""
    seen = [False] * len(perm)
    lengths: List[int] = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """(p o q)(x) = p(q(x))"""
    return tuple(p[x] for x in q)


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for x, y in enumerate(p):
        inv[y] = x
    return tuple(inv)


def conjugacy_class(degree: int, shape: Sequence[int]) -> List[Permutation]:
    """
    All permutations of {0..degree-1} with the given cycle type.

    Listed in lexicographic order of one-line notation.

    Raises:
        BadPartition: If shape is not a partition of degree
    """
    _require_positive("degree", degree)
    shape = tuple(shape)
    if (
        not shape
        or any(
            isinstance(part, bool) or not isinstance(part, int) or part < 1
            for part in shape
        )
        or sum(shape) != degree
    ):
        raise BadPartition(degree, shape)

    wanted = tuple(sorted(shape, reverse=True))
    return [
        perm
        for perm in itertools.permutations(range(degree))
        if cycle_type(perm) == wanted
    ]


def make_conjugation_class(
    degree: int, shape: Sequence[int]
) -> QuandleTable:
    """
    Conjugacy class of the given cycle type in S_degree with g*h = h^-1 g h.

    Elements are ordered lexicographically by one-line notation; compare
    against other presentations with are_isomorphic, never by labels.
    """
    elements = conjugacy_class(degree, shape)
    index = {g: i for i, g in enumerate(elements)}
    inverses = [inverse(h) for h in elements]
    grid = [
        [
            index[compose(inverses[j], compose(g, h))]
            for j, h in enumerate(elements)
        ]
        for g in elements
    ]
    label = ",".join(str(part) for part in shape)
    logger.debug(
        "Conjugation class of type [%s] in S%d has %d elements",
        label,
        degree,
        len(elements),
    )
    return validate_table(grid, "quandle", name=f"Conj(S{degree},[{label}])")
