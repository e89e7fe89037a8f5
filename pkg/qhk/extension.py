"""
Dynamical cocycle extensions

A cocycle alpha over a base quandle X with fiber S defines the quandle
S x_alpha X on pairs (s, a) by

    (s, a) * (t, b) = (alpha_{a,b}(s, t), a*b)

Pairs are linearized s-major: (s, a) has index s * |X| + a.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

from .constructors import make_trivial
from .exceptions import (
    BijectionCondFail,
    CocycleCondFail,
    CocycleError,
    IdentityCondFail,
    NotQuasigroup,
)
from .quandle import QuandleTable, is_quasigroup, validate_table

logger = logging.getLogger(__name__)

# alpha[a][b][s][t]
AlphaTable = Tuple[Tuple[Tuple[Tuple[int, ...], ...], ...], ...]


@dataclass(frozen=True)
class CocycleSpec:
    """A dense dynamical cocycle alpha_{a,b}(s,t) over a base quandle"""

    base: QuandleTable
    fiber_size: int
    alpha: AlphaTable
    fiber_name: str = ""

    def value(self, a: int, b: int, s: int, t: int) -> int:
        return self.alpha[a][b][s][t]

    def pair_index(self, s: int, a: int) -> int:
        return s * self.base.size + a

    def pair(self, index: int) -> Tuple[int, int]:
        return divmod(index, self.base.size)

    @property
    def size(self) -> int:
        return self.fiber_size * self.base.size


def make_cocycle_spec(
    base: QuandleTable,
    fiber_size: int,
    alpha: Sequence,
    fiber_name: str = "",
) -> CocycleSpec:
    """
    Freeze a nested alpha[a][b][s][t] sequence into a CocycleSpec.

    Raises:
        CocycleError: If alpha is not total over X x X x S x S with values
            in S
    """
    n = base.size
    if fiber_size < 1:
        raise CocycleError(f"Fiber size must be positive, got {fiber_size}")
    frozen = []
    for a in range(n):
        if len(alpha) != n or len(alpha[a]) != n:
            raise CocycleError(f"alpha must have {n} x {n} grids")
        row = []
        for b in range(n):
            grid = alpha[a][b]
            if len(grid) != fiber_size or any(
                len(line) != fiber_size for line in grid
            ):
                raise CocycleError(
                    f"Grid alpha_({a + 1},{b + 1}) must be "
                    f"{fiber_size} x {fiber_size}"
                )
            for line in grid:
                for value in line:
                    if not 0 <= value < fiber_size:
                        raise CocycleError(
                            f"Grid alpha_({a + 1},{b + 1}) has value "
                            f"{value + 1} outside 1..{fiber_size}"
                        )
            row.append(tuple(tuple(line) for line in grid))
        frozen.append(tuple(row))
    return CocycleSpec(base, fiber_size, tuple(frozen), fiber_name)


def validate_cocycle(spec: CocycleSpec) -> CocycleSpec:
    """
    Check the identity, bijection and cocycle conditions in that order.

    Returns:
        The same spec when every condition holds

    Raises:
        IdentityCondFail, BijectionCondFail, CocycleCondFail: The first
            violated condition with its witness indices
    """
    X = spec.base.table
    alpha = spec.alpha
    fiber = range(spec.fiber_size)
    base = spec.base.elements

    for a in base:
        for s in fiber:
            if alpha[a][a][s][s] != s:
                raise IdentityCondFail(a, s)

    for a in base:
        for b in base:
            grid = alpha[a][b]
            for t in fiber:
                if len({grid[s][t] for s in fiber}) != spec.fiber_size:
                    raise BijectionCondFail(a, b, t)

    for a, b, c in itertools.product(base, repeat=3):
        ab, ac, bc = X[a][b], X[a][c], X[b][c]
        left_grid = alpha[ab][c]
        right_grid = alpha[ac][bc]
        ab_grid, ac_grid, bc_grid = alpha[a][b], alpha[a][c], alpha[b][c]
        for s, t, u in itertools.product(fiber, repeat=3):
            left = left_grid[ab_grid[s][t]][u]
            right = right_grid[ac_grid[s][u]][bc_grid[t][u]]
            if left != right:
                raise CocycleCondFail(a, b, c, s, t, u)

    logger.debug(
        "Cocycle over %r with fiber size %d is valid",
        spec.base,
        spec.fiber_size,
    )
    return spec


def extend(spec: CocycleSpec, name: str = "") -> QuandleTable:
    """
    Build S x_alpha X on |S| * |X| elements.

    Raises:
        CocycleError: If the cocycle is invalid
        TableValidationError: Propagated from validate_table
    """
    validate_cocycle(spec)
    X = spec.base.table
    n = spec.base.size
    size = spec.size
    grid = [[0] * size for _ in range(size)]
    for i in range(size):
        s, a = divmod(i, n)
        for j in range(size):
            t, b = divmod(j, n)
            grid[i][j] = spec.alpha[a][b][s][t] * n + X[a][b]
    if not name:
        fiber = spec.fiber_name or f"S{spec.fiber_size}"
        name = f"{fiber}x_alpha{spec.base.name}"
    return validate_table(grid, "quandle", name=name)


def constant_cocycle(base: QuandleTable, fiber_size: int) -> CocycleSpec:
    """alpha_{a,b}(s,t) = s: the product of the base with a trivial fiber"""
    fiber = range(fiber_size)
    grid = tuple(tuple(s for _ in fiber) for s in fiber)
    alpha = tuple(tuple(grid for _ in base.elements) for _ in base.elements)
    return CocycleSpec(base, fiber_size, alpha, f"T{fiber_size}")


def quasigroup_by_trivial_cocycle(
    X: QuandleTable, n: int
) -> CocycleSpec:
    """
    Cocycle over the trivial quandle T_n with fiber X.

    alpha_{a,b}(s,t) = s*t when a = b and s otherwise. The extension is a
    ((n-1)|X| + 1)-almost quasigroup quandle with n orbits.

    Raises:
        NotQuasigroup: If X is not a quasigroup
    """
    if not is_quasigroup(X):
        bad = next(a for a in X.elements if len(set(X.row(a))) != X.size)
        raise NotQuasigroup(bad)
    base = make_trivial(n)
    fiber = X.elements
    same = tuple(tuple(X.table[s][t] for t in fiber) for s in fiber)
    other = tuple(tuple(s for _ in fiber) for s in fiber)
    alpha = tuple(
        tuple(same if a == b else other for b in base.elements)
        for a in base.elements
    )
    return CocycleSpec(base, X.size, alpha, X.name)
