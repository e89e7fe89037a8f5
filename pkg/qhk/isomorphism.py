"""
Isomorphism testing for small quandles

Backtracking over bijections h with h(a*b) = h(a)*h(b). Every partial
assignment is closed under the operation before branching, and elements
are only matched when their invariant signatures agree.
"""

import logging
from collections import Counter
from typing import List, Optional, Tuple

from .constants import Defaults
from .constructors import cycle_type
from .exceptions import SearchBudgetExceeded, SizeMismatch
from .quandle import QuandleTable, orbits

logger = logging.getLogger(__name__)

Signature = Tuple


def element_signatures(Q: QuandleTable) -> List[Signature]:
    """
    Per-element invariants preserved by every isomorphism.

    (stabilizer size, orbit size, cycle type of x -> x*a, size of the
    image of x -> a*x)
    """
    partition = orbits(Q)
    orbit_size = {x: len(block) for block in partition.blocks for x in block}
    signatures = []
    for a in Q.elements:
        row = Q.table[a]
        stab_size = sum(1 for x in Q.elements if row[x] == a)
        signatures.append(
            (
                stab_size,
                orbit_size[a],
                cycle_type(Q.column(a)),
                len(set(row)),
            )
        )
    return signatures


class _Search:
    def __init__(
        self, Q1: QuandleTable, Q2: QuandleTable, max_nodes: int
    ):
        self.Q1 = Q1
        self.Q2 = Q2
        self.sig1 = element_signatures(Q1)
        self.sig2 = element_signatures(Q2)
        self.max_nodes = max_nodes
        self.nodes = 0

    def signatures_match(self) -> bool:
        return Counter(self.sig1) == Counter(self.sig2)

    def _assign(
        self, h: List[int], used: List[bool], x: int, y: int
    ) -> Optional[Tuple[List[int], List[bool]]]:
        """Set h(x) = y and close under the operation, or None on conflict"""
        h = list(h)
        used = list(used)
        t1 = self.Q1.table
        t2 = self.Q2.table
        assigned = [a for a in range(len(h)) if h[a] >= 0]
        pending = [(x, y)]
        while pending:
            a, b = pending.pop()
            if h[a] == b:
                continue
            if h[a] >= 0 or used[b] or self.sig1[a] != self.sig2[b]:
                return None
            h[a] = b
            used[b] = True
            assigned.append(a)
            for c in assigned:
                pending.append((t1[a][c], t2[b][h[c]]))
                pending.append((t1[c][a], t2[h[c]][b]))
        return h, used

    def run(self, h: List[int], used: List[bool]) -> bool:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise SearchBudgetExceeded(
                f"Isomorphism search exceeded {self.max_nodes} nodes"
            )
        try:
            x = h.index(-1)
        except ValueError:
            return True
        for y in range(self.Q2.size):
            if used[y] or self.sig1[x] != self.sig2[y]:
                continue
            state = self._assign(h, used, x, y)
            if state is not None and self.run(*state):
                return True
        return False


def are_isomorphic(
    Q1: QuandleTable,
    Q2: QuandleTable,
    max_size: int = Defaults.ISOMORPHISM_MAX_SIZE,
    max_nodes: int = Defaults.ISOMORPHISM_MAX_NODES,
) -> bool:
    """
    Decide whether Q1 and Q2 are isomorphic.

    Args:
        Q1, Q2: Validated tables
        max_size: Largest size the search accepts
        max_nodes: Largest number of search nodes before giving up

    Raises:
        SizeMismatch: If the sizes differ
        SearchBudgetExceeded: If the size or node budget is exceeded
    """
    if Q1.size != Q2.size:
        raise SizeMismatch(Q1.size, Q2.size)
    if Q1.size > max_size:
        raise SearchBudgetExceeded(
            f"Size {Q1.size} exceeds the isomorphism search limit of "
            f"{max_size}"
        )
    search = _Search(Q1, Q2, max_nodes)
    if not search.signatures_match():
        logger.debug("Signatures differ: %r vs %r", Q1, Q2)
        return False
    n = Q1.size
    found = search.run([-1] * n, [False] * n)
    logger.debug(
        "Isomorphism %r vs %r: %s after %d nodes", Q1, Q2, found, search.nodes
    )
    return found
