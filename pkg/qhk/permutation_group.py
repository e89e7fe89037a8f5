"""
Permutation groups generated by a list of permutations

Orders are computed by breadth-first closure with a hash set of elements.
That covers inner automorphism groups of the quandles handled here;
larger experiments raise the cap through budget.max_group_order.
"""

import logging
from collections import deque
from typing import FrozenSet, Iterator, Optional, Sequence, Tuple

from .constants import Defaults
from .exceptions import GroupTooLarge
from .quandle import QuandleTable

logger = logging.getLogger(__name__)

Permutation = Tuple[int, ...]


class PermutationGroup:
    """
    Group generated by permutations of {0, ..., degree-1}.

    The element set is built on first use of order/elements and cached.
    """

    def __init__(
        self,
        degree: int,
        generators: Sequence[Sequence[int]],
        max_order: int = Defaults.MAX_GROUP_ORDER,
    ):
        self.degree = degree
        self.generators: Tuple[Permutation, ...] = tuple(
            tuple(g) for g in generators
        )
        for g in self.generators:
            if sorted(g) != list(range(degree)):
                raise ValueError(f"{g} is not a permutation of degree "
                                 f"{degree}")
        self.max_order = max_order
        self._elements: Optional[FrozenSet[Permutation]] = None

    @property
    def identity(self) -> Permutation:
        return tuple(range(self.degree))

    def _generate(self) -> Iterator[Permutation]:
        """
        Yield every group element once, breadth-first from the identity.

        Right multiplication by generators suffices: in a finite group the
        inverse of a generator is one of its powers.
        """
        identity = self.identity
        seen = {identity}
        queue = deque([identity])
        yield identity
        gens = [g for g in set(self.generators) if g != identity]
        while queue:
            current = queue.popleft()
            for g in gens:
                # current followed by g
                product = tuple(g[x] for x in current)
                if product not in seen:
                    if len(seen) >= self.max_order:
                        raise GroupTooLarge(self.max_order)
                    seen.add(product)
                    queue.append(product)
                    yield product

    @property
    def elements(self) -> FrozenSet[Permutation]:
        if self._elements is None:
            self._elements = frozenset(self._generate())
            logger.debug(
                "Generated group of degree %d: order %d from %d generators",
                self.degree,
                len(self._elements),
                len(self.generators),
            )
        return self._elements

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, perm) -> bool:
        return tuple(perm) in self.elements

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        order = "?" if self._elements is None else len(self._elements)
        return (
            f"PermutationGroup(degree={self.degree}, "
            f"generators={len(self.generators)}, order={order})"
        )


def inner_group(
    Q: QuandleTable, max_order: int = Defaults.MAX_GROUP_ORDER
) -> PermutationGroup:
    """
    Inn(Q), generated by the right translations x -> x*b.

    Raises:
        GroupTooLarge: When the order exceeds max_order (on first use of
            order or elements)
    """
    generators = sorted({Q.column(b) for b in Q.elements})
    return PermutationGroup(Q.size, generators, max_order=max_order)
