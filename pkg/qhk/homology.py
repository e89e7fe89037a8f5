"""
Homology of rack, degenerate and quandle chain complexes

For d_n : C_n -> C_{n-1} (|C_{n-1}| x |C_n|):

    rank H_n    = dim C_n - rank d_n - rank d_{n+1}
    torsion H_n = invariant factors > 1 of d_{n+1}
    dim H_n(Z_p) = dim C_n - rank_p d_n - rank_p d_{n+1}
"""

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from .chains import ChainBasis, basis, boundary_from_bases
from .constants import Defaults, Theory
from .exceptions import NotAQuandle
from .logging_config import LoggerMixin, stage
from .quandle import QuandleTable, orbits
from .sparse import (
    SparseIntMatrix,
    invariant_chain,
    rank_mod_p,
    smith_invariants,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AbelianGroup:
    """Z^rank + Z/d1 + ... + Z/dk with d1 | d2 | ... and every di >= 2"""

    rank: int
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError(f"Rank must be non-negative, got {self.rank}")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"Invariant factor {d} must be >= 2")
        for d, e in zip(self.torsion, self.torsion[1:]):
            if e % d:
                raise ValueError(
                    f"Invariant factors {list(self.torsion)} do not form a "
                    "divisibility chain"
                )

    @classmethod
    def from_factors(
        cls, rank: int, factors: Iterable[int]
    ) -> "AbelianGroup":
        """Normalize any list of cyclic orders (1s ignored)"""
        chain = [d for d in invariant_chain(factors) if d != 1]
        return cls(rank, tuple(chain))

    def direct_sum(self, other: "AbelianGroup") -> "AbelianGroup":
        return AbelianGroup.from_factors(
            self.rank + other.rank, self.torsion + other.torsion
        )

    __add__ = direct_sum

    @property
    def exponent(self) -> int:
        """Largest invariant factor (1 when torsion-free)"""
        return self.torsion[-1] if self.torsion else 1

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def count_divisible(self, p: int) -> int:
        return sum(1 for d in self.torsion if d % p == 0)

    def to_dict(self) -> Dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        grouped: Dict[int, int] = {}
        for d in self.torsion:
            grouped[d] = grouped.get(d, 0) + 1
        for d, count in grouped.items():
            parts.append(f"Z_{d}" if count == 1 else f"Z_{d}^{count}")
        return " + ".join(parts) if parts else "0"


class ChainComplex(LoggerMixin):
    """
    One theory's chain complex of a quandle, built lazily per degree.

    Bases, boundary matrices and their Smith invariants are cached, so
    consecutive degrees share work.
    """

    def __init__(
        self,
        Q: QuandleTable,
        theory=Theory.RACK,
        max_basis: int = Defaults.MAX_BASIS,
        jobs: int = Defaults.JOBS,
    ):
        self.Q = Q
        self.theory = Theory.parse(theory)
        if self.theory.needs_quandle and not Q.is_quandle:
            raise NotAQuandle(f"The {self.theory.name.lower()} complex")
        self.max_basis = max_basis
        self.jobs = jobs
        self._bases: Dict[int, ChainBasis] = {}
        self._boundaries: Dict[int, SparseIntMatrix] = {}
        self._invariants: Dict[int, List[int]] = {}
        self._ranks_mod: Dict[Tuple[int, int], int] = {}

    def __repr__(self) -> str:
        return f"ChainComplex({self.Q!r}, theory={self.theory.value})"

    def basis(self, n: int) -> ChainBasis:
        if n not in self._bases:
            self._bases[n] = basis(self.Q, n, self.theory, self.max_basis)
        return self._bases[n]

    def dimension(self, n: int) -> int:
        return len(self.basis(n))

    def boundary(self, n: int) -> SparseIntMatrix:
        """Matrix of d_n (0 x |C_0| for n = 0)"""
        if n not in self._boundaries:
            source = self.basis(n)
            if n == 0:
                matrix = SparseIntMatrix(0, len(source))
            else:
                with stage(self.logger, "d_%d (%s)", n, self.theory.value):
                    matrix = boundary_from_bases(
                        self.Q, source, self.basis(n - 1), self.jobs
                    )
                self.logger.info(
                    "d_%d (%s) for %r: %dx%d, nnz=%d",
                    n,
                    self.theory.value,
                    self.Q,
                    matrix.rows,
                    matrix.cols,
                    matrix.nnz,
                )
            self._boundaries[n] = matrix
        return self._boundaries[n]

    def invariants(self, n: int) -> List[int]:
        """Smith invariants of d_n, 1s included"""
        if n not in self._invariants:
            matrix = self.boundary(n)
            with stage(
                self.logger, "Smith form of d_%d (%s)", n, self.theory.value
            ):
                self._invariants[n] = smith_invariants(matrix)
            self.logger.debug(
                "rank d_%d (%s) = %d",
                n,
                self.theory.value,
                len(self._invariants[n]),
            )
        return self._invariants[n]

    def boundary_rank(self, n: int) -> int:
        return len(self.invariants(n))

    def boundary_rank_mod(self, n: int, p: int) -> int:
        key = (n, p)
        if key not in self._ranks_mod:
            self._ranks_mod[key] = rank_mod_p(self.boundary(n), p)
        return self._ranks_mod[key]

    def homology(self, n: int) -> AbelianGroup:
        """H_n with integer coefficients"""
        if n < 0:
            raise ValueError(f"Degree must be non-negative, got {n}")
        rank = (
            self.dimension(n)
            - self.boundary_rank(n)
            - self.boundary_rank(n + 1)
        )
        torsion = tuple(d for d in self.invariants(n + 1) if d > 1)
        group = AbelianGroup(rank, torsion)
        self.logger.debug(
            "H_%d^%s(%r) = %s", n, self.theory.value, self.Q, group
        )
        return group

    def homology_mod(self, n: int, p: int) -> AbelianGroup:
        """H_n with Z_p coefficients, reported by its dimension as rank"""
        if n < 0:
            raise ValueError(f"Degree must be non-negative, got {n}")
        dim = (
            self.dimension(n)
            - self.boundary_rank_mod(n, p)
            - self.boundary_rank_mod(n + 1, p)
        )
        return AbelianGroup(dim)

    def verify_square_zero(self, n: int) -> bool:
        """d_n o d_{n+1} = 0 exactly"""
        product = self.boundary(n).matmul(self.boundary(n + 1))
        if not product.is_zero():
            self.logger.warning(
                "d_%d o d_%d != 0 for %r (%s): %d nonzero entries",
                n,
                n + 1,
                self.Q,
                self.theory.value,
                product.nnz,
            )
            return False
        return True


# =============================================================================
# Function interface
# =============================================================================


def homology(
    Q: QuandleTable,
    n: int,
    theory=Theory.RACK,
    coefficients: Optional[int] = None,
    max_basis: int = Defaults.MAX_BASIS,
    jobs: int = Defaults.JOBS,
) -> AbelianGroup:
    """
    H_n^W(Q) over Z (coefficients None or 0) or Z_p (coefficients = p).

    Over Z_p only the dimension is returned, as the rank.
    """
    complex_ = ChainComplex(Q, theory, max_basis, jobs)
    if coefficients:
        return complex_.homology_mod(n, coefficients)
    return complex_.homology(n)


def verify_square_zero(
    Q: QuandleTable,
    n: int,
    theory=Theory.RACK,
    max_basis: int = Defaults.MAX_BASIS,
) -> bool:
    return ChainComplex(Q, theory, max_basis).verify_square_zero(n)


def rank_prediction(Q: QuandleTable, n: int, theory=Theory.RACK) -> int:
    """
    Free rank from the orbit count o alone.

    R: o^n; Q: o(o-1)^(n-1) for n >= 1 and 1 for n = 0; D: the difference.
    """
    theory = Theory.parse(theory)
    if theory.needs_quandle and not Q.is_quandle:
        raise NotAQuandle("Rank prediction for the quandle complexes")
    o = orbits(Q).count
    rack = o**n
    quandle = 1 if n == 0 else o * (o - 1) ** (n - 1)
    if theory is Theory.RACK:
        return rack
    if theory is Theory.QUANDLE:
        return quandle
    return rack - quandle


def check_torsion_annihilated(group: AbelianGroup, N: int) -> bool:
    """
    True iff N kills the torsion of the group.

    N = 0 is the marker used for trivial quandles: it passes only a
    torsion-free group.
    """
    if N < 0:
        raise ValueError(f"N must be non-negative, got {N}")
    if N == 0:
        return not group.torsion
    return all(N % d == 0 for d in group.torsion)


def splitting_check(
    Q: QuandleTable,
    n: int,
    max_basis: int = Defaults.MAX_BASIS,
    jobs: int = Defaults.JOBS,
) -> bool:
    """H_n^R = H_n^D + H_n^Q as abstract groups"""
    if not Q.is_quandle:
        raise NotAQuandle("The splitting check")
    groups = {
        theory: ChainComplex(Q, theory, max_basis, jobs).homology(n)
        for theory in Theory
    }
    combined = groups[Theory.DEGENERATE].direct_sum(groups[Theory.QUANDLE])
    ok = groups[Theory.RACK] == combined
    if not ok:
        logger.warning(
            "Splitting fails in degree %d for %r: %s vs %s + %s",
            n,
            Q,
            groups[Theory.RACK],
            groups[Theory.DEGENERATE],
            groups[Theory.QUANDLE],
        )
    return ok


@dataclass(frozen=True)
class CoefficientCheck:
    """Z_p dimension against the universal coefficient prediction"""

    degree: int
    prime: int
    dimension: int
    predicted: int

    @property
    def consistent(self) -> bool:
        return self.dimension == self.predicted


def universal_coefficient_check(
    Q: QuandleTable,
    n: int,
    theory=Theory.RACK,
    p: int = 2,
    complex_: Optional[ChainComplex] = None,
) -> CoefficientCheck:
    """
    dim H_n(Z_p) = rank H_n + #{d in H_n : p | d} + #{d in H_{n-1} : p | d}
    """
    if complex_ is None:
        complex_ = ChainComplex(Q, theory)
    integral = complex_.homology(n)
    predicted = integral.rank + integral.count_divisible(p)
    if n > 0:
        predicted += complex_.homology(n - 1).count_divisible(p)
    dimension = complex_.homology_mod(n, p).rank
    return CoefficientCheck(n, p, dimension, predicted)


def reduced_quandle_homology(
    Q: QuandleTable,
    n: int,
    max_basis: int = Defaults.MAX_BASIS,
) -> AbelianGroup:
    """
    Reduced quandle homology: one free summand less in degree 1, zero in
    degree 0, unchanged above.
    """
    if n == 0:
        return AbelianGroup(0)
    group = ChainComplex(Q, Theory.QUANDLE, max_basis).homology(n)
    if n == 1:
        return AbelianGroup(max(group.rank - 1, 0), group.torsion)
    return group


def quasigroup_bound_check(
    Q: QuandleTable, groups: Iterable[AbelianGroup]
) -> bool:
    """Torsion of a finite quasigroup quandle is killed by |X|"""
    return all(check_torsion_annihilated(g, Q.size) for g in groups)


@dataclass
class HomologyReport:
    """One homology group as reported by the CLI"""

    quandle: str
    theory: str
    degree: int
    group: AbelianGroup
    coefficients: Optional[int] = None
    elapsed_ms: int = field(default=0, compare=False)

    def to_dict(self) -> Dict:
        data = {
            "quandle": self.quandle,
            "theory": self.theory,
            "degree": self.degree,
            "rank": self.group.rank,
            "torsion": list(self.group.torsion),
            "elapsed_ms": self.elapsed_ms,
        }
        if self.coefficients:
            data["coefficients"] = f"Z_{self.coefficients}"
        return data


def homology_reports(
    Q: QuandleTable,
    theory,
    max_dim: int,
    coefficients: Optional[int] = None,
    max_basis: int = Defaults.MAX_BASIS,
    jobs: int = Defaults.JOBS,
) -> List[HomologyReport]:
    """H_0 .. H_max_dim of one complex, sharing matrices between degrees"""
    complex_ = ChainComplex(Q, theory, max_basis, jobs)
    reports = []
    for n in range(max_dim + 1):
        started = time.perf_counter()
        if coefficients:
            group = complex_.homology_mod(n, coefficients)
        else:
            group = complex_.homology(n)
        elapsed = int((time.perf_counter() - started) * 1000)
        reports.append(
            HomologyReport(
                quandle=Q.name or f"size-{Q.size}",
                theory=complex_.theory.value,
                degree=n,
                group=group,
                coefficients=coefficients,
                elapsed_ms=elapsed,
            )
        )
    return reports


def lcm_of(values: Iterable[int]) -> int:
    result = 1
    for value in values:
        result = math.lcm(result, value)
    return result
