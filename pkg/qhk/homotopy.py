"""
Chain maps and chain homotopies on m-almost quasigroup quandles

For x = (x_1, ..., x_n), c ranging over the stabilizer S_{x_j} (listed
with x_j first) and y over X, with "rest" = (x_{j+1}, ..., x_n):

    g1^j(x) = sum_c (c^{j-1}, x_j, rest)
    g2^j(x) = sum_c (c^j, rest)
    g0^j(x) = sum_c (x_j^{j-1}, c, rest)
    gs^j(x) = sum_y (y^j, rest)                  gs^0 = |X| Id
    G_n^j(x) = sum_c sum_y (c^{j-1}, x_j, y, rest) - (x_j^{j-1}, c, y, rest)
    F_n^j(x) = sum_c sum_y (x_j^{j-1}, y, c, rest) - (c^{j-1}, y, c, rest)
    D_n^j(x) = sum_c sum_y (c^j, y, rest)
    E_n^j(x) = sum_c sum_y (c^{j-1}, y, x_j, rest)

With trivial stabilizers the rack boundary d satisfies

    d G + G d = (-1)^{j+1} (|X|-m) (g1^j - g0^j)
    d F + F d = (-1)^j     (|X|-m) (g0^j - g2^j)
    d D + D d = (-1)^{j+1} (|X| g2^j - m gs^j)
    d E + E d = (-1)^j     (|X| g1^j - m gs^{j-1})

where H_{n-1}^j is zero when j > n-1. Chaining them shows that
N = m lcm(|X|, |X|-m) annihilates the torsion of rack and quandle
homology.
"""

import itertools
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .chains import (
    Chain,
    Terms,
    add_term,
    basis,
    face_act,
    face_delete,
    rack_boundary_terms,
)
from .constants import HOMOTOPY_FAMILIES, Defaults, MapFamily, Theory
from .exceptions import BadIndex, GroupTooLarge, HypothesisFail, NotAQ
from .homology import (
    AbelianGroup,
    ChainComplex,
    check_torsion_annihilated,
    lcm_of,
)
from .permutation_group import inner_group
from .quandle import AQProfile, QuandleTable, is_quasigroup, is_trivial_subset

logger = logging.getLogger(__name__)


# =============================================================================
# Formal chains
# =============================================================================


class FormalChain:
    """Finite integer combination of n-tuples; zero terms are never kept"""

    __slots__ = ("degree", "_terms")

    def __init__(self, degree: int, terms: Optional[Dict] = None):
        self.degree = degree
        self._terms: Terms = {}
        for x, coefficient in (terms or {}).items():
            x = tuple(x)
            if len(x) != degree:
                raise ValueError(
                    f"Tuple {x} does not have length {degree}"
                )
            add_term(self._terms, x, coefficient)

    @classmethod
    def basis_element(cls, x: Sequence[int], coefficient: int = 1):
        return cls(len(x), {tuple(x): coefficient})

    @classmethod
    def _wrap(cls, degree: int, terms: Terms) -> "FormalChain":
        chain = cls(degree)
        chain._terms = terms
        return chain

    def coefficient(self, x: Sequence[int]) -> int:
        return self._terms.get(tuple(x), 0)

    def items(self) -> List[Tuple[Chain, int]]:
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def max_norm(self) -> int:
        return max((abs(c) for c in self._terms.values()), default=0)

    def _combine(self, other: "FormalChain", sign: int) -> "FormalChain":
        if self.degree != other.degree and self._terms and other._terms:
            raise ValueError(
                f"Cannot combine degrees {self.degree} and {other.degree}"
            )
        terms = dict(self._terms)
        for x, coefficient in other._terms.items():
            add_term(terms, x, sign * coefficient)
        return FormalChain._wrap(self.degree, terms)

    def __add__(self, other: "FormalChain") -> "FormalChain":
        return self._combine(other, 1)

    def __sub__(self, other: "FormalChain") -> "FormalChain":
        return self._combine(other, -1)

    def __neg__(self) -> "FormalChain":
        return self.scaled(-1)

    def scaled(self, k: int) -> "FormalChain":
        if not k:
            return FormalChain(self.degree)
        return FormalChain._wrap(
            self.degree, {x: k * c for x, c in self._terms.items()}
        )

    __rmul__ = scaled

    def __iter__(self) -> Iterator[Tuple[Chain, int]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalChain):
            return NotImplemented
        if not self._terms and not other._terms:
            return True
        return self.degree == other.degree and self._terms == other._terms

    def __repr__(self) -> str:
        shown = " ".join(
            f"{'+' if c > 0 else '-'}{abs(c)}("
            + ",".join(str(v + 1) for v in x)
            + ")"
            for x, c in self.items()[:6]
        )
        more = " ..." if len(self) > 6 else ""
        return f"FormalChain[{self.degree}]({shown or '0'}{more})"

    def to_list(self) -> List[Dict]:
        """1-based terms for reports"""
        return [
            {"tuple": [v + 1 for v in x], "coefficient": c}
            for x, c in self.items()
        ]


def rack_boundary(Q: QuandleTable, chain: FormalChain) -> FormalChain:
    """Rack boundary extended linearly"""
    terms: Terms = {}
    for x, coefficient in chain._terms.items():
        for y, d in rack_boundary_terms(Q, x).items():
            add_term(terms, y, coefficient * d)
    return FormalChain._wrap(max(chain.degree - 1, 0), terms)


# =============================================================================
# Maps
# =============================================================================


@dataclass(frozen=True)
class MapId:
    """One chain map (g0, g1, g2, gs) or homotopy (G, F, D, E) at j"""

    family: MapFamily
    j: int

    @classmethod
    def of(cls, family, j: int) -> "MapId":
        return cls(MapFamily(family), j)

    def check(self, degree: int) -> None:
        """
        Raises:
            BadIndex: If j is outside the family's range on this degree
        """
        if self.j not in self.family.j_range(degree):
            raise BadIndex(self.family.value, self.j, degree)

    def target_degree(self, degree: int) -> int:
        return degree + 1 if self.family.is_homotopy else degree

    def __str__(self) -> str:
        return f"{self.family.value}^{self.j}"


def _apply_into(
    out: Terms,
    coefficient: int,
    Q: QuandleTable,
    profile: AQProfile,
    family: MapFamily,
    j: int,
    x: Chain,
) -> None:
    """out += coefficient * family^j(x), with no range checks"""
    if not coefficient:
        return
    rest = x[j:]
    if family is MapFamily.GS:
        if j == 0:
            add_term(out, x, coefficient * Q.size)
            return
        for y in Q.elements:
            add_term(out, (y,) * j + rest, coefficient)
        return

    xj = x[j - 1]
    head = (xj,) * (j - 1)
    stab = profile.stabilizers[xj]
    elements = Q.elements

    if family is MapFamily.G1:
        for c in stab:
            add_term(out, (c,) * (j - 1) + (xj,) + rest, coefficient)
    elif family is MapFamily.G2:
        for c in stab:
            add_term(out, (c,) * j + rest, coefficient)
    elif family is MapFamily.G0:
        for c in stab:
            add_term(out, head + (c,) + rest, coefficient)
    elif family is MapFamily.G:
        for c in stab:
            lead = (c,) * (j - 1) + (xj,)
            for y in elements:
                add_term(out, lead + (y,) + rest, coefficient)
                add_term(out, head + (c, y) + rest, -coefficient)
    elif family is MapFamily.F:
        for c in stab:
            copies = (c,) * (j - 1)
            for y in elements:
                add_term(out, head + (y, c) + rest, coefficient)
                add_term(out, copies + (y, c) + rest, -coefficient)
    elif family is MapFamily.D:
        for c in stab:
            copies = (c,) * j
            for y in elements:
                add_term(out, copies + (y,) + rest, coefficient)
    elif family is MapFamily.E:
        for c in stab:
            copies = (c,) * (j - 1)
            for y in elements:
                add_term(out, copies + (y, xj) + rest, coefficient)
    else:  # pragma: no cover
        raise ValueError(f"Unknown map family {family}")


def apply_map(
    Q: QuandleTable,
    profile: AQProfile,
    map_id: MapId,
    x: Sequence[int],
) -> FormalChain:
    """
    Apply one map to a basis tuple.

    Application is purely formal and does not need trivial stabilizers.

    Raises:
        BadIndex: If j is outside the family's range for len(x)
    """
    x = tuple(x)
    map_id.check(len(x))
    terms: Terms = {}
    _apply_into(terms, 1, Q, profile, map_id.family, map_id.j, x)
    return FormalChain._wrap(map_id.target_degree(len(x)), terms)


def apply_to_chain(
    Q: QuandleTable,
    profile: AQProfile,
    map_id: MapId,
    chain: FormalChain,
) -> FormalChain:
    """Linear extension of apply_map"""
    map_id.check(chain.degree)
    terms: Terms = {}
    for x, coefficient in chain._terms.items():
        _apply_into(terms, coefficient, Q, profile, map_id.family, map_id.j, x)
    return FormalChain._wrap(map_id.target_degree(chain.degree), terms)


# =============================================================================
# Identity verification
# =============================================================================


def require_trivial_stabilizers(Q: QuandleTable, profile: AQProfile) -> None:
    """
    Raises:
        NotAQ: If there is no profile
        HypothesisFail: For the first stabilizer that is not trivial
    """
    if profile is None:
        raise NotAQ(f"{Q!r} is not an m-almost quasigroup quandle")
    if profile.trivial_stabilizers:
        return
    for a in Q.elements:
        if not is_trivial_subset(Q, profile.stabilizers[a]):
            raise HypothesisFail(a)


def _rhs_into(
    out: Terms,
    Q: QuandleTable,
    profile: AQProfile,
    family: MapFamily,
    j: int,
    x: Chain,
    sign: int,
) -> None:
    """out += sign * (right-hand side of the identity for family at j)"""
    size, m = Q.size, profile.m
    parity = 1 if j % 2 == 0 else -1
    if family is MapFamily.G:
        k = sign * -parity * (size - m)
        _apply_into(out, k, Q, profile, MapFamily.G1, j, x)
        _apply_into(out, -k, Q, profile, MapFamily.G0, j, x)
    elif family is MapFamily.F:
        k = sign * parity * (size - m)
        _apply_into(out, k, Q, profile, MapFamily.G0, j, x)
        _apply_into(out, -k, Q, profile, MapFamily.G2, j, x)
    elif family is MapFamily.D:
        k = sign * -parity
        _apply_into(out, k * size, Q, profile, MapFamily.G2, j, x)
        _apply_into(out, -k * m, Q, profile, MapFamily.GS, j, x)
    elif family is MapFamily.E:
        k = sign * parity
        _apply_into(out, k * size, Q, profile, MapFamily.G1, j, x)
        _apply_into(out, -k * m, Q, profile, MapFamily.GS, j - 1, x)
    else:
        raise ValueError(f"{family.value} is not a homotopy family")


def identity_residual(
    Q: QuandleTable,
    profile: AQProfile,
    family: MapFamily,
    j: int,
    x: Chain,
) -> Terms:
    """d H(x) + H(d x) - rhs(x) as raw terms (empty when the identity holds)"""
    n = len(x)
    lifted: Terms = {}
    _apply_into(lifted, 1, Q, profile, family, j, x)
    out: Terms = {}
    for t, c in lifted.items():
        for u, d in rack_boundary_terms(Q, t).items():
            add_term(out, u, c * d)
    if j in family.j_range(n - 1):
        for u, d in rack_boundary_terms(Q, x).items():
            _apply_into(out, d, Q, profile, family, j, u)
    _rhs_into(out, Q, profile, family, j, x, -1)
    return out


@dataclass
class IdentityReport:
    """Outcome of one identity over every basis tuple of C_n^R"""

    quandle: str
    family: str
    degree: int
    j: int
    tuples_checked: int
    max_residual: int
    witness: Optional[Chain] = None
    residual: Optional[FormalChain] = field(default=None, repr=False)

    @property
    def passed(self) -> bool:
        return self.max_residual == 0

    def to_dict(self) -> Dict:
        data = {
            "quandle": self.quandle,
            "family": self.family,
            "degree": self.degree,
            "j": self.j,
            "tuples_checked": self.tuples_checked,
            "max_residual": self.max_residual,
        }
        if self.witness is not None:
            data["witness"] = [v + 1 for v in self.witness]
        return data


def _residual_scan(
    Q: QuandleTable,
    profile: AQProfile,
    family: MapFamily,
    j: int,
    tuples: Sequence[Chain],
) -> Tuple[int, Optional[Chain], Optional[Terms]]:
    worst = 0
    witness: Optional[Chain] = None
    first: Optional[Terms] = None
    for x in tuples:
        residual = identity_residual(Q, profile, family, j, x)
        if residual:
            worst = max(worst, max(abs(c) for c in residual.values()))
            if witness is None:
                witness, first = x, residual
    return worst, witness, first


def _split(items: Sequence, jobs: int) -> List[Sequence]:
    step = max(1, -(-len(items) // (jobs * 4)))
    return [items[k : k + step] for k in range(0, len(items), step)]


def verify_identity(
    Q: QuandleTable,
    profile: AQProfile,
    family,
    n: int,
    j: int,
    max_basis: int = Defaults.MAX_BASIS,
    jobs: int = Defaults.JOBS,
) -> IdentityReport:
    """
    Check one homotopy identity tuple by tuple on C_n^R.

    Raises:
        HypothesisFail: If some stabilizer is not a trivial subquandle
        BadIndex: If j is outside the family's range on degree n
        DegreeTooLarge: If |X|^(n+1) exceeds the budget
    """
    family = MapFamily(family)
    if family not in HOMOTOPY_FAMILIES:
        raise ValueError(f"{family.value} is not a homotopy family")
    require_trivial_stabilizers(Q, profile)
    MapId(family, j).check(n)
    # the lifted chains live in degree n + 1
    basis(Q, n + 1, Theory.RACK, max_basis)
    tuples = basis(Q, n, Theory.RACK, max_basis).tuples

    if jobs > 1 and len(tuples) > 200:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(
                pool.map(
                    _residual_scan,
                    itertools.repeat(Q),
                    itertools.repeat(profile),
                    itertools.repeat(family),
                    itertools.repeat(j),
                    _split(tuples, jobs),
                )
            )
    else:
        parts = [_residual_scan(Q, profile, family, j, tuples)]

    worst = max((part[0] for part in parts), default=0)
    witness, first = next(
        ((w, r) for _, w, r in parts if w is not None), (None, None)
    )
    report = IdentityReport(
        quandle=Q.name or f"size-{Q.size}",
        family=family.value,
        degree=n,
        j=j,
        tuples_checked=len(tuples),
        max_residual=worst,
        witness=witness,
        residual=(
            FormalChain._wrap(n + 1, first) if first is not None else None
        ),
    )
    if report.passed:
        logger.debug(
            "Identity %s n=%d j=%d holds on %d tuples",
            family.value,
            n,
            j,
            len(tuples),
        )
    else:
        logger.warning(
            "Identity %s n=%d j=%d fails at %s (max residual %d)",
            family.value,
            n,
            j,
            witness,
            worst,
        )
    return report


def identity_cases(max_dim: int) -> Iterator[Tuple[MapFamily, int, int]]:
    """Every (family, n, j) with 1 <= n <= max_dim"""
    for n in range(1, max_dim + 1):
        for family in (MapFamily.G, MapFamily.F, MapFamily.D, MapFamily.E):
            for j in family.j_range(n):
                yield family, n, j


def verify_all_identities(
    Q: QuandleTable,
    profile: AQProfile,
    max_dim: int,
    max_basis: int = Defaults.MAX_BASIS,
    jobs: int = Defaults.JOBS,
) -> List[IdentityReport]:
    require_trivial_stabilizers(Q, profile)
    return [
        verify_identity(Q, profile, family, n, j, max_basis, jobs)
        for family, n, j in identity_cases(max_dim)
    ]


# =============================================================================
# Face sub-lemmas and diagnostics
# =============================================================================


@dataclass(frozen=True)
class FaceCheck:
    passed: bool
    tuples_checked: int
    witness: Optional[Tuple[Chain, int]] = None


def _face_image(
    Q: QuandleTable, terms: Terms, i: int, delete: bool
) -> Terms:
    out: Terms = {}
    for t, c in terms.items():
        image = face_delete(t, i) if delete else face_act(Q, t, i)
        add_term(out, image, c)
    return out


def face_commutation_check(
    Q: QuandleTable,
    profile: AQProfile,
    family,
    n: int,
    j: int,
    max_basis: int = Defaults.MAX_BASIS,
) -> FaceCheck:
    """
    Check the face relations a homotopy H = family^j satisfies on X^n.

    For i <= j-1: (d_i^0 - d_i^*) H(x) = 0.
    For j+1 <= i <= n: d_{i+1}^* H(x) = H(d_i^* x).

    They only use S_a * b = S_{a*b}, so any m-AQ quandle passes.
    """
    family = MapFamily(family)
    if family not in HOMOTOPY_FAMILIES:
        raise ValueError(f"{family.value} is not a homotopy family")
    MapId(family, j).check(n)
    tuples = basis(Q, n, Theory.RACK, max_basis).tuples
    for x in tuples:
        lifted: Terms = {}
        _apply_into(lifted, 1, Q, profile, family, j, x)
        for i in range(1, j):
            deleted = _face_image(Q, lifted, i, True)
            acted = _face_image(Q, lifted, i, False)
            if deleted != acted:
                return FaceCheck(False, len(tuples), (x, i))
        for i in range(j + 1, n + 1):
            left = _face_image(Q, lifted, i + 1, False)
            right: Terms = {}
            _apply_into(right, 1, Q, profile, family, j, face_act(Q, x, i))
            if left != right:
                return FaceCheck(False, len(tuples), (x, i))
    return FaceCheck(True, len(tuples))


@dataclass
class CancellationReport:
    """Where the i = j+1 face of G stops collapsing to m(g1 - g0)"""

    n: int
    j: int
    tuples_checked: int
    witness: Optional[Chain] = None
    defect: Optional[FormalChain] = field(default=None, repr=False)

    @property
    def cancels(self) -> bool:
        return self.witness is None

    def to_dict(self) -> Dict:
        data = {
            "degree": self.n,
            "j": self.j,
            "tuples_checked": self.tuples_checked,
            "cancels": self.cancels,
        }
        if self.witness is not None:
            data["witness"] = [v + 1 for v in self.witness]
            data["defect"] = self.defect.to_list()
        return data


def cancellation_diagnostic(
    Q: QuandleTable,
    profile: AQProfile,
    n: int,
    j: int,
    max_basis: int = Defaults.MAX_BASIS,
) -> CancellationReport:
    """
    Compare d_{j+1}^* G_n^j(x) with m (g1^j - g0^j)(x) on every x.

    The two agree when stabilizers are trivial: the y in S_{x_j} terms give
    m (g1 - g0) and the others cancel in pairs. The first x where they
    differ is reported, which is how quandles such as the 4-AQ extension
    of R_3 fall outside the homotopy argument.
    """
    if profile is None:
        raise NotAQ(f"{Q!r} is not an m-almost quasigroup quandle")
    MapId(MapFamily.G, j).check(n)
    tuples = basis(Q, n, Theory.RACK, max_basis).tuples
    for x in tuples:
        lifted: Terms = {}
        _apply_into(lifted, 1, Q, profile, MapFamily.G, j, x)
        defect = _face_image(Q, lifted, j + 1, False)
        _apply_into(defect, -profile.m, Q, profile, MapFamily.G1, j, x)
        _apply_into(defect, profile.m, Q, profile, MapFamily.G0, j, x)
        if defect:
            return CancellationReport(
                n, j, len(tuples), x, FormalChain._wrap(n, defect)
            )
    return CancellationReport(n, j, len(tuples))


# =============================================================================
# Annihilation pipeline
# =============================================================================


@dataclass
class DegreeResult:
    degree: int
    identities: List[IdentityReport]
    groups: Dict[str, AbelianGroup]
    annihilated: bool

    @property
    def identities_passed(self) -> bool:
        return all(report.passed for report in self.identities)

    @property
    def passed(self) -> bool:
        return self.identities_passed and self.annihilated

    def to_dict(self) -> Dict:
        return {
            "degree": self.degree,
            "identities_checked": len(self.identities),
            "identities_passed": self.identities_passed,
            "failed_identities": [
                r.to_dict() for r in self.identities if not r.passed
            ],
            "homology": {
                theory: {**group.to_dict(), "text": str(group)}
                for theory, group in self.groups.items()
            },
            "annihilated": self.annihilated,
            "passed": self.passed,
        }


@dataclass
class AnnihilationReport:
    quandle: str
    size: int
    m: int
    N: int
    degrees: List[DegreeResult]
    inn_order: Optional[int] = None
    quasigroup_bound: Optional[bool] = None
    elapsed_ms: int = field(default=0, compare=False)

    @property
    def torsion_exponent(self) -> int:
        return lcm_of(
            group.exponent
            for result in self.degrees
            for group in result.groups.values()
        )

    @property
    def sharp(self) -> bool:
        """N equals the exponent of all computed torsion"""
        return self.N > 0 and self.torsion_exponent == self.N

    @property
    def inn_annihilates(self) -> Optional[bool]:
        if self.inn_order is None:
            return None
        return all(
            check_torsion_annihilated(group, self.inn_order)
            for result in self.degrees
            for group in result.groups.values()
        )

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.degrees)

    def to_dict(self) -> Dict:
        return {
            "quandle": self.quandle,
            "size": self.size,
            "m": self.m,
            "N": self.N,
            "degrees": [result.to_dict() for result in self.degrees],
            "torsion_exponent": self.torsion_exponent,
            "sharp": self.sharp,
            "inn_order": self.inn_order,
            "inn_annihilates": self.inn_annihilates,
            "quasigroup_bound": self.quasigroup_bound,
            "passed": self.passed,
            "elapsed_ms": self.elapsed_ms,
        }


def verify_annihilation_pipeline(
    Q: QuandleTable,
    profile: AQProfile,
    n_max: int,
    theories: Iterable = (Theory.RACK, Theory.QUANDLE),
    max_basis: int = Defaults.MAX_BASIS,
    jobs: int = Defaults.JOBS,
    max_group_order: Optional[int] = Defaults.MAX_GROUP_ORDER,
) -> AnnihilationReport:
    """
    Verify every identity up to n_max and check that N kills the torsion
    of H_0 .. H_n_max in each requested theory.

    Also records |Inn(X)| (None when max_group_order is None or exceeded),
    whether it annihilates the same torsion, and for quasigroups whether
    |X| does.

    Raises:
        HypothesisFail: If some stabilizer is not a trivial subquandle
    """
    started = time.perf_counter()
    require_trivial_stabilizers(Q, profile)
    N = profile.annihilation_bound
    complexes = [
        ChainComplex(Q, theory, max_basis, jobs) for theory in theories
    ]

    degrees = []
    for n in range(n_max + 1):
        identities = [
            verify_identity(Q, profile, family, n, j, max_basis, jobs)
            for family in (MapFamily.G, MapFamily.F, MapFamily.D, MapFamily.E)
            for j in family.j_range(n)
        ]
        groups = {c.theory.value: c.homology(n) for c in complexes}
        annihilated = all(
            check_torsion_annihilated(group, N) for group in groups.values()
        )
        degrees.append(DegreeResult(n, identities, groups, annihilated))
        logger.info(
            "Degree %d: %d identities %s, homology %s, annihilated by %d: %s",
            n,
            len(identities),
            "pass" if degrees[-1].identities_passed else "FAIL",
            ", ".join(f"{t}: {g}" for t, g in groups.items()),
            N,
            annihilated,
        )

    inn_order = None
    if max_group_order is not None:
        try:
            inn_order = inner_group(Q, max_group_order).order
        except GroupTooLarge as e:
            logger.warning("Skipping Inn order: %s", e)

    quasigroup_bound = None
    if is_quasigroup(Q):
        quasigroup_bound = all(
            check_torsion_annihilated(group, Q.size)
            for result in degrees
            for group in result.groups.values()
        )

    return AnnihilationReport(
        quandle=Q.name or f"size-{Q.size}",
        size=Q.size,
        m=profile.m,
        N=N,
        degrees=degrees,
        inn_order=inn_order,
        quasigroup_bound=quasigroup_bound,
        elapsed_ms=int((time.perf_counter() - started) * 1000),
    )
