"""
Constants and Enumerations

This module provides a single source of truth for theory names, homotopy
families and the default computation budgets used throughout the package.
"""

from enum import Enum
from typing import Dict

# =============================================================================
# Chain complex theories
# =============================================================================


class Theory(str, Enum):
    """Rack, degenerate and quandle chain complexes"""

    RACK = "R"
    DEGENERATE = "D"
    QUANDLE = "Q"

    @classmethod
    def parse(cls, value) -> "Theory":
        """
        Normalize a theory name to a Theory member.

        Accepts the one-letter codes and the long names in any case.

        Args:
            value: Theory member, "R"/"D"/"Q" or "rack"/"degenerate"/"quandle"

        Returns:
            The matching Theory

        Raises:
            ValueError: If the name is not recognized
        """
        if isinstance(value, cls):
            return value
        text = str(value).strip().upper()
        for member in cls:
            if text in (member.value, member.name):
                return member
        raise ValueError(f"Unknown theory '{value}' (expected R, D or Q)")

    @property
    def needs_quandle(self) -> bool:
        """Degenerate and quandle complexes only exist for quandles"""
        return self is not Theory.RACK


# =============================================================================
# Homotopy families
# =============================================================================


class MapFamily(str, Enum):
    """Chain maps (degree preserving) and chain homotopies (degree + 1)"""

    G0 = "g0"
    G1 = "g1"
    G2 = "g2"
    GS = "gs"
    G = "G"
    F = "F"
    D = "D"
    E = "E"

    @property
    def is_homotopy(self) -> bool:
        return self in HOMOTOPY_FAMILIES

    def j_range(self, degree: int) -> range:
        """Valid positions j for this family on tuples of the given degree"""
        low = MAP_FAMILY_MIN_J[self]
        return range(low, degree + 1)


HOMOTOPY_FAMILIES = frozenset(
    {MapFamily.G, MapFamily.F, MapFamily.D, MapFamily.E}
)

# Smallest admissible j per family; the largest is always the degree.
MAP_FAMILY_MIN_J: Dict[MapFamily, int] = {
    MapFamily.G0: 1,
    MapFamily.G1: 1,
    MapFamily.G2: 1,
    MapFamily.GS: 0,
    MapFamily.G: 1,
    MapFamily.F: 2,
    MapFamily.D: 1,
    MapFamily.E: 2,
}


# =============================================================================
# Defaults
# =============================================================================


class Defaults:
    """Default budgets (all overridable through Config / CLI flags)"""

    MAX_BASIS = 2_000_000
    MAX_GROUP_ORDER = 10**7
    ISOMORPHISM_MAX_SIZE = 16
    ISOMORPHISM_MAX_NODES = 1_000_000
    JOBS = 1

    # Environment variable overriding MAX_BASIS
    BUDGET_ENV_VAR = "QHK_BUDGET"


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


class ExitStatus:
    """CLI exit codes"""

    OK = 0
    CHECK_FAILED = 1
    USAGE = 2

