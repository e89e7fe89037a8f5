"""
Custom Exception Classes

This module defines the exceptions raised across qhk. Every error keeps
its witness data as attributes (0-based, as used internally) and names it
in the message with 1-based labels, matching the table file format.
"""

from typing import Optional, Sequence, Tuple


def _label(x: int) -> int:
    return x + 1


def _labels(xs: Sequence[int]) -> Tuple[int, ...]:
    return tuple(_label(x) for x in xs)


class QhkError(Exception):
    """Base exception for all qhk errors"""

    #: Error catalog code, see qhk.error_codes
    code: str = "QHK-000"


class ConfigurationError(QhkError):
    """Raised when configuration is invalid or missing"""

    code = "QHK-601"

    def __init__(self, message: str, config_key: str = None):
        """
        Initialize configuration error.

        Args:
            message: Error description
            config_key: The configuration key that caused the error
        """
        self.config_key = config_key
        if config_key:
            message = f"Configuration error for '{config_key}': {message}"
        super().__init__(message)


# =============================================================================
# Operation tables
# =============================================================================


class TableValidationError(QhkError):
    """Raised when an operation table violates a rack/quandle axiom"""

    code = "QHK-100"
    axiom: str = "table"


class OutOfRangeEntry(TableValidationError):
    """An entry of the table is not an element of {0, ..., n-1}"""

    code = "QHK-101"
    axiom = "range"

    def __init__(self, a: int, b: int, value, size: int):
        self.a = a
        self.b = b
        self.value = value
        self.size = size
        super().__init__(
            f"Entry ({_label(a)},{_label(b)}) = {value!r} is not an "
            f"element of 1..{size}"
        )


class NotAPermutationColumn(TableValidationError):
    """The right translation x -> x*b is not a bijection"""

    code = "QHK-102"
    axiom = "invertibility"

    def __init__(self, b: int, repeated: Optional[int] = None):
        self.b = b
        self.repeated = repeated
        detail = ""
        if repeated is not None:
            detail = f" (value {_label(repeated)} appears twice)"
        super().__init__(
            f"Column {_label(b)} is not a permutation{detail}: "
            f"x -> x*{_label(b)} is not invertible"
        )


class DistributivityFail(TableValidationError):
    """(a*b)*c != (a*c)*(b*c) for the witness triple"""

    code = "QHK-103"
    axiom = "right self-distributivity"

    def __init__(self, a: int, b: int, c: int):
        self.a = a
        self.b = b
        self.c = c
        super().__init__(
            "Right self-distributivity fails for "
            f"(a,b,c) = {_labels((a, b, c))}"
        )


class IdempotencyFail(TableValidationError):
    """a*a != a"""

    code = "QHK-104"
    axiom = "idempotency"

    def __init__(self, a: int):
        self.a = a
        super().__init__(
            f"Idempotency fails: {_label(a)}*{_label(a)} != "
            f"{_label(a)}"
        )


class NotAQuandle(QhkError):
    """Raised when a quandle-only operation receives a rack"""

    code = "QHK-105"

    def __init__(self, operation: str):
        self.operation = operation
        super().__init__(f"{operation} requires a quandle, got a rack")


class NotAQ(QhkError):
    """Raised when an operation needs an m-almost quasigroup quandle"""

    code = "QHK-106"

    def __init__(self, message: str = "quandle is not m-almost quasigroup"):
        super().__init__(message)


class NotQuasigroup(QhkError):
    """Raised when an operation needs a quasigroup quandle"""

    code = "QHK-110"

    def __init__(self, a: int = None):
        self.a = a
        detail = ""
        if a is not None:
            detail = f": x -> {_label(a)}*x is not a permutation"
        super().__init__(f"Quandle is not a quasigroup{detail}")


class GroupTooLarge(QhkError):
    """Raised when a generated permutation group exceeds the order cap"""

    code = "QHK-107"

    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"Group order exceeds the cap of {cap} elements")


class SizeMismatch(QhkError):
    """Raised when comparing quandles of different sizes"""

    code = "QHK-108"

    def __init__(self, size1: int, size2: int):
        self.size1 = size1
        self.size2 = size2
        super().__init__(
            f"Cannot compare quandles of sizes {size1} and "
            f"{size2}"
        )


class SearchBudgetExceeded(QhkError):
    """Raised when the isomorphism search is out of budget"""

    code = "QHK-109"

    def __init__(self, message: str):
        super().__init__(message)


# =============================================================================
# Constructors
# =============================================================================


class ConstructionError(QhkError):
    """Raised when a builtin constructor receives bad parameters"""

    code = "QHK-200"


class NonUnitParameter(ConstructionError):
    """Alexander parameter t is not a unit modulo n"""

    code = "QHK-201"

    def __init__(self, t: int, n: int):
        self.t = t
        self.n = n
        super().__init__(
            f"t = {t} is not a unit modulo {n}: "
            "right translations would not be invertible"
        )


class BadPartition(ConstructionError):
    """Cycle type is not a partition of the symmetric degree"""

    code = "QHK-202"

    def __init__(self, degree: int, cycle_type: Sequence[int]):
        self.degree = degree
        self.cycle_type = tuple(cycle_type)
        super().__init__(
            f"Cycle type {list(cycle_type)} is not a partition "
            f"of {degree}"
        )


class UnknownBuiltin(ConstructionError):
    """Builtin spec does not name a known family or has bad parameters"""

    code = "QHK-203"

    def __init__(self, spec: str, reason: str):
        self.spec = spec
        self.reason = reason
        super().__init__(f"Bad builtin spec '{spec}': {reason}")


# =============================================================================
# Dynamical cocycles
# =============================================================================


class CocycleError(QhkError):
    """Raised when a dynamical cocycle violates one of its conditions"""

    code = "QHK-300"
    condition: str = "cocycle"


class IdentityCondFail(CocycleError):
    """alpha_{a,a}(s,s) != s"""

    code = "QHK-301"
    condition = "identity"

    def __init__(self, a: int, s: int):
        self.a = a
        self.s = s
        super().__init__(
            f"alpha_(a,a)(s,s) != s for a = {_label(a)}, s = {_label(s)}"
        )


class BijectionCondFail(CocycleError):
    """s -> alpha_{a,b}(s,t) is not a bijection"""

    code = "QHK-302"
    condition = "bijection"

    def __init__(self, a: int, b: int, t: int):
        self.a = a
        self.b = b
        self.t = t
        super().__init__(
            f"s -> alpha_(a,b)(s,t) is not a bijection for "
            f"(a,b,t) = {_labels((a, b, t))}"
        )


class CocycleCondFail(CocycleError):
    """The cocycle identity fails for the witness indices"""

    code = "QHK-303"
    condition = "cocycle"

    def __init__(self, a: int, b: int, c: int, s: int, t: int, u: int):
        self.a, self.b, self.c = a, b, c
        self.s, self.t, self.u = s, t, u
        super().__init__(
            "Cocycle condition fails for "
            f"(a,b,c) = {_labels((a, b, c))}, "
            f"(s,t,u) = {_labels((s, t, u))}"
        )


# =============================================================================
# Chain engine
# =============================================================================


class BudgetExceeded(QhkError):
    """Raised when a computation would exceed the configured budget"""

    code = "QHK-401"

    def __init__(
        self, message: str, required: int = None, budget: int = None
    ):
        self.required = required
        self.budget = budget
        super().__init__(message)


class DegreeTooLarge(BudgetExceeded):
    """Basis enumeration at this degree exceeds the memory budget"""

    code = "QHK-402"

    def __init__(self, degree: int, required: int, budget: int):
        self.degree = degree
        super().__init__(
            f"Degree {degree} needs {required} basis tuples, over the "
            f"budget of {budget}",
            required=required,
            budget=budget,
        )


class ChainComplexError(QhkError):
    """Raised when a chain complex invariant is broken while building"""

    code = "QHK-403"


# =============================================================================
# Homotopy lab
# =============================================================================


class HypothesisFail(QhkError):
    """Stabilizer sets are not trivial subquandles"""

    code = "QHK-501"

    def __init__(self, a: int):
        self.a = a
        super().__init__(
            f"Stabilizer set of {_label(a)} is not a trivial subquandle; "
            "the homotopy identities are only claimed when every "
            "stabilizer is trivial"
        )


class BadIndex(QhkError):
    """Position j is outside the range allowed for a map family"""

    code = "QHK-502"

    def __init__(self, family: str, j: int, degree: int):
        self.family = family
        self.j = j
        self.degree = degree
        super().__init__(
            f"j = {j} is out of range for {family} on "
            f"degree {degree}"
        )


# =============================================================================
# Input / output
# =============================================================================


class TableParseError(QhkError):
    """Raised when a table or cocycle file cannot be parsed"""

    code = "QHK-602"

    def __init__(self, message: str, line: int = None, path: str = None):
        self.line = line
        self.path = path
        where = ""
        if path:
            where = f"{path}:"
        if line is not None:
            where = f"{where}line {line}: "
        elif where:
            where = f"{where} "
        super().__init__(f"{where}{message}")
