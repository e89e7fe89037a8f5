"""
Error Codes and User-Facing Messages

This module maps the codes carried by qhk exceptions to a title and an
actionable suggestion, so the CLI can report failures uniformly in text
and JSON output.
"""

from dataclasses import dataclass
from typing import Dict, Optional


@dataclass
class ErrorInfo:
    """Information about an error with user guidance"""

    code: str
    title: str
    message: str
    suggestion: str


# Error code catalog
ERROR_CATALOG: Dict[str, ErrorInfo] = {
    # Operation tables (QHK-1xx)
    "QHK-100": ErrorInfo(
        code="QHK-100",
        title="Invalid Operation Table",
        message="The operation table is not a rack or quandle.",
        suggestion="Check the table file against the axioms; the message "
        "names the first violated axiom and a witness.",
    ),
    "QHK-101": ErrorInfo(
        code="QHK-101",
        title="Entry Out Of Range",
        message="A table entry is not an element of the set.",
        suggestion="Entries are 1-based: every value must lie in 1..n.",
    ),
    "QHK-102": ErrorInfo(
        code="QHK-102",
        title="Column Not A Permutation",
        message="A right translation x -> x*b is not invertible.",
        suggestion="Every column of the table must list each element "
        "exactly once.",
    ),
    "QHK-103": ErrorInfo(
        code="QHK-103",
        title="Distributivity Fails",
        message="(a*b)*c differs from (a*c)*(b*c) for some triple.",
        suggestion="Recheck the rows of the witness triple; a single "
        "transcription error usually shows up here.",
    ),
    "QHK-104": ErrorInfo(
        code="QHK-104",
        title="Idempotency Fails",
        message="a*a differs from a for some element.",
        suggestion="Load the table as a rack (--rack) if it is not meant "
        "to be a quandle.",
    ),
    "QHK-105": ErrorInfo(
        code="QHK-105",
        title="Quandle Required",
        message="The requested operation only applies to quandles.",
        suggestion="Degenerate and quandle complexes need idempotency; "
        "use the rack theory (R) for racks.",
    ),
    "QHK-106": ErrorInfo(
        code="QHK-106",
        title="Not m-Almost Quasigroup",
        message="The quandle is not m-almost quasigroup.",
        suggestion="Run 'check' to see the stabilizer sizes and the "
        "equations a*x=b that fail unique solvability.",
    ),
    "QHK-107": ErrorInfo(
        code="QHK-107",
        title="Group Too Large",
        message="The inner automorphism group exceeds the order cap.",
        suggestion="Raise budget.max_group_order in the configuration.",
    ),
    "QHK-108": ErrorInfo(
        code="QHK-108",
        title="Size Mismatch",
        message="The two quandles have different sizes.",
        suggestion="Only quandles of equal size can be isomorphic.",
    ),
    "QHK-109": ErrorInfo(
        code="QHK-109",
        title="Search Budget Exceeded",
        message="The isomorphism search ran out of budget.",
        suggestion="Raise budget.isomorphism_max_size or "
        "budget.isomorphism_max_nodes.",
    ),
    "QHK-110": ErrorInfo(
        code="QHK-110",
        title="Quasigroup Required",
        message="The operation needs a quasigroup (Latin) quandle.",
        suggestion="Every row of the table must be a permutation; run "
        "'check' to see the quasigroup flag.",
    ),
    # Constructors (QHK-2xx)
    "QHK-200": ErrorInfo(
        code="QHK-200",
        title="Invalid Construction Parameters",
        message="A builtin constructor rejected its parameters.",
        suggestion="Sizes and cyclic orders must be positive integers; "
        "see the details for the offending value.",
    ),
    "QHK-201": ErrorInfo(
        code="QHK-201",
        title="Non-Unit Parameter",
        message="The Alexander parameter t is not invertible modulo n.",
        suggestion="Pick t with gcd(t, n) = 1.",
    ),
    "QHK-202": ErrorInfo(
        code="QHK-202",
        title="Bad Partition",
        message="The cycle type is not a partition of the degree.",
        suggestion="Include the fixed points: e.g. conjclass:5,[2,2,1].",
    ),
    "QHK-203": ErrorInfo(
        code="QHK-203",
        title="Unknown Builtin",
        message="The builtin spec could not be parsed.",
        suggestion="Use family:params, e.g. dihedral:7, alexander:8,3, "
        "takasaki:2,2, conjclass:5,[2,2,1] or trivial:4.",
    ),
    # Cocycles (QHK-3xx)
    "QHK-300": ErrorInfo(
        code="QHK-300",
        title="Invalid Cocycle",
        message="The dynamical cocycle does not fit its base quandle.",
        suggestion="Give one fiber-size grid for every pair (a, b) of base "
        "elements, with entries in 1..fiber.",
    ),
    "QHK-301": ErrorInfo(
        code="QHK-301",
        title="Cocycle Identity Condition Fails",
        message="alpha_(a,a)(s,s) differs from s.",
        suggestion="The diagonal of every alpha_(a,a) grid must be the "
        "identity.",
    ),
    "QHK-302": ErrorInfo(
        code="QHK-302",
        title="Cocycle Bijection Condition Fails",
        message="A column of some alpha_(a,b) grid is not a permutation.",
        suggestion="For fixed a, b, t the values alpha_(a,b)(s,t) must be "
        "distinct.",
    ),
    "QHK-303": ErrorInfo(
        code="QHK-303",
        title="Cocycle Condition Fails",
        message="The dynamical cocycle identity fails.",
        suggestion="Recheck the grids named by the witness indices.",
    ),
    # Chain engine (QHK-4xx)
    "QHK-401": ErrorInfo(
        code="QHK-401",
        title="Budget Exceeded",
        message="The computation exceeds the configured budget.",
        suggestion="Lower --max-dim or raise the budget with --budget or "
        "QHK_BUDGET.",
    ),
    "QHK-402": ErrorInfo(
        code="QHK-402",
        title="Degree Too Large",
        message="The chain basis at this degree exceeds the budget.",
        suggestion="Lower --max-dim or raise the budget with --budget or "
        "QHK_BUDGET.",
    ),
    "QHK-403": ErrorInfo(
        code="QHK-403",
        title="Chain Complex Broken",
        message="A chain complex invariant failed while building.",
        suggestion="The table is probably not a quandle; validate it "
        "first with 'check'.",
    ),
    # Homotopy lab (QHK-5xx)
    "QHK-501": ErrorInfo(
        code="QHK-501",
        title="Hypothesis Fails",
        message="Some stabilizer set is not a trivial subquandle.",
        suggestion="Homotopy identities need trivial stabilizers; run "
        "'check' for the cancellation diagnostic.",
    ),
    "QHK-502": ErrorInfo(
        code="QHK-502",
        title="Bad Index",
        message="Position j is outside the family's range.",
        suggestion="F and E need 2 <= j <= n; the other families "
        "1 <= j <= n (gs also allows j = 0).",
    ),
    # Input / configuration (QHK-6xx)
    "QHK-601": ErrorInfo(
        code="QHK-601",
        title="Configuration Error",
        message="The configuration file is missing or invalid.",
        suggestion="Copy qhk.yaml.example to qhk.yaml and edit it, or "
        "omit --config to use defaults.",
    ),
    "QHK-602": ErrorInfo(
        code="QHK-602",
        title="Parse Error",
        message="The input file could not be parsed.",
        suggestion="Line 1 holds n; the next n lines hold n 1-based "
        "entries each. Lines starting with '#' are comments.",
    ),
}


def get_error_info(error_code: str) -> Optional[ErrorInfo]:
    """
    Get error information by code.

    Args:
        error_code: Error code (e.g., "QHK-103")

    Returns:
        ErrorInfo object or None if code not found
    """
    return ERROR_CATALOG.get(error_code)


def format_error_message(
    error_code: str, context: Optional[str] = None
) -> str:
    """
    Format an error message with code, title and suggestion.

    Args:
        error_code: Error code (e.g., "QHK-103")
        context: Optional details, usually str(exception)

    Returns:
        Formatted error message
    """
    error_info = get_error_info(error_code)

    if not error_info:
        message = f"Error {error_code}: an unexpected error occurred."
        if context:
            message += f"\nDetails: {context}"
        return message

    message = f"{error_info.code}: {error_info.title}\n"
    message += f"{error_info.message}\n"
    if context:
        message += f"Details: {context}\n"
    message += f"Suggestion: {error_info.suggestion}"
    return message


def get_error_dict(
    error_code: str, context: Optional[str] = None
) -> Dict[str, str]:
    """
    Get error information as a dictionary for JSON reports.

    Args:
        error_code: Error code (e.g., "QHK-103")
        context: Optional details, usually str(exception)

    Returns:
        Dictionary with error information
    """
    error_info = get_error_info(error_code)

    if not error_info:
        return {
            "error_code": error_code,
            "title": "Unknown Error",
            "message": "An unexpected error occurred.",
            "suggestion": "Rerun with --log-level DEBUG for details.",
            "context": context or "",
        }

    return {
        "error_code": error_info.code,
        "title": error_info.title,
        "message": error_info.message,
        "suggestion": error_info.suggestion,
        "context": context or "",
    }
