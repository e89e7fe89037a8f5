"""
File formats

Quandle tables:

    # comment lines and blank lines are ignored
    n
    a*1 a*2 ... a*n      (one row per a, 1-based)

Cocycles:

    base <table path or builtin spec>   (paths relative to the cocycle file)
    fiber <|S|>
    a b  alpha(1,1) ... alpha(1,|S|)  alpha(2,1) ... alpha(|S|,|S|)

with one line per pair (a, b) and the |S| x |S| grid listed row by row
(row s, column t). Matrices are exported as a "rows cols nnz" header
followed by 1-based "i j v" lines.
"""

import json
import logging
import os
import sys
from typing import Any, Dict, List, Optional, Tuple

import yaml

from .constants import OutputFormat
from .exceptions import QhkError, TableParseError
from .extension import CocycleSpec, make_cocycle_spec
from .quandle import QuandleTable, validate_table
from .registry import default_registry
from .sparse import SparseIntMatrix

logger = logging.getLogger(__name__)


def _content_lines(text: str) -> List[Tuple[int, str]]:
    """(line number, stripped text) for every non-comment, non-blank line"""
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((number, line))
    return lines


def _integers(
    line: str, number: int, path: Optional[str]
) -> List[int]:
    try:
        return [int(token) for token in line.split()]
    except ValueError:
        raise TableParseError(
            f"expected integers, got '{line}'", line=number, path=path
        )


# =============================================================================
# Quandle tables
# =============================================================================


def parse_table(
    text: str, path: Optional[str] = None, kind="quandle", name: str = ""
) -> QuandleTable:
    """
    Parse the 1-based table format and validate the result.

    Raises:
        TableParseError: Malformed file, with the offending line number
        TableValidationError: Well-formed table that fails an axiom
    """
    lines = _content_lines(text)
    if not lines:
        raise TableParseError(
            "empty file: expected the size n", line=1, path=path
        )
    number, header = lines[0]
    values = _integers(header, number, path)
    if len(values) != 1 or values[0] < 1:
        raise TableParseError(
            f"first line must hold the size n >= 1, got '{header}'",
            line=number,
            path=path,
        )
    n = values[0]
    rows = lines[1:]
    if len(rows) < n:
        last = rows[-1][0] if rows else number
        raise TableParseError(
            f"expected {n} rows, found {len(rows)}: row {len(rows) + 1} "
            "is missing",
            line=last + 1,
            path=path,
        )
    if len(rows) > n:
        raise TableParseError(
            f"unexpected content after {n} rows", line=rows[n][0], path=path
        )

    grid = []
    for a, (number, line) in enumerate(rows):
        row = _integers(line, number, path)
        if len(row) != n:
            raise TableParseError(
                f"row {a + 1} has {len(row)} entries, expected {n}",
                line=number,
                path=path,
            )
        grid.append([value - 1 for value in row])

    if not name and path:
        name = os.path.splitext(os.path.basename(path))[0]
    return validate_table(grid, kind, name=name)


def load_table(path: str, kind="quandle") -> QuandleTable:
    """Read and validate a table file"""
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    table = parse_table(text, path=path, kind=kind)
    logger.debug("Loaded %r from %s", table, path)
    return table


def format_table(Q: QuandleTable) -> str:
    width = len(str(Q.size))
    lines = []
    if Q.name:
        lines.append(f"# {Q.name}")
    lines.append(str(Q.size))
    for row in Q.to_lists(one_based=True):
        lines.append(" ".join(str(v).rjust(width) for v in row))
    return "\n".join(lines) + "\n"


def save_table(Q: QuandleTable, path: str) -> None:
    _write(path, format_table(Q))


# =============================================================================
# Cocycles
# =============================================================================


def _resolve_base(
    ref: str, number: int, path: Optional[str]
) -> QuandleTable:
    registry = default_registry()
    family = ref.partition(":")[0].strip().lower()
    if family in registry:
        return registry.build(ref)
    base_path = ref
    if path and not os.path.isabs(ref):
        base_path = os.path.join(os.path.dirname(path), ref)
    if not os.path.exists(base_path):
        raise TableParseError(
            f"base '{ref}' is neither a builtin spec nor an existing file",
            line=number,
            path=path,
        )
    return load_table(base_path)


def parse_cocycle(text: str, path: Optional[str] = None) -> CocycleSpec:
    """
    Parse a cocycle file into a CocycleSpec (not yet validated).

    Raises:
        TableParseError: Malformed file, with the offending line number
    """
    lines = _content_lines(text)
    header: Dict[str, Tuple[int, str]] = {}
    body = []
    for number, line in lines:
        key, _, value = line.partition(" ")
        if key in ("base", "fiber", "fiber-name") and not body:
            header[key] = (number, value.strip())
        else:
            body.append((number, line))

    for key in ("base", "fiber"):
        if key not in header:
            raise TableParseError(
                f"missing '{key}' header line",
                line=lines[0][0] if lines else 1,
                path=path,
            )
    number, ref = header["base"]
    base = _resolve_base(ref, number, path)
    number, fiber_text = header["fiber"]
    try:
        fiber = int(fiber_text)
    except ValueError:
        fiber = 0
    if fiber < 1:
        raise TableParseError(
            f"fiber size must be a positive integer, got '{fiber_text}'",
            line=number,
            path=path,
        )

    n = base.size
    alpha: List[List[Optional[List[List[int]]]]] = [
        [None] * n for _ in range(n)
    ]
    for number, line in body:
        values = _integers(line, number, path)
        if len(values) != 2 + fiber * fiber:
            raise TableParseError(
                f"expected a b and {fiber * fiber} grid values",
                line=number,
                path=path,
            )
        a, b = values[0] - 1, values[1] - 1
        if not (0 <= a < n and 0 <= b < n):
            raise TableParseError(
                f"pair ({a + 1},{b + 1}) is outside 1..{n}",
                line=number,
                path=path,
            )
        if alpha[a][b] is not None:
            raise TableParseError(
                f"pair ({a + 1},{b + 1}) listed twice",
                line=number,
                path=path,
            )
        grid = [v - 1 for v in values[2:]]
        alpha[a][b] = [
            grid[s * fiber : (s + 1) * fiber] for s in range(fiber)
        ]

    for a in range(n):
        for b in range(n):
            if alpha[a][b] is None:
                last = body[-1][0] if body else number
                raise TableParseError(
                    f"missing grid for pair ({a + 1},{b + 1})",
                    line=last + 1,
                    path=path,
                )
    fiber_name = header.get("fiber-name", (0, ""))[1]
    try:
        return make_cocycle_spec(base, fiber, alpha, fiber_name)
    except QhkError as e:
        raise TableParseError(str(e), path=path)


def load_cocycle(path: str) -> CocycleSpec:
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    return parse_cocycle(text, path=path)


def format_cocycle(spec: CocycleSpec, base_ref: str) -> str:
    lines = [f"base {base_ref}", f"fiber {spec.fiber_size}"]
    if spec.fiber_name:
        lines.append(f"fiber-name {spec.fiber_name}")
    for a in spec.base.elements:
        for b in spec.base.elements:
            values = [
                str(v + 1) for row in spec.alpha[a][b] for v in row
            ]
            lines.append(f"{a + 1} {b + 1} " + " ".join(values))
    return "\n".join(lines) + "\n"


def save_cocycle(spec: CocycleSpec, path: str, base_ref: str) -> None:
    _write(path, format_cocycle(spec, base_ref))


# =============================================================================
# Reports and matrices
# =============================================================================


def _payload(report: Any) -> Any:
    if hasattr(report, "to_dict"):
        return report.to_dict()
    if isinstance(report, (list, tuple)):
        return [_payload(item) for item in report]
    return report


def render_report(report: Any, fmt=OutputFormat.TEXT) -> str:
    """
    Serialize a report (dict, list or object with to_dict).

    JSON output is key-sorted so reruns are byte-identical apart from
    elapsed_ms; text output is the same data as block YAML.
    """
    fmt = OutputFormat(fmt)
    payload = _payload(report)
    if fmt is OutputFormat.JSON:
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if isinstance(payload, str):
        return payload if payload.endswith("\n") else payload + "\n"
    return yaml.safe_dump(
        payload, sort_keys=False, default_flow_style=None, width=79
    )


def save_report(
    report: Any, path: Optional[str], fmt=OutputFormat.TEXT
) -> None:
    """Write a report to path, or stdout for None / '-'"""
    _write(path, render_report(report, fmt))


def format_matrix(M: SparseIntMatrix) -> str:
    entries = M.entries()
    lines = [f"{M.rows} {M.cols} {len(entries)}"]
    lines.extend(f"{i + 1} {j + 1} {v}" for i, j, v in entries)
    return "\n".join(lines) + "\n"


def parse_matrix(text: str, path: Optional[str] = None) -> SparseIntMatrix:
    lines = _content_lines(text)
    if not lines:
        raise TableParseError("empty matrix file", line=1, path=path)
    number, header = lines[0]
    values = _integers(header, number, path)
    if len(values) != 3:
        raise TableParseError(
            "header must be 'rows cols nnz'", line=number, path=path
        )
    rows, cols, nnz = values
    if len(lines) - 1 != nnz:
        raise TableParseError(
            f"expected {nnz} entries, found {len(lines) - 1}",
            line=lines[-1][0],
            path=path,
        )
    entries = []
    for number, line in lines[1:]:
        triple = _integers(line, number, path)
        if len(triple) != 3:
            raise TableParseError(
                "entry must be 'i j v'", line=number, path=path
            )
        entries.append((triple[0] - 1, triple[1] - 1, triple[2]))
    return SparseIntMatrix.from_entries(rows, cols, entries)


def save_matrix(M: SparseIntMatrix, path: Optional[str]) -> None:
    _write(path, format_matrix(M))


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    logger.debug("Wrote %s", path)
