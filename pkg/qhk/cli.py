"""
Command-line interface

    qhk check        FILE | --builtin SPEC
    qhk homology     FILE | --builtin SPEC --theory T --max-dim N [--mod P]
    qhk verify-homotopies FILE | --builtin SPEC --max-dim N
    qhk annihilation FILE | --builtin SPEC --max-dim N
    qhk extend       --cocycle FILE [--compare TABLE]
    qhk export-matrix FILE | --builtin SPEC --dim N --theory {R,D,Q}

Exit status: 0 when every requested check passes, 1 when a check or a
validation fails, 2 for usage errors.
"""

import argparse
import logging
import math
import sys
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import __version__
from .config import Config
from .constants import Defaults, ExitStatus, OutputFormat, Theory
from .error_codes import format_error_message, get_error_dict
from .exceptions import (
    ConfigurationError,
    GroupTooLarge,
    QhkError,
    UnknownBuiltin,
)
from .extension import extend
from .homology import (
    ChainComplex,
    homology_reports,
    rank_prediction,
)
from .homotopy import (
    cancellation_diagnostic,
    require_trivial_stabilizers,
    verify_all_identities,
    verify_annihilation_pipeline,
)
from .isomorphism import are_isomorphic
from .logging_config import log_exception, setup_logging_from_config
from .permutation_group import inner_group
from .quandle import (
    QuandleTable,
    aq_profile,
    is_quasigroup,
    lemma_checks,
    orbits,
)
from .registry import default_registry
from .table_io import (
    format_matrix,
    format_table,
    load_cocycle,
    load_table,
    save_report,
)

logger = logging.getLogger(__name__)


class Command(str, Enum):
    CHECK = "check"
    HOMOLOGY = "homology"
    VERIFY_HOMOTOPIES = "verify-homotopies"
    ANNIHILATION = "annihilation"
    EXTEND = "extend"
    EXPORT_MATRIX = "export-matrix"

    @property
    def needs_quandle_input(self) -> bool:
        return self is not Command.EXTEND


@dataclass
class ValidationResult:
    """Result of a validation operation"""

    valid: bool
    error: Optional[str] = None
    warnings: Optional[List[str]] = None

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {"valid": self.valid}
        if self.error:
            result["error"] = self.error
        if self.warnings:
            result["warnings"] = self.warnings
        return result


@dataclass
class RunConfig:
    """One CLI invocation after argument parsing"""

    command: Command
    input_path: Optional[str] = None
    builtin: Optional[str] = None
    rack: bool = False
    theory: Theory = Theory.RACK
    max_dim: int = 2
    modulus: Optional[int] = None
    cocycle_path: Optional[str] = None
    compare_path: Optional[str] = None
    output_format: OutputFormat = OutputFormat.TEXT
    output_path: Optional[str] = None
    max_basis: int = Defaults.MAX_BASIS
    max_group_order: int = Defaults.MAX_GROUP_ORDER
    isomorphism_max_size: int = Defaults.ISOMORPHISM_MAX_SIZE
    isomorphism_max_nodes: int = Defaults.ISOMORPHISM_MAX_NODES
    jobs: int = Defaults.JOBS
    warnings: List[str] = field(default_factory=list)

    def validate(self) -> ValidationResult:
        """Check flag combinations argparse cannot express"""
        warnings = []
        if self.command.needs_quandle_input:
            if (self.input_path is None) == (self.builtin is None):
                return ValidationResult(
                    False, "give exactly one input: a table FILE or --builtin"
                )
        elif self.cocycle_path is None:
            return ValidationResult(False, "extend needs --cocycle FILE")
        if self.max_dim < 1:
            return ValidationResult(
                False, f"degree bound must be >= 1, got {self.max_dim}"
            )
        if self.modulus is not None and not _is_prime(self.modulus):
            return ValidationResult(
                False, f"--mod needs a prime, got {self.modulus}"
            )
        if self.jobs < 1:
            return ValidationResult(False, "--jobs must be >= 1")
        if self.max_basis < 1:
            return ValidationResult(False, "--budget must be >= 1")
        if self.rack and self.theory.needs_quandle:
            warnings.append(
                f"theory {self.theory.value} needs a quandle; the table "
                "will be rejected if it is only a rack"
            )
        return ValidationResult(True, warnings=warnings or None)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, math.isqrt(p) + 1))


# =============================================================================
# Argument parsing
# =============================================================================


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qhk",
        description="Quandle homology kit: classify finite quandles, "
        "compute rack/quandle homology and verify torsion bounds",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    parser.add_argument(
        "--config",
        default=None,
        help="Path to a qhk.yaml configuration file (default: built-in "
        "defaults)",
    )
    parser.add_argument(
        "--budget",
        type=int,
        default=None,
        help="Largest chain basis to enumerate (overrides QHK_BUDGET)",
    )
    parser.add_argument(
        "--jobs", type=int, default=None, help="Worker processes"
    )
    parser.add_argument(
        "--log-level",
        default=None,
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="Logging level (logs go to stderr)",
    )
    parser.add_argument(
        "--format",
        dest="output_format",
        default=None,
        choices=[f.value for f in OutputFormat],
        help="Report format (default: text)",
    )
    parser.add_argument(
        "--output", default=None, help="Write the report here, not stdout"
    )

    commands = parser.add_subparsers(dest="command", required=True)

    def with_input(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("input", nargs="?", help="Quandle table file")
        sub.add_argument(
            "--builtin",
            default=None,
            help="Builtin quandle, e.g. dihedral:7, alexander:8,3, "
            "takasaki:3,3, conjclass:5,[2,2,1], trivial:4",
        )
        sub.add_argument(
            "--rack",
            action="store_true",
            help="Validate the table as a rack only",
        )

    check = commands.add_parser(
        Command.CHECK.value, help="Validate and classify a quandle"
    )
    with_input(check)

    homology = commands.add_parser(
        Command.HOMOLOGY.value, help="Compute H_0 .. H_max-dim"
    )
    with_input(homology)
    homology.add_argument(
        "--theory", default="R", type=Theory.parse, help="R, D or Q"
    )
    homology.add_argument("--max-dim", type=int, default=2)
    homology.add_argument(
        "--mod",
        dest="modulus",
        type=int,
        default=None,
        help="Use Z_p coefficients",
    )

    for name, text in (
        (Command.VERIFY_HOMOTOPIES, "Check every homotopy identity"),
        (Command.ANNIHILATION, "Identities plus torsion annihilation"),
    ):
        sub = commands.add_parser(name.value, help=text)
        with_input(sub)
        sub.add_argument("--max-dim", type=int, default=2)

    ext = commands.add_parser(
        Command.EXTEND.value, help="Extend a quandle by a dynamical cocycle"
    )
    ext.add_argument("--cocycle", dest="cocycle_path", required=True)
    ext.add_argument(
        "--compare",
        dest="compare_path",
        default=None,
        help="Check the extension is isomorphic to this table file",
    )

    export = commands.add_parser(
        Command.EXPORT_MATRIX.value,
        help="Export a boundary matrix in coordinate format",
    )
    with_input(export)
    export.add_argument("--dim", dest="max_dim", type=int, required=True)
    export.add_argument(
        "--theory", default="R", type=Theory.parse, help="R, D or Q"
    )
    return parser


def make_run_config(args: argparse.Namespace, config: Config) -> RunConfig:
    """Merge parsed arguments over the configuration file values"""
    config.override("max_basis", args.budget)
    config.override("jobs", args.jobs)
    config.override("log_level", args.log_level)
    config.override("output_format", args.output_format)
    return RunConfig(
        command=Command(args.command),
        input_path=getattr(args, "input", None),
        builtin=getattr(args, "builtin", None),
        rack=getattr(args, "rack", False),
        theory=getattr(args, "theory", Theory.RACK),
        max_dim=getattr(args, "max_dim", 2),
        modulus=getattr(args, "modulus", None),
        cocycle_path=getattr(args, "cocycle_path", None),
        compare_path=getattr(args, "compare_path", None),
        output_format=OutputFormat(config.output_format),
        output_path=args.output,
        max_basis=config.max_basis,
        max_group_order=config.max_group_order,
        isomorphism_max_size=config.isomorphism_max_size,
        isomorphism_max_nodes=config.isomorphism_max_nodes,
        jobs=config.jobs,
    )


# =============================================================================
# Commands
# =============================================================================


def load_input(run: RunConfig) -> QuandleTable:
    kind = "rack" if run.rack else "quandle"
    if run.builtin is not None:
        return default_registry().build(run.builtin)
    return load_table(run.input_path, kind=kind)


def cmd_check(run: RunConfig, Q: QuandleTable) -> Tuple[Dict, bool]:
    partition = orbits(Q)
    report: Dict[str, Any] = {
        "quandle": Q.name,
        "size": Q.size,
        "kind": Q.kind.value,
        "orbits": [[x + 1 for x in block] for block in partition.blocks],
        "connected": partition.count == 1,
        "quasigroup": is_quasigroup(Q),
    }
    try:
        report["inn_order"] = inner_group(Q, run.max_group_order).order
    except GroupTooLarge:
        report["inn_order"] = None
    ok = True
    profile = aq_profile(Q)
    report["aq_profile"] = profile.to_dict() if profile else None
    if profile is not None:
        lemmas = lemma_checks(Q, profile)
        report["lemma_checks"] = lemmas.to_dict()
        ok = lemmas.passed
        if not profile.trivial_stabilizers:
            report["cancellation"] = cancellation_diagnostic(
                Q, profile, 1, 1, run.max_basis
            ).to_dict()
    if report["quasigroup"] and not report["connected"]:
        ok = False
    return report, ok


def cmd_homology(run: RunConfig, Q: QuandleTable) -> Tuple[List, bool]:
    reports = homology_reports(
        Q, run.theory, run.max_dim, run.modulus, run.max_basis, run.jobs
    )
    ok = True
    payload = []
    for report in reports:
        data = report.to_dict()
        data["text"] = str(report.group)
        if not run.modulus:
            predicted = rank_prediction(Q, report.degree, run.theory)
            data["rank_predicted"] = predicted
            ok = ok and predicted == report.group.rank
        payload.append(data)
    return payload, ok


def cmd_verify_homotopies(
    run: RunConfig, Q: QuandleTable
) -> Tuple[List, bool]:
    profile = aq_profile(Q)
    require_trivial_stabilizers(Q, profile)
    reports = verify_all_identities(
        Q, profile, run.max_dim, run.max_basis, run.jobs
    )
    return [r.to_dict() for r in reports], all(r.passed for r in reports)


def cmd_annihilation(run: RunConfig, Q: QuandleTable) -> Tuple[Dict, bool]:
    profile = aq_profile(Q)
    require_trivial_stabilizers(Q, profile)
    report = verify_annihilation_pipeline(
        Q,
        profile,
        run.max_dim,
        max_basis=run.max_basis,
        jobs=run.jobs,
        max_group_order=run.max_group_order,
    )
    return report.to_dict(), report.passed


def cmd_extend(run: RunConfig) -> Tuple[Any, bool]:
    spec = load_cocycle(run.cocycle_path)
    table = extend(spec)
    logger.info(
        "Extended %r by a fiber of size %d", spec.base, spec.fiber_size
    )
    if run.compare_path is not None:
        reference = load_table(run.compare_path)
        same = are_isomorphic(
            table,
            reference,
            run.isomorphism_max_size,
            run.isomorphism_max_nodes,
        )
        return {
            "quandle": table.name,
            "size": table.size,
            "table": table.to_lists(one_based=True),
            "compare": run.compare_path,
            "isomorphic": same,
        }, same
    if run.output_format is OutputFormat.JSON:
        return {
            "quandle": table.name,
            "size": table.size,
            "table": table.to_lists(one_based=True),
        }, True
    return format_table(table), True


def cmd_export_matrix(run: RunConfig, Q: QuandleTable) -> Tuple[str, bool]:
    matrix = ChainComplex(Q, run.theory, run.max_basis).boundary(run.max_dim)
    return format_matrix(matrix), True


def execute(run: RunConfig) -> Tuple[Any, bool]:
    """Run one command; returns (report, all checks passed)"""
    if run.command is Command.EXTEND:
        return cmd_extend(run)
    Q = load_input(run)
    handlers = {
        Command.CHECK: cmd_check,
        Command.HOMOLOGY: cmd_homology,
        Command.VERIFY_HOMOTOPIES: cmd_verify_homotopies,
        Command.ANNIHILATION: cmd_annihilation,
        Command.EXPORT_MATRIX: cmd_export_matrix,
    }
    return handlers[run.command](run, Q)


def _report_error(
    error: Exception, code: str, run: Optional[RunConfig]
) -> None:
    if run is not None and run.output_format is OutputFormat.JSON:
        payload = {"error": get_error_dict(code, str(error))}
        save_report(payload, run.output_path, OutputFormat.JSON)
    else:
        sys.stderr.write(format_error_message(code, str(error)) + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point for the qhk command"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return ExitStatus.USAGE if e.code else ExitStatus.OK

    run: Optional[RunConfig] = None
    try:
        config = Config(args.config)
        run = make_run_config(args, config)
        setup_logging_from_config(config)
        logger.debug("Effective configuration: %s", config.to_dict())
    except ConfigurationError as e:
        _report_error(e, e.code, run)
        return ExitStatus.USAGE
    except ValueError as e:
        sys.stderr.write(f"qhk: error: {e}\n")
        return ExitStatus.USAGE

    result = run.validate()
    for warning in result.warnings or []:
        logger.warning("%s", warning)
    if not result.valid:
        sys.stderr.write(f"qhk: error: {result.error}\n")
        return ExitStatus.USAGE

    try:
        report, ok = execute(run)
    except UnknownBuiltin as e:
        _report_error(e, e.code, run)
        return ExitStatus.USAGE
    except OSError as e:
        _report_error(e, "QHK-602", run)
        return ExitStatus.USAGE
    except QhkError as e:
        logger.debug("Command failed", exc_info=True)
        _report_error(e, e.code, run)
        return ExitStatus.CHECK_FAILED
    except Exception as e:  # pragma: no cover
        log_exception(logger, "Unexpected failure", e)
        return ExitStatus.CHECK_FAILED

    save_report(report, run.output_path, run.output_format)
    if not ok:
        logger.warning("%s: some checks failed", run.command.value)
        return ExitStatus.CHECK_FAILED
    return ExitStatus.OK
