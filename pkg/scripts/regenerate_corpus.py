#!/usr/bin/env python3
"""
Regenerate Corpus Tables

Rebuilds the quandles shipped in tables/ from the constructors and the
cocycle pipeline, and checks that each shipped table is isomorphic to
its rebuilt counterpart (labels in tables/ follow the published rows, so
only isomorphism is expected).

Usage:
    python scripts/regenerate_corpus.py            # check only
    python scripts/regenerate_corpus.py --write    # also write *.generated.qnd
    python scripts/regenerate_corpus.py --config qhk.yaml  # search budgets
"""

import argparse
import os
import sys

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from qhk.config import Config
from qhk.constructors import make_conjugation_class, make_dihedral
from qhk.exceptions import QhkError
from qhk.extension import extend, quasigroup_by_trivial_cocycle
from qhk.isomorphism import are_isomorphic
from qhk.logging_config import setup_logging
from qhk.quandle import aq_profile
from qhk.table_io import load_cocycle, load_table, save_table

TABLES_DIR = os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "tables"
)


def rebuilt_corpus():
    """(shipped file, rebuilt table) pairs"""
    return [
        ("qs6.qnd", make_conjugation_class(4, [4]).renamed("QS6")),
        (
            "r3_t2.qnd",
            extend(quasigroup_by_trivial_cocycle(make_dihedral(3), 2)),
        ),
        (
            "r3_t2.qnd",
            extend(load_cocycle(os.path.join(TABLES_DIR, "r3_t2.cocycle"))),
        ),
    ]


def check(write: bool, config: Config) -> bool:
    ok = True
    for filename, rebuilt in rebuilt_corpus():
        shipped = load_table(os.path.join(TABLES_DIR, filename))
        same = are_isomorphic(
            shipped,
            rebuilt,
            config.isomorphism_max_size,
            config.isomorphism_max_nodes,
        )
        profile = aq_profile(rebuilt)
        m = profile.m if profile else "-"
        symbol = "✓" if same else "✗"
        print(f"{symbol} {filename:<14} {rebuilt.name:<28} m={m}")
        ok = ok and same
        if write:
            stem = os.path.splitext(filename)[0]
            target = os.path.join(TABLES_DIR, f"{stem}.generated.qnd")
            save_table(rebuilt, target)
            print(f"  wrote {target}")
    # q12_10.qnd has no constructor; check its classification instead
    profile = aq_profile(load_table(os.path.join(TABLES_DIR, "q12_10.qnd")))
    good = profile is not None and profile.m == 3
    mark = "✓" if good else "✗"
    print(f"{mark} {'q12_10.qnd':<14} {'classified':<28} m=3")
    return ok and good


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[1])
    parser.add_argument(
        "--write",
        action="store_true",
        help="Write the rebuilt tables next to the shipped ones",
    )
    parser.add_argument(
        "--config",
        default=None,
        help="qhk.yaml with budget.isomorphism_* limits",
    )
    args = parser.parse_args()
    setup_logging(log_level="WARNING")
    try:
        ok = check(args.write, Config(args.config))
    except QhkError as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
