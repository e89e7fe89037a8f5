"""Tests for table, cocycle, matrix and report files"""

import json
import os

import pytest
import yaml

from qhk.constructors import make_dihedral
from qhk.exceptions import (
    DistributivityFail,
    IdempotencyFail,
    TableParseError,
)
from qhk.extension import extend, quasigroup_by_trivial_cocycle
from qhk.isomorphism import are_isomorphic
from qhk.quandle import TableKind
from qhk.sparse import SparseIntMatrix
from qhk.table_io import (
    format_cocycle,
    format_matrix,
    load_cocycle,
    load_table,
    parse_cocycle,
    parse_matrix,
    parse_table,
    render_report,
    save_matrix,
    save_report,
    save_table,
)
from tests.corpus import q12_10, qs6, r3_t2, table_path


def test_load_shipped_tables():
    """The tables/ directory matches the transcribed corpus"""
    assert load_table(table_path("qs6.qnd")).table == qs6().table
    assert load_table(table_path("r3_t2.qnd")).table == r3_t2().table
    assert load_table(table_path("q12_10.qnd")).table == q12_10().table
    assert load_table(table_path("qs6.qnd")).name == "qs6"


def test_parse_table_comments_and_blanks():
    """Comments and blank lines are skipped"""
    text = "# R3\n\n3\n1 3 2  # row one\n3 2 1\n2 1 3\n"
    Q = parse_table(text)
    assert Q.table == make_dihedral(3).table


def test_parse_table_empty():
    """An empty file points at line 1"""
    with pytest.raises(TableParseError) as exc:
        parse_table("# nothing\n", path="empty.qnd")
    assert exc.value.line == 1
    assert exc.value.path == "empty.qnd"
    assert "empty.qnd:line 1" in str(exc.value)


def test_parse_table_missing_row():
    """A short file reports the line where the next row should be"""
    with pytest.raises(TableParseError) as exc:
        parse_table("3\n1 3 2\n3 2 1\n")
    assert exc.value.line == 4
    assert "row 3" in str(exc.value)


def test_parse_table_bad_tokens():
    """Non-integers and ragged rows are parse errors"""
    with pytest.raises(TableParseError) as exc:
        parse_table("2\n1 x\n2 2\n")
    assert exc.value.line == 2
    with pytest.raises(TableParseError) as exc:
        parse_table("2\n1 1\n2 2 2\n")
    assert exc.value.line == 3
    with pytest.raises(TableParseError):
        parse_table("2 2\n1 1\n2 2\n")
    with pytest.raises(TableParseError):
        parse_table("1\n1\n1\n")


def test_parse_table_validates():
    """Well-formed tables still go through the axioms"""
    with pytest.raises(IdempotencyFail):
        parse_table("2\n2 2\n1 1\n")
    rack = parse_table("2\n2 2\n1 1\n", kind="rack")
    assert rack.kind is TableKind.RACK
    with pytest.raises(DistributivityFail):
        parse_table("3\n1 3 1\n3 2 2\n2 1 3\n")


def test_save_and_load_table(tmp_path):
    """Saved tables load back to the same quandle"""
    path = str(tmp_path / "out" / "qs6.qnd")
    save_table(qs6(), path)
    assert load_table(path).table == qs6().table
    with open(path) as f:
        assert f.readline().startswith("# QS6")


def test_load_shipped_cocycle():
    """The cocycle file rebuilds the 4-AQ quandle of order 6"""
    spec = load_cocycle(table_path("r3_t2.cocycle"))
    assert spec.base.size == 2
    assert spec.fiber_size == 3
    assert spec.fiber_name == "R3"
    Q = extend(spec)
    assert Q.size == 6
    assert are_isomorphic(Q, r3_t2())


def test_cocycle_file_matches_constructor():
    """Parsing the formatted cocycle gives the same grids"""
    spec = quasigroup_by_trivial_cocycle(make_dihedral(3), 2)
    text = format_cocycle(spec, "trivial:2")
    parsed = parse_cocycle(text)
    assert extend(parsed).table == extend(spec).table


def test_cocycle_parse_errors(tmp_path):
    """Headers, pair ranges and missing grids are checked"""
    with pytest.raises(TableParseError):
        parse_cocycle("fiber 1\n1 1 1\n")
    with pytest.raises(TableParseError) as exc:
        parse_cocycle("base trivial:1\nfiber 1\n1 1 1 1\n")
    assert exc.value.line == 3
    with pytest.raises(TableParseError) as exc:
        parse_cocycle("base trivial:2\nfiber 1\n1 1 1\n3 1 1\n")
    assert exc.value.line == 4
    with pytest.raises(TableParseError):
        parse_cocycle("base trivial:1\nfiber 1\n1 1 1\n1 1 1\n")
    with pytest.raises(TableParseError):
        parse_cocycle("base trivial:2\nfiber 1\n1 1 1\n")
    with pytest.raises(TableParseError):
        parse_cocycle("base trivial:1\nfiber zero\n1 1 1\n")
    missing = str(tmp_path / "cocycle.txt")
    with pytest.raises(TableParseError):
        parse_cocycle("base nowhere.qnd\nfiber 1\n1 1 1\n", path=missing)


def test_cocycle_base_relative_to_file(tmp_path):
    """A base path is resolved next to the cocycle file"""
    save_table(make_dihedral(3), str(tmp_path / "r3.qnd"))
    lines = ["base r3.qnd", "fiber 1"]
    lines += [f"{a} {b} 1" for a in range(1, 4) for b in range(1, 4)]
    path = tmp_path / "trivial_fiber.cocycle"
    path.write_text("\n".join(lines) + "\n")
    Q = extend(load_cocycle(str(path)))
    assert Q.table == make_dihedral(3).table


def test_matrix_format():
    """rows cols nnz header, then 1-based triples"""
    M = SparseIntMatrix.from_dense([[0, 2], [-1, 0], [0, 0]])
    text = format_matrix(M)
    assert text.splitlines() == ["3 2 2", "1 2 2", "2 1 -1"]
    assert parse_matrix(text) == M


def test_matrix_parse_errors():
    with pytest.raises(TableParseError):
        parse_matrix("")
    with pytest.raises(TableParseError):
        parse_matrix("2 2\n")
    with pytest.raises(TableParseError):
        parse_matrix("2 2 2\n1 1 1\n")
    with pytest.raises(TableParseError):
        parse_matrix("2 2 1\n1 1\n")


def test_save_matrix(tmp_path):
    path = str(tmp_path / "d2.txt")
    M = SparseIntMatrix.from_dense([[1, -1]])
    save_matrix(M, path)
    with open(path) as f:
        assert parse_matrix(f.read()) == M


def test_render_report_json():
    """JSON output is key-sorted"""
    text = render_report({"b": 1, "a": [1, 2]}, "json")
    assert json.loads(text) == {"a": [1, 2], "b": 1}
    assert text.index('"a"') < text.index('"b"')


def test_render_report_text():
    """Text output is YAML of the same data"""
    text = render_report([{"degree": 3, "torsion": [24]}], "text")
    assert yaml.safe_load(text) == [{"degree": 3, "torsion": [24]}]
    assert render_report("plain", "text") == "plain\n"


def test_save_report_stdout(capsys, tmp_path):
    """None writes to stdout; a path writes a file"""
    save_report({"ok": True}, None, "json")
    assert json.loads(capsys.readouterr().out) == {"ok": True}
    path = str(tmp_path / "report.json")
    save_report({"ok": False}, path, "json")
    assert os.path.exists(path)
