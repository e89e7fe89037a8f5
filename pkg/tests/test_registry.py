"""Tests for builtin quandle specs"""

import pytest

from qhk.exceptions import ConstructionError, NonUnitParameter, UnknownBuiltin
from qhk.isomorphism import are_isomorphic
from qhk.registry import BuiltinRegistry, build_builtin, default_registry
from tests.corpus import q15_2


def test_builtin_families():
    """Every family is registered"""
    registry = default_registry()
    assert registry.names() == [
        "alexander",
        "conjclass",
        "dihedral",
        "takasaki",
        "trivial",
    ]
    assert "dihedral" in registry
    assert "dihedral:n" in registry.usage()


def test_build_dihedral():
    """dihedral:7 is R7, named by its spec"""
    Q = build_builtin("dihedral:7")
    assert Q.size == 7
    assert Q.op(0, 1) == 2
    assert Q.name == "dihedral:7"


def test_build_nested_parameters():
    """Cycle types are written as lists"""
    Q = build_builtin("conjclass:5,[2,2,1]")
    assert Q.size == 15
    assert Q.table == q15_2().table


def test_build_other_families():
    assert build_builtin("alexander:8,3").size == 8
    assert build_builtin("takasaki:3,3").size == 9
    assert build_builtin(" Trivial:4 ").size == 4


def test_alexander_spec_isomorphic_to_dihedral():
    assert are_isomorphic(
        build_builtin("alexander:3,2"), build_builtin("dihedral:3")
    )


@pytest.mark.parametrize(
    "spec",
    ["dihedral", "dihedral:", "nope:3", "dihedral:3,4", "conjclass:5,2"],
)
def test_bad_specs(spec):
    """Unknown families and malformed parameters"""
    with pytest.raises(UnknownBuiltin) as exc:
        build_builtin(spec)
    assert exc.value.spec == spec


def test_rejected_parameters():
    """Constructor errors pass through unchanged"""
    with pytest.raises(NonUnitParameter):
        build_builtin("alexander:8,2")
    with pytest.raises(ConstructionError):
        build_builtin("dihedral:0")


def test_custom_registry():
    """Families can be registered on a fresh registry"""
    registry = BuiltinRegistry()
    registry.register(
        "dihedral", lambda n: build_builtin(f"dihedral:{n}"), "dihedral:n"
    )
    assert registry.build("dihedral:5").size == 5
    with pytest.raises(UnknownBuiltin):
        registry.build("trivial:2")
