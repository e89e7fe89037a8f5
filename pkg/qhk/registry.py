"""Builtin quandle registry - parses family:params specs and builds tables."""

import logging
from typing import Callable, Dict, List, Tuple

import yaml

from .constructors import (
    make_alexander,
    make_conjugation_class,
    make_dihedral,
    make_takasaki,
    make_trivial,
)
from .exceptions import ConstructionError, UnknownBuiltin
from .quandle import QuandleTable

logger = logging.getLogger(__name__)

Factory = Callable[..., QuandleTable]


class BuiltinRegistry:
    """Maps family names to constructors; builds specs like 'dihedral:7'."""

    def __init__(self):
        self._families: Dict[str, Tuple[Factory, str]] = {}

    def register(self, name: str, factory: Factory, usage: str) -> None:
        """Register a constructor under a family name."""
        self._families[name] = (factory, usage)

    def names(self) -> List[str]:
        return sorted(self._families)

    def usage(self) -> str:
        return ", ".join(
            self._families[name][1] for name in self.names()
        )

    def __contains__(self, name: str) -> bool:
        return name in self._families

    def parse(self, spec: str) -> Tuple[str, list]:
        """
        Split 'family:params' into the family and its parameter list.

        Parameters are read as a YAML flow sequence, so nested lists such
        as conjclass:5,[2,2,1] need no extra syntax.
        """
        family, sep, params = spec.strip().partition(":")
        family = family.strip().lower()
        if not sep or not params.strip():
            raise UnknownBuiltin(spec, "expected family:params")
        if family not in self._families:
            raise UnknownBuiltin(
                spec, f"unknown family '{family}' (known: {self.usage()})"
            )
        try:
            args = yaml.safe_load(f"[{params}]")
        except yaml.YAMLError as e:
            raise UnknownBuiltin(spec, f"cannot parse parameters: {e}")
        if not isinstance(args, list):
            raise UnknownBuiltin(spec, "cannot parse parameters")
        return family, args

    def build(self, spec: str) -> QuandleTable:
        """
        Build the table named by a spec.

        Raises:
            UnknownBuiltin: Unknown family or malformed parameters
            ConstructionError: Parameters rejected by the constructor
        """
        family, args = self.parse(spec)
        factory, usage = self._families[family]
        try:
            table = factory(*args)
        except ConstructionError:
            raise
        except (TypeError, ValueError) as e:
            raise UnknownBuiltin(spec, f"{e}; usage: {usage}")
        logger.debug("Built %s: %r", spec, table)
        return table.renamed(spec.strip())


def _takasaki(*moduli) -> QuandleTable:
    return make_takasaki(list(moduli))


def _conjclass(degree, shape) -> QuandleTable:
    if not isinstance(shape, list):
        raise TypeError("cycle type must be a list such as [2,2,1]")
    return make_conjugation_class(degree, shape)


def default_registry() -> BuiltinRegistry:
    """Registry with every builtin family."""
    registry = BuiltinRegistry()
    registry.register("trivial", make_trivial, "trivial:n")
    registry.register("dihedral", make_dihedral, "dihedral:n")
    registry.register("takasaki", _takasaki, "takasaki:m1,m2,...")
    registry.register("alexander", make_alexander, "alexander:n,t")
    registry.register(
        "conjclass", _conjclass, "conjclass:degree,[cycle,type]"
    )
    return registry


def build_builtin(spec: str) -> QuandleTable:
    return default_registry().build(spec)
