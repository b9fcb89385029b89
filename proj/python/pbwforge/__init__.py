"""Exact PBW-deformation checks for N-Koszul algebras.

Every operation returns a Result whose ``exit_code`` follows the command-line
contract: 0 pass, 1 mathematical failure, 2 input error.
"""

import json
from typing import Any, Mapping, NamedTuple, Optional, Union

from . import _core

__all__ = ["Result", "verify", "hilbert", "ainf_check", "solve_as", "build_wedge", "selftest"]

Document = Union[str, Mapping[str, Any]]


class Result(NamedTuple):
    exit_code: int
    report: dict
    text: str

    @property
    def passed(self) -> bool:
        return self.exit_code == 0


def _text(doc: Document) -> str:
    return doc if isinstance(doc, str) else json.dumps(doc)


def _result(returned) -> Result:
    code, text = returned
    return Result(code, json.loads(text), text)


def _bindings(values: Optional[Mapping[str, Any]]) -> dict:
    return {k: str(v) for k, v in (values or {}).items()}


def verify(doc: Document, maxdeg: int = 6, margin: Optional[int] = None,
           bindings: Optional[Mapping[str, Any]] = None) -> Result:
    """J1, J2 and the dimension comparison for a deformation document."""
    return _result(_core.verify(_text(doc), maxdeg, margin, _bindings(bindings)))


def hilbert(doc: Document, maxdeg: int = 6, margin: Optional[int] = None,
            bindings: Optional[Mapping[str, Any]] = None) -> Result:
    return _result(_core.hilbert(_text(doc), maxdeg, margin, _bindings(bindings)))


def ainf_check(doc: Document, degbound: Optional[int] = None,
               bindings: Optional[Mapping[str, Any]] = None) -> Result:
    return _result(_core.ainf_check(_text(doc), degbound, _bindings(bindings)))


def solve_as(family: str) -> Result:
    """The solved coefficient table; ``text`` is the canonical document."""
    return _result(_core.solve_as(family))


def build_wedge(doc: Optional[Document] = None, v: Optional[int] = None, N: Optional[int] = None,
                seed: int = 1, maxdeg: int = 6, margin: Optional[int] = None) -> Result:
    return _result(_core.build_wedge(None if doc is None else _text(doc), v, N, seed, maxdeg, margin))


def selftest() -> Result:
    return _result(_core.selftest())
