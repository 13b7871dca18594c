"""Syntax tree of comparison documents.

Positions are carried for error messages but excluded from equality, so two
trees compare equal exactly when they have the same structure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


def _pos():
    return field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Num:
    value: Fraction
    pos: tuple = _pos()


@dataclass(frozen=True)
class Name:
    name: str
    pos: tuple = _pos()


@dataclass(frozen=True)
class Neg:
    operand: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: object
    right: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class Poch:
    """``pochhammer(base, n)`` or, with ``q_analogue``, ``qpoch(base, n)``."""

    q_analogue: bool
    base: object
    index: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class QProdInf:
    arg: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class Abs:
    arg: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class Sum:
    index: str
    lower: object
    upper: object  # None means "auto"
    body: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class Hyp:
    q_analogue: bool
    upper: tuple
    lower: tuple
    arg: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class Vwp:
    a: object
    lateral: tuple
    arg: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class Predicate:
    op: str  # != < > <= >=
    left: object
    right: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class ParamDecl:
    name: str
    value: object = None
    where: tuple = ()
    pos: tuple = _pos()


@dataclass(frozen=True)
class VarDecl:
    name: str
    value: object = None
    pos: tuple = _pos()


@dataclass(frozen=True)
class ModeDecl:
    kind: str  # "formal" or "numeric"
    value: Fraction  # truncation order or tolerance
    pos: tuple = _pos()


@dataclass(frozen=True)
class Document:
    params: tuple
    variables: tuple
    mode: ModeDecl | None
    sides: tuple

    def param_names(self) -> list:
        return [p.name for p in self.params]

    def variable_names(self) -> list:
        return [v.name for v in self.variables]
