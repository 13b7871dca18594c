"""Identity descriptors and the global registry."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

from hypident.errors import ConstraintViolation, ModeViolation, UnknownIdentity

FORMAL = "formal"
NUMERIC = "numeric"
BOTH = "both"

FormalBuilder = Callable[[dict, int], object]
NumericBuilder = Callable[[dict], object]


@dataclass(frozen=True)
class Side:
    name: str
    description: str
    formal: FormalBuilder | None = None
    numeric: NumericBuilder | None = None


@dataclass(frozen=True)
class Constraint:
    description: str
    check: Callable[[dict], bool]
    applies_to: str = BOTH  # which mode the constraint guards


@dataclass(frozen=True)
class IdentityDescriptor:
    """A registered identity: two or more independently built sides."""

    id: str
    title: str
    sides: tuple[Side, ...]
    mode: str
    parameters: tuple[str, ...]
    variables: tuple[str, ...] = ()
    constraints: tuple[Constraint, ...] = ()
    anchor: str = ""
    # "series": the formal target is a truncation order; "scalar": a terminating index N.
    formal_target: str = "series"
    notes: str = ""
    numeric_expected_fail: bool = False

    def side(self, name: str) -> Side:
        for s in self.sides:
            if s.name == name:
                return s
        raise UnknownIdentity(f"identity {self.id!r} has no side {name!r}; sides: {self.side_names()}")

    def side_names(self) -> list[str]:
        return [s.name for s in self.sides]

    def allows(self, mode: str) -> bool:
        return self.mode == BOTH or self.mode == mode

    def check_constraints(self, params: Mapping, mode: str) -> None:
        missing = [p for p in self.parameters if p not in params]
        if mode == NUMERIC:
            missing += [v for v in self.variables if v not in params]
        if missing:
            raise ConstraintViolation(f"{self.id}: missing values for {missing}")
        for c in self.constraints:
            if c.applies_to in (BOTH, mode) and not c.check(dict(params)):
                raise ConstraintViolation(f"{self.id}: constraint violated: {c.description}")

    def catalogue_entry(self) -> dict:
        return {
            "id": self.id,
            "title": self.title,
            "sides": self.side_names(),
            "mode": self.mode,
            "parameters": list(self.parameters),
            "variables": list(self.variables),
            "constraints": [c.description for c in self.constraints],
            "anchor": self.anchor,
        }


REGISTRY: dict[str, IdentityDescriptor] = {}


def register(desc: IdentityDescriptor) -> IdentityDescriptor:
    if desc.id in REGISTRY:
        raise ValueError(f"duplicate identity id {desc.id!r}")
    REGISTRY[desc.id] = desc
    return desc


def get_identity(identity) -> IdentityDescriptor:
    if isinstance(identity, IdentityDescriptor):
        return identity
    try:
        return REGISTRY[identity]
    except KeyError:
        raise UnknownIdentity(f"unknown identity {identity!r}; known: {sorted(REGISTRY)}") from None


def build_side(identity, side: str, params: Mapping, order: int | None = None, numeric: bool = False):
    """Build one side formally (to ``order``) or numerically (at the point in ``params``)."""
    desc = get_identity(identity)
    s = desc.side(side)
    mode = NUMERIC if numeric else FORMAL
    if not desc.allows(mode):
        raise ModeViolation(f"identity {desc.id!r} is {desc.mode}-only; {mode} evaluation is not meaningful")
    desc.check_constraints(params, mode)
    if numeric:
        if s.numeric is None:
            raise ModeViolation(f"side {side!r} of {desc.id!r} has no numeric builder")
        return s.numeric(dict(params))
    if order is None:
        raise ValueError("formal evaluation needs an order")
    if s.formal is None:
        raise ModeViolation(f"side {side!r} of {desc.id!r} has no formal builder")
    return s.formal(dict(params), order)


def catalogue() -> list[dict]:
    return [REGISTRY[k].catalogue_entry() for k in sorted(REGISTRY)]


def with_perturbation(identity, side: str, index, delta=1) -> IdentityDescriptor:
    """A copy of ``identity`` whose ``side`` has one coefficient shifted by ``delta``.

    For scalar identities ``index`` is ignored and the value itself is shifted.
    """
    from dataclasses import replace

    from hypident.series import TruncatedSeries

    desc = get_identity(identity)
    target = desc.side(side)

    def formal(params, order, _f=target.formal):
        value = _f(params, order)
        if isinstance(value, TruncatedSeries):
            bump = TruncatedSeries.monomial(index, delta, value.variables, value.order, value.kind)
            return value + bump
        return value + delta

    def numeric(params, _f=target.numeric):
        return _f(params) * (1 + delta * 1e-3)

    mutated = replace(
        target,
        formal=formal if target.formal else None,
        numeric=numeric if target.numeric else None,
    )
    sides = tuple(mutated if s.name == side else s for s in desc.sides)
    return replace(desc, sides=sides, id=desc.id)
