"""Truncated multivariate formal power series.

A :class:`TruncatedSeries` lives in ``K[[v_1, ..., v_r]] / (total degree > N)``.
Coefficients are stored sparsely, keyed by exponent tuples.  Two series can
only be combined when their variable lists and scalar kinds agree; the
result is truncated at the smaller of the two orders.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import mpmath

from hypident.errors import (
    NonzeroConstantTerm,
    NotInvertible,
    OrderExceeded,
    UnsupportedBase,
    VariableMismatch,
)
from hypident.exact import as_exact, check_base, gen_binomial, is_integer, q_pochhammer, to_numeric

MultiIndex = tuple

EXACT = "exact"
NUMERIC = "numeric"

__all__ = [
    "TruncatedSeries",
    "MultiIndex",
    "series_arith",
    "series_invert",
    "series_pow",
    "series_compose",
    "q_product",
    "coefficient",
    "EXACT",
    "NUMERIC",
]


class TruncatedSeries:
    __slots__ = ("variables", "order", "kind", "_coeffs")

    def __init__(self, variables: Sequence[str], order: int, coeffs: Mapping | None = None, kind: str = EXACT):
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        if kind not in (EXACT, NUMERIC):
            raise ValueError(f"unknown scalar kind {kind!r}")
        self.variables = tuple(variables)
        self.order = order
        self.kind = kind
        n = len(self.variables)
        store = {}
        for idx, c in (coeffs or {}).items():
            idx = tuple(idx)
            if len(idx) != n or any(e < 0 for e in idx):
                raise ValueError(f"bad multi-index {idx} for variables {self.variables}")
            if sum(idx) > order:
                continue
            c = self._scalar(c)
            if c != 0:
                store[idx] = c
        self._coeffs = store

    # -- construction -------------------------------------------------------

    @classmethod
    def constant(cls, value, variables, order, kind=EXACT):
        return cls(variables, order, {(0,) * len(tuple(variables)): value}, kind)

    @classmethod
    def variable(cls, name, variables, order, kind=EXACT):
        variables = tuple(variables)
        idx = [0] * len(variables)
        idx[variables.index(name)] = 1
        return cls(variables, order, {tuple(idx): 1}, kind)

    @classmethod
    def monomial(cls, exponents, coeff, variables, order, kind=EXACT):
        return cls(variables, order, {tuple(exponents): coeff}, kind)

    def _new(self, coeffs, order=None):
        out = TruncatedSeries.__new__(TruncatedSeries)
        out.variables = self.variables
        out.order = self.order if order is None else order
        out.kind = self.kind
        out._coeffs = {k: v for k, v in coeffs.items() if v != 0 and sum(k) <= out.order}
        return out

    def _scalar(self, c):
        if self.kind == NUMERIC:
            return to_numeric(c)
        if isinstance(c, (mpmath.mpf, mpmath.mpc, float, complex)):
            raise TypeError("numeric scalar in an exact series")
        return as_exact(c)

    # -- inspection ---------------------------------------------------------

    @property
    def zero_index(self) -> tuple:
        return (0,) * len(self.variables)

    def coefficients(self) -> dict:
        return dict(self._coeffs)

    def items(self):
        return sorted(self._coeffs.items(), key=_graded_key)

    def __getitem__(self, idx):
        return coefficient(self, idx)

    def constant_term(self):
        return self._coeffs.get(self.zero_index, self._zero())

    def _zero(self):
        return mpmath.mpf(0) if self.kind == NUMERIC else Fraction(0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def min_degree(self):
        """Lowest total degree carrying a nonzero coefficient (None for the zero series)."""
        if not self._coeffs:
            return None
        return min(sum(k) for k in self._coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise OrderExceeded(f"cannot raise truncation order {self.order} to {order}")
        return self._new(self._coeffs, order)

    def to_numeric(self) -> "TruncatedSeries":
        out = TruncatedSeries(self.variables, self.order, {}, NUMERIC)
        out._coeffs = {k: to_numeric(v) for k, v in self._coeffs.items()}
        return out

    # -- ring operations ----------------------------------------------------

    def _check(self, other: "TruncatedSeries"):
        if self.variables != other.variables:
            raise VariableMismatch(f"{self.variables} vs {other.variables}")
        if self.kind != other.kind:
            raise VariableMismatch(f"scalar kinds differ: {self.kind} vs {other.kind}")

    def _lift(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return other
        return TruncatedSeries.constant(other, self.variables, self.order, self.kind)

    def __add__(self, other):
        other = self._lift(other)
        order = min(self.order, other.order)
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            out[k] = out.get(k, 0) + v
        return self._new(out, order)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -v for k, v in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            c = self._scalar(other)
            return self._new({k: v * c for k, v in self._coeffs.items()})
        self._check(other)
        order = min(self.order, other.order)
        return self._new(_mul(self._coeffs, other._coeffs, order), order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * series_invert(other)
        c = self._scalar(other)
        if c == 0:
            raise NotInvertible("division of a series by zero")
        return self._new({k: v / c for k, v in self._coeffs.items()})

    def __rtruediv__(self, other):
        return series_invert(self) * other

    def __pow__(self, e):
        return series_pow(self, e)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.variables == other.variables
            and self.order == other.order
            and self._coeffs == other._coeffs
        )

    __hash__ = None

    # -- monomial shifts ----------------------------------------------------

    def shift(self, exponents) -> "TruncatedSeries":
        """Multiply by the monomial with the given (nonnegative) exponents."""
        exps = tuple(exponents)
        if any(e < 0 for e in exps):
            raise ValueError("use divide_monomial for negative shifts")
        return self._new({tuple(a + b for a, b in zip(k, exps)): v for k, v in self._coeffs.items()})

    def divide_monomial(self, exponents) -> "TruncatedSeries":
        """Exact division of a polynomial by a monomial.

        The receiver must be an exactly known polynomial (for instance the
        monomial argument of a hypergeometric series); the order is kept.
        """
        exps = tuple(exponents)
        out = {}
        for k, v in self._coeffs.items():
            nk = tuple(a - b for a, b in zip(k, exps))
            if any(e < 0 for e in nk):
                raise NotInvertible(f"monomial {exps} does not divide term {k}")
            out[nk] = v
        return self._new(out)

    # -- text ---------------------------------------------------------------

    def render(self) -> str:
        """Canonical text: graded order, then x > y > z lexicographically."""
        if not self._coeffs:
            return "0"
        parts = []
        for idx, c in self.items():
            coeff = _format_coeff(c)
            mono = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(self.variables, idx) if e
            )
            parts.append(f"{coeff}*{mono}" if mono else coeff)
        return " + ".join(parts)

    def __str__(self):
        return f"{self.render()} + O({self.order + 1})"

    def __repr__(self):
        return f"TruncatedSeries({self.variables}, order={self.order}, {self.render()!r})"


def _graded_key(item):
    idx = item[0]
    return (sum(idx), tuple(-e for e in idx))


def _format_coeff(c) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return mpmath.nstr(c, 17)


def _mul(a: dict, b: dict, order: int) -> dict:
    by_degree: dict[int, list] = {}
    for idx, c in b.items():
        by_degree.setdefault(sum(idx), []).append((idx, c))
    out: dict = {}
    for ia, ca in a.items():
        room = order - sum(ia)
        for d in range(room + 1):
            for ib, cb in by_degree.get(d, ()):
                key = tuple(x + y for x, y in zip(ia, ib))
                out[key] = out.get(key, 0) + ca * cb
    return out


# -- module-level operations -------------------------------------------------


def series_arith(a: TruncatedSeries, b: TruncatedSeries, op: str) -> TruncatedSeries:
    if not isinstance(b, TruncatedSeries) or not isinstance(a, TruncatedSeries):
        raise TypeError("series_arith expects two series")
    a._check(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def _horner(coeffs: Sequence, u: TruncatedSeries) -> TruncatedSeries:
    """sum_k coeffs[k] * u^k, for u with zero constant term."""
    result = TruncatedSeries.constant(coeffs[-1], u.variables, u.order, u.kind)
    for c in reversed(coeffs[:-1]):
        result = result * u + c
    return result


def series_invert(a: TruncatedSeries) -> TruncatedSeries:
    c0 = a.constant_term()
    if c0 == 0:
        raise NotInvertible("constant term is zero")
    u = 1 - a / c0
    geometric = _horner([1] * (a.order + 1), u)
    return geometric / c0


def series_pow(a: TruncatedSeries, e) -> TruncatedSeries:
    """``a**e`` for integer ``e``, or for rational ``e`` when ``a`` has constant term 1."""
    if is_integer(e):
        e = int(e)
        if e < 0:
            return series_pow(series_invert(a), -e)
        result = TruncatedSeries.constant(1, a.variables, a.order, a.kind)
        base = a
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result
    if a.constant_term() != 1:
        raise UnsupportedBase("non-integer power needs constant term 1")
    if a.kind == NUMERIC:
        e = to_numeric(e)
    u = a - 1
    coeffs = [gen_binomial(e, k) for k in range(a.order + 1)]
    return _horner(coeffs, u)


def series_compose(coeff_rule: Callable[[int], object], g: TruncatedSeries) -> TruncatedSeries:
    """``sum_l coeff_rule(l) g^l``; only ``l <= order`` can contribute."""
    if g.constant_term() != 0:
        raise NonzeroConstantTerm("inner series must have zero constant term")
    coeffs = [coeff_rule(l) for l in range(g.order + 1)]
    return _horner(coeffs, g)


def q_product(u: TruncatedSeries, q, n) -> TruncatedSeries:
    """``(u;q)_n`` in the series ring; ``n`` may be ``math.inf``.

    The infinite product is defined by Euler's expansion
    ``sum_k (-1)^k q^(k(k-1)/2) u^k / (q;q)_k``.
    """
    check_base(q)
    one = TruncatedSeries.constant(1, u.variables, u.order, u.kind)
    if n == float("inf"):
        if u.constant_term() != 0:
            raise NonzeroConstantTerm("(u;q)_inf needs u with zero constant term")
        coeffs = [(-1) ** k * q ** (k * (k - 1) // 2) / q_pochhammer(q, q, k) for k in range(u.order + 1)]
        return _horner(coeffs, u)
    n = int(n)
    result = one
    if n >= 0:
        for i in range(n):
            result = result * (1 - u * q ** i)
        return result
    for i in range(-n):
        result = result * series_invert(1 - u * q ** (n + i))
    return result


def coefficient(s: TruncatedSeries, idx) -> object:
    idx = tuple(idx)
    if len(idx) != len(s.variables):
        raise VariableMismatch(f"index {idx} has wrong length for {s.variables}")
    if sum(idx) > s.order:
        raise OrderExceeded(f"index {idx} exceeds truncation order {s.order}")
    return s._coeffs.get(idx, s._zero())


def monomials(nvars: int, order: int) -> Iterable[tuple]:
    """All exponent tuples of total degree <= order, in graded order."""
    def rec(n, budget):
        if n == 0:
            yield ()
            return
        for e in range(budget, -1, -1):
            for rest in rec(n - 1, budget - e):
                yield (e,) + rest

    for d in range(order + 1):
        for idx in rec(nvars, d):
            if sum(idx) == d:
                yield idx
