"""Exact scalar arithmetic and the scalar special functions.

Exact scalars are :class:`fractions.Fraction` instances, which keep the
canonical (reduced, positive denominator) form after every operation.  The
special functions below are written against the field operations only, so
they also accept :mod:`mpmath` numbers when the numeric layer calls them.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import mpmath

from hypident.errors import InvalidBase, PoleError

ExactScalar = Fraction

__all__ = [
    "ExactScalar",
    "as_exact",
    "to_numeric",
    "is_exact",
    "is_integer",
    "pochhammer",
    "q_pochhammer",
    "gen_binomial",
    "reciprocal_factorial",
    "check_base",
    "format_exact",
]


def as_exact(value) -> Fraction:
    """Coerce ints, Fractions and rational strings such as ``"-3/7"`` or ``"0.25"``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact scalar")


def to_numeric(value):
    """Convert an exact (or numeric) scalar to an mpmath number at the current precision."""
    if isinstance(value, (mpmath.mpf, mpmath.mpc)):
        return +value
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    if isinstance(value, (int, float, str)):
        return mpmath.mpf(value)
    if isinstance(value, complex):
        return mpmath.mpc(value)
    raise TypeError(f"cannot convert {value!r} to a numeric scalar")


def is_exact(value) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def is_integer(value) -> bool:
    if isinstance(value, int):
        return True
    if isinstance(value, Fraction):
        return value.denominator == 1
    return False


def format_exact(value: Fraction) -> str:
    """Render as ``"p/q"`` (always with an explicit denominator)."""
    value = as_exact(value)
    return f"{value.numerator}/{value.denominator}"


def check_base(q) -> None:
    if q == 0 or q == 1 or q == -1:
        raise InvalidBase(f"base q={q} is a root of unity or zero")


def _coerce(a):
    if isinstance(a, int) and not isinstance(a, bool):
        return Fraction(a)
    return a


def pochhammer(a, k: int):
    """Rising factorial ``(a)_k``, with ``(a)_k = 1/(a+k)_{-k}`` for negative ``k``."""
    a = _coerce(a)
    if k == 0:
        return a ** 0 if not isinstance(a, Fraction) else Fraction(1)
    if k > 0:
        return _rising(a, k)
    denom = _rising(a + k, -k)
    if denom == 0:
        raise PoleError(f"({a})_{k} has a zero factor in its denominator", f"({a + k})_{-k}")
    return 1 / denom


def _rising(a, k: int):
    if isinstance(a, Fraction):
        return _rising_exact(a, k)
    result = a ** 0
    for i in range(k):
        result *= a + i
    return result


@lru_cache(maxsize=65536)
def _rising_exact(a: Fraction, k: int) -> Fraction:
    # Work on integers: (p/d)_k = prod(p + i d) / d^k.
    p, d = a.numerator, a.denominator
    num = 1
    for i in range(k):
        num *= p + i * d
    return Fraction(num, d ** k)


def q_pochhammer(a, q, n: int):
    """q-shifted factorial ``(a;q)_n`` for any integer ``n``.

    For ``n < 0`` this is ``prod_{i=0}^{-n-1} 1/(1 - a q^(n+i))``.
    """
    a, q = _coerce(a), _coerce(q)
    check_base(q)
    if isinstance(a, Fraction) and isinstance(q, Fraction):
        return _q_pochhammer_exact(a, q, n)
    if n == 0:
        return (a * q) ** 0
    if n > 0:
        result = (a * q) ** 0
        for i in range(n):
            result *= 1 - a * q ** i
        return result
    denom = (a * q) ** 0
    for i in range(-n):
        factor = 1 - a * q ** (n + i)
        if factor == 0:
            raise PoleError(f"({a};{q})_{n} has a vanishing factor", f"1 - ({a})*({q})^{n + i}")
        denom *= factor
    return 1 / denom


@lru_cache(maxsize=65536)
def _q_pochhammer_exact(a: Fraction, q: Fraction, n: int) -> Fraction:
    if n == 0:
        return Fraction(1)
    if n > 0:
        result = Fraction(1)
        qi = Fraction(1)
        for _ in range(n):
            result *= 1 - a * qi
            qi *= q
        return result
    denom = Fraction(1)
    for i in range(-n):
        factor = 1 - a * q ** (n + i)
        if factor == 0:
            raise PoleError(f"({a};{q})_{n} has a vanishing factor", f"1 - ({a})*({q})^{n + i}")
        denom *= factor
    return 1 / denom


def gen_binomial(a, k: int):
    """Generalized binomial coefficient ``a(a-1)...(a-k+1)/k!``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    a = _coerce(a)
    result = a ** 0 if not isinstance(a, Fraction) else Fraction(1)
    for i in range(k):
        result *= a - i
    if isinstance(result, Fraction):
        return result / math.factorial(k)
    return result / math.factorial(k)


def reciprocal_factorial(n: int) -> Fraction:
    """``1/n!``, extended by zero to negative integers (the poles of Gamma)."""
    if n < 0:
        return Fraction(0)
    return Fraction(1, math.factorial(n))
