"""The classical Gelfand-Graev-Retakh triple-sum identity.

Three sides are registered:

* ``GGR0``: the triple sum, built coefficient by coefficient;
* ``GGR1``: the product of binomial powers times a 2F1 whose argument is
  ``(x - y)(1 - z) / ((1 - y)(1 - xz))``;
* ``GGR2``: the Euler-transformed form with argument
  ``(y - x)(1 - z) / ((1 - x)(1 - yz))``.

The sextuple sums obtained by expanding every factor of GGR1 / GGR2 are
kept here too; the proof replay starts from them.
"""

from __future__ import annotations

import math
from fractions import Fraction

from hypident.exact import as_exact, gen_binomial, is_integer, pochhammer
from hypident.registry.core import FORMAL, Constraint, IdentityDescriptor, Side, register
from hypident.series import TruncatedSeries, monomials, series_compose, series_pow

VARS = ("x", "y", "z")


def _abc(p):
    return as_exact(p["alpha"]), as_exact(p["beta"]), as_exact(p["gamma"])


def ggr_lhs_coefficient(p, X: int, Y: int, Z: int) -> Fraction:
    """Coefficient of ``x^X y^Y z^Z`` in the triple sum."""
    a, b, g = _abc(p)
    s = X + Y - Z
    num = pochhammer(a, X) * pochhammer(b, Y) * pochhammer(1 - g, Z) * pochhammer(g, s)
    den = math.factorial(X) * math.factorial(Y) * math.factorial(Z) * pochhammer(a + b, s)
    return num / den


def ggr1_multisum(p, X: int, Y: int, Z: int) -> Fraction:
    """The sextuple sum over i+l+n-m = X, j+m = Y, k+l = Z (expanded GGR1)."""
    a, b, g = _abc(p)
    total = Fraction(0)
    for m in range(Y + 1):
        j = Y - m
        for l in range(Z + 1):
            k = Z - l
            for n in range(0, X - l + m + 1):
                i = X - l - n + m
                head = pochhammer(b, n) * pochhammer(a + b - g, n) / (math.factorial(n) * pochhammer(a + b, n))
                binoms = (
                    gen_binomial(b - g, i)
                    * gen_binomial(-b - n, j)
                    * gen_binomial(a + b + n - 1, k)
                    * gen_binomial(g - a - b - n, l)
                    * gen_binomial(n, m)
                )
                total += (-1) ** (i + j + k + l + m) * head * binoms
    return total


def ggr2_multisum(p, X: int, Y: int, Z: int) -> Fraction:
    """The sextuple sum over i+l+m = X, j+n-m = Y, j+k+l = Z (expanded GGR2)."""
    a, b, g = _abc(p)
    total = Fraction(0)
    for l in range(min(X, Z) + 1):
        for m in range(X - l + 1):
            i = X - l - m
            for j in range(Z - l + 1):
                k = Z - j - l
                n = Y - j + m
                if n < 0:
                    continue
                head = pochhammer(b, n) * pochhammer(g, n) / (math.factorial(n) * pochhammer(a + b, n))
                binoms = (
                    gen_binomial(-g - n, i)
                    * gen_binomial(-b - n, j)
                    * gen_binomial(a + b + n - 1, k)
                    * gen_binomial(g - a, l)
                    * gen_binomial(n, m)
                )
                total += (-1) ** (i + j + k + l + m) * head * binoms
    return total


def series_from_coefficients(fn, order: int, variables=VARS) -> TruncatedSeries:
    coeffs = {idx: fn(*idx) for idx in monomials(len(variables), order)}
    return TruncatedSeries(variables, order, coeffs)


def _ring(order):
    x, y, z = (TruncatedSeries.variable(v, VARS, order) for v in VARS)
    return x, y, z


def hyp_term(upper, lower):
    """Coefficient rule ``l -> prod (a)_l / (l! prod (b)_l)`` of an ordinary series."""

    def rule(l):
        num = Fraction(1)
        for a in upper:
            num *= pochhammer(a, l)
        if num == 0:
            return num
        den = Fraction(math.factorial(l))
        for b in lower:
            den *= pochhammer(b, l)
        return num / den

    return rule


def ggr0_series(p, order: int) -> TruncatedSeries:
    return series_from_coefficients(lambda j, k, m: ggr_lhs_coefficient(p, j, k, m), order)


def ggr1_series(p, order: int) -> TruncatedSeries:
    a, b, g = _abc(p)
    x, y, z = _ring(order)
    pref = (
        series_pow(1 - z, a + b - 1)
        * series_pow(1 - x * z, g - a - b)
        * series_pow(1 - x, b - g)
        * series_pow(1 - y, -b)
    )
    w = (x - y) * (1 - z) / ((1 - y) * (1 - x * z))
    return pref * series_compose(hyp_term([b, a + b - g], [a + b]), w)


def ggr2_series(p, order: int) -> TruncatedSeries:
    a, b, g = _abc(p)
    x, y, z = _ring(order)
    pref = (
        series_pow(1 - z, a + b - 1)
        * series_pow(1 - x * z, g - a)
        * series_pow(1 - x, -g)
        * series_pow(1 - y * z, -b)
    )
    w = (y - x) * (1 - z) / ((1 - x) * (1 - y * z))
    return pref * series_compose(hyp_term([b, g], [a + b]), w)


def ggr_admissible(p) -> bool:
    """``alpha + beta`` is not a nonpositive integer (it is the 2F1 lower parameter)."""
    a, b, _ = _abc(p)
    return not (is_integer(a + b) and a + b <= 0)


def ggr_generic(p, bound: int = 16) -> bool:
    """Sampling filter: every Pochhammer argument avoids the integers in ``[-bound, bound]``.

    ``alpha + beta`` and ``gamma`` also sit under negative-index Pochhammers.
    """
    a, b, g = _abc(p)
    return not any(is_integer(v) and abs(v) <= bound for v in (a, b, g, a + b, a + b - g, g - b, g - a))


register(
    IdentityDescriptor(
        id="ggr",
        title="Gelfand-Graev-Retakh triple sum = 2F1 forms",
        sides=(
            Side("GGR0", "triple sum, closed coefficient per monomial", formal=ggr0_series),
            Side("GGR1", "binomial powers times 2F1[beta, alpha+beta-gamma; alpha+beta]", formal=ggr1_series),
            Side("GGR2", "Euler-transformed form with 2F1[beta, gamma; alpha+beta]", formal=ggr2_series),
        ),
        mode=FORMAL,
        parameters=("alpha", "beta", "gamma"),
        variables=VARS,
        constraints=(
            Constraint("alpha+beta is not a nonpositive integer", ggr_admissible),
        ),
        anchor="Gelfand-Graev-Retakh identity: triple sum equals both 2F1 product forms",
    )
)
