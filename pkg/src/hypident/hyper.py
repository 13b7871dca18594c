"""Evaluators for ordinary, basic and very-well-poised hypergeometric series.

Every evaluator works in one of three modes, picked from its inputs:

* exact: all values are exact rationals; the series must terminate.
* numeric: some value is an mpmath number; the sum is cut adaptively.
* series: some value is a :class:`TruncatedSeries` (or :class:`MonomialRatio`);
  the sum is truncated by total degree.

Parameters such as ``beta*y/x`` are not power series.  They are passed as a
:class:`MonomialRatio` and only ever enter through products
``(num/m; q)_l * m^l = prod_i (m - num q^i)``, which are polynomial once the
monomial powers are collected against the argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from hypident.errors import NonConvergent, NonTerminating, NotInvertible, OutOfAnnulus, PoleError
from hypident.exact import check_base, is_exact, to_numeric
from hypident.series import TruncatedSeries, q_product, series_invert

__all__ = [
    "MonomialRatio",
    "over",
    "HypSeriesSpec",
    "VwpSpec",
    "hyp_f",
    "basic_hyp_phi",
    "qpoch_series",
    "vwp_8phi7",
    "bilateral_1psi1",
    "psi11_product",
    "qpoch_inf",
]

DEFAULT_MAX_TERMS = 5000


@dataclass(frozen=True)
class MonomialRatio:
    """The Laurent parameter ``numerator / monomial``."""

    numerator: object
    denominator: tuple

    def __post_init__(self):
        if any(e < 0 for e in self.denominator):
            raise ValueError("monomial exponents must be nonnegative")


def over(numerator: TruncatedSeries, var: str) -> MonomialRatio:
    """``numerator / var`` as a parameter value."""
    exps = tuple(int(v == var) for v in numerator.variables)
    if not any(exps):
        raise ValueError(f"{var!r} is not a variable of the numerator")
    return MonomialRatio(numerator, exps)


@dataclass
class HypSeriesSpec:
    upper: Sequence
    lower: Sequence
    argument: object
    base: object = None
    max_terms: int = DEFAULT_MAX_TERMS


@dataclass
class VwpSpec:
    """Very-well-poised 8phi7 with parameters ``a; b, c, d, e, f`` and the given argument."""

    a: object
    lateral: Sequence
    base: object
    argument: object
    max_terms: int = DEFAULT_MAX_TERMS


# -- mode detection -----------------------------------------------------------


def _is_series(v) -> bool:
    return isinstance(v, (TruncatedSeries, MonomialRatio))


def _template(values) -> TruncatedSeries | None:
    """A series fixing variables/order/kind for series mode, or None."""
    found = []
    for v in values:
        if isinstance(v, TruncatedSeries):
            found.append(v)
        elif isinstance(v, MonomialRatio) and isinstance(v.numerator, TruncatedSeries):
            found.append(v.numerator)
    if not found:
        return None
    order = min(s.order for s in found)
    return TruncatedSeries.constant(1, found[0].variables, order, found[0].kind)


def _is_numeric(values) -> bool:
    return any(isinstance(v, (mpmath.mpf, mpmath.mpc, float, complex)) for v in values)


def _flatten(values):
    for v in values:
        if isinstance(v, MonomialRatio):
            yield v.numerator
        else:
            yield v


class _Factor:
    """Generates the per-index factors of one parameter."""

    def __init__(self, value, base, one, nvars):
        self.base = base
        if isinstance(value, MonomialRatio):
            if one is None:
                raise TypeError("monomial-ratio parameters need a series context")
            self.den = value.denominator
            self.num = value.numerator
            self.mono = one.shift(self.den)
        else:
            self.den = (0,) * nvars
            self.num = value
            self.mono = None

    def at(self, l):
        q = self.base
        if q is None:
            return self.num + l
        if self.mono is not None:
            return self.mono - self.num * q ** l
        return 1 - self.num * q ** l

    def zero_const_for_all(self) -> bool:
        """True when every factor has zero constant term (each adds >= 1 degree)."""
        if self.mono is not None:
            num0 = self.num.constant_term() if isinstance(self.num, TruncatedSeries) else self.num
            return any(self.den) and num0 == 0
        return False


def _is_zero(v) -> bool:
    if isinstance(v, TruncatedSeries):
        return v.is_zero()
    return v == 0


def _describe(v) -> str:
    if isinstance(v, TruncatedSeries):
        return v.render()
    return str(v)


def _terminates_at(a, base):
    """Index ``l >= 0`` at which the factor of the exact parameter ``a`` vanishes, or None."""
    if base is None:
        return int(-a) if a.denominator == 1 and a <= 0 else None
    if a == 0:
        return None
    # a q^l = 1; locate l from magnitudes, then confirm exactly
    guess = math.log(abs(a)) / -math.log(abs(base))
    for l in {math.floor(guess), math.ceil(guess)}:
        if l >= 0 and a * base ** l == 1:
            return l
    return None


def _hyper_sum(upper, lower, argument, base, max_terms, weight=None, tol=None):
    """Sum ``sum_l w(l) T_l`` where ``T_{l+1}/T_l`` is the standard term ratio.

    ``weight`` is an optional callable giving an extra per-term factor.
    """
    if base is not None:
        check_base(base)
    values = list(upper) + list(lower) + [argument] + ([base] if base is not None else [])
    one = _template(values)
    nvars = len(one.variables) if one is not None else 0
    if one is not None:
        mode = "series"
    elif _is_numeric(list(_flatten(values))):
        mode = "numeric"
    else:
        mode = "exact"

    if mode == "numeric":
        upper = [to_numeric(v) for v in upper]
        lower = [to_numeric(v) for v in lower]
        argument = to_numeric(argument)
        base = None if base is None else to_numeric(base)
        tol = mpmath.eps * 4 if tol is None else tol

    ups = [_Factor(v, base, one, nvars) for v in upper]
    lows = [_Factor(v, base, one, nvars) for v in lower]

    # Collect monomial denominators against the argument.
    if isinstance(argument, MonomialRatio):
        arg_num, arg_den = argument.numerator, argument.denominator
    else:
        arg_num, arg_den = argument, (0,) * nvars
    shift = [0] * nvars
    for f in lows:
        shift = [s + d for s, d in zip(shift, f.den)]
    for f in ups:
        shift = [s - d for s, d in zip(shift, f.den)]
    shift = [s - d for s, d in zip(shift, arg_den)]
    if mode == "series":
        if not isinstance(arg_num, TruncatedSeries):
            arg_num = one * arg_num
        if any(s > 0 for s in shift):
            arg_num = arg_num.shift([max(s, 0) for s in shift])
        if any(s < 0 for s in shift):
            arg_num = arg_num.divide_monomial([max(-s, 0) for s in shift])
        growth = sum(f.zero_const_for_all() for f in ups) + (arg_num.constant_term() == 0)
        order = one.order
    else:
        growth = 0
        order = None

    if mode == "exact" and argument != 0:
        stops = [_terminates_at(Fraction(v), base) for v in upper]
        stops = [l for l in stops if l is not None]
        if not stops:
            raise NonTerminating("exact evaluation needs a terminating upper parameter")
        if min(stops) > max_terms:
            raise NonTerminating(f"series terminates only after {min(stops)} terms")

    term = one if one is not None else (mpmath.mpf(1) if mode == "numeric" else Fraction(1))
    total = term * weight(0) if weight else term
    small_run = 0
    l = 0
    while True:
        if mode == "series" and growth and growth * (l + 1) > order:
            break
        if l >= max_terms:
            raise NonTerminating(f"series did not terminate within {max_terms} terms")
        up_factors = [f.at(l) for f in ups]
        if any(_is_zero(u) for u in up_factors):
            break
        if _is_zero(arg_num):
            break
        ratio = arg_num
        for u in up_factors:
            ratio = u * ratio if isinstance(u, TruncatedSeries) else ratio * u
        den = (l + 1) if base is None else (1 - base ** (l + 1))
        for f in lows:
            v = f.at(l)
            if isinstance(v, TruncatedSeries):
                try:
                    ratio = ratio * series_invert(v)
                except NotInvertible as exc:
                    raise PoleError("lower parameter factor is not invertible", v.render()) from exc
            else:
                if v == 0:
                    raise PoleError(f"lower parameter pole at index {l + 1}", _describe(f.num))
                den = den * v
        if _is_zero(den):
            raise PoleError(f"zero denominator at index {l + 1}")
        term = term * ratio / den if isinstance(term, TruncatedSeries) else (ratio * term) / den
        l += 1
        contribution = term * weight(l) if weight else term
        total = total + contribution
        if mode == "numeric":
            if abs(contribution) <= tol * abs(total):
                small_run += 1
                if small_run >= 3:
                    break
            else:
                small_run = 0
        elif mode == "exact" and _is_zero(term):
            break
    return total


def hyp_f(spec: HypSeriesSpec):
    """Ordinary ``rFs[upper; lower; argument]``."""
    if spec.base is not None:
        raise ValueError("hyp_f evaluates ordinary series; use basic_hyp_phi for a base q")
    return _hyper_sum(spec.upper, spec.lower, spec.argument, None, spec.max_terms)


def basic_hyp_phi(spec: HypSeriesSpec):
    """Basic ``r+1 phi r`` (no ``(-1)^l q^binom(l,2)`` compensating factor)."""
    if spec.base is None:
        raise ValueError("basic_hyp_phi needs a base q")
    return _hyper_sum(spec.upper, spec.lower, spec.argument, spec.base, spec.max_terms)


def qpoch_series(u, q, n: int, variables=("x", "y", "z"), order: int = 0) -> TruncatedSeries:
    """``(u;q)_n`` as a series; scalar ``u`` is embedded using ``variables``/``order``."""
    if not isinstance(u, TruncatedSeries):
        kind = "numeric" if _is_numeric([u, q]) else "exact"
        u = TruncatedSeries.constant(u, variables, order, kind)
    return q_product(u, q, n)


def vwp_8phi7(spec: VwpSpec):
    """Very-well-poised 8phi7 without materialising ``sqrt(a)``.

    The four square-root parameters contribute ``(1 - a q^(2l)) / (1 - a)`` to
    the l-th term; the remaining parameters are ``a, b..f`` over ``(q, aq/b..aq/f)``.
    """
    a, q = spec.a, spec.base
    if len(spec.lateral) != 5:
        raise ValueError("vwp_8phi7 needs exactly five lateral parameters")
    lowers = [_aq_over(a, q, p) for p in spec.lateral]
    one = _template([a] + list(spec.lateral) + [spec.argument])
    if one is None and _is_numeric([a, q, spec.argument] + list(_flatten(spec.lateral))):
        a_n, q_n = to_numeric(a), to_numeric(q)
        lowers = [_aq_over(a_n, q_n, to_numeric(p)) for p in spec.lateral]
        inv = 1 / _nonzero(1 - a_n, "1 - a")
        return _hyper_sum(
            [a_n] + [to_numeric(p) for p in spec.lateral], lowers, to_numeric(spec.argument), q_n,
            spec.max_terms, weight=lambda l: (1 - a_n * q_n ** (2 * l)) * inv,
        )
    if isinstance(a, TruncatedSeries):
        inv = series_invert(1 - a)
    else:
        inv = 1 / _nonzero(1 - a, "1 - a")
    return _hyper_sum(
        [a] + list(spec.lateral), lowers, spec.argument, q, spec.max_terms,
        weight=lambda l: (1 - a * q ** (2 * l)) * inv,
    )


def _nonzero(v, what):
    if v == 0:
        raise PoleError(f"{what} vanishes")
    return v


def _aq_over(a, q, p):
    """The partner ``a q / p`` of a lateral parameter."""
    if isinstance(p, MonomialRatio):
        # a q / (num / m) = (a q / num) m
        partner = _divide(a * q, p.numerator)
        if not isinstance(partner, TruncatedSeries):
            raise TypeError("monomial-ratio parameters need a series numerator")
        return partner.shift(p.denominator)
    return _divide(a * q, p)


def _divide(numer, p):
    """``numer / p``; a series ``p`` must be invertible or a single monomial dividing ``numer``."""
    if not isinstance(p, TruncatedSeries):
        return numer / _nonzero(p, "lateral parameter")
    if p.constant_term() != 0:
        return numer * series_invert(p)
    terms = p.items()
    if len(terms) != 1:
        raise PoleError("lateral parameter has zero constant term and is not a monomial", p.render())
    idx, c = terms[0]
    if not isinstance(numer, TruncatedSeries):
        raise PoleError("scalar divided by a monomial is not a power series", p.render())
    return (numer / c).divide_monomial(idx)


# -- numeric products and the bilateral sum ----------------------------------


def qpoch_inf(u, q, tol=None):
    """Numeric ``(u;q)_inf``; stops once ``|u q^M| < tol/10``."""
    u, q = to_numeric(u), to_numeric(q)
    if not abs(q) < 1:
        raise NonConvergent("(u;q)_inf needs |q| < 1")
    tol = mpmath.eps if tol is None else tol
    result = mpmath.mpf(1)
    uq = u
    for _ in range(1_000_000):
        if abs(uq) < tol / 10:
            return result
        result *= 1 - uq
        uq *= q
    raise NonConvergent("infinite product did not settle")


def psi11_product(a, b, q, z, tol=None):
    """Product side of Ramanujan's 1psi1 sum."""
    a, b, q, z = (to_numeric(v) for v in (a, b, q, z))
    num = qpoch_inf(q, q, tol) * qpoch_inf(b / a, q, tol) * qpoch_inf(a * z, q, tol) * qpoch_inf(q / (a * z), q, tol)
    den = qpoch_inf(b, q, tol) * qpoch_inf(q / a, q, tol) * qpoch_inf(z, q, tol) * qpoch_inf(b / (a * z), q, tol)
    if den == 0:
        raise PoleError("1psi1 product side has a vanishing denominator")
    return num / den


def bilateral_1psi1(a, b, q, z, tol=None, max_rings: int = 100_000):
    """``sum_{n in Z} (a;q)_n / (b;q)_n z^n`` inside ``|b/a| < |z| < 1``.

    Rings ``{n, -n}`` are added until three consecutive rings are below
    ``tol`` relative to the partial sum.
    """
    a, b, q, z = (to_numeric(v) for v in (a, b, q, z))
    if not 0 < abs(q) < 1:
        raise OutOfAnnulus("need 0 < |q| < 1")
    if not abs(b / a) < abs(z) < 1:
        raise OutOfAnnulus(f"|b/a| = {mpmath.nstr(abs(b / a), 6)} < |z| = {mpmath.nstr(abs(z), 6)} < 1 fails")
    tol = mpmath.eps * 4 if tol is None else to_numeric(tol)
    total = mpmath.mpf(1)
    pos = mpmath.mpf(1)
    neg = mpmath.mpf(1)
    small_run = 0
    for n in range(max_rings):
        # t_{n+1} = t_n (1 - a q^n) / (1 - b q^n) z
        dpos = 1 - b * q ** n
        if dpos == 0:
            raise PoleError(f"(b;q)_{n + 1} vanishes")
        pos = pos * (1 - a * q ** n) / dpos * z
        # t_{-(n+1)} = t_{-n} (1 - b q^{-(n+1)}) / (1 - a q^{-(n+1)}) / z
        dneg = 1 - a * q ** (-(n + 1))
        if dneg == 0:
            raise PoleError(f"(a;q)_{-(n + 1)} has a pole")
        neg = neg * (1 - b * q ** (-(n + 1))) / dneg / z
        ring = pos + neg
        total += ring
        if abs(pos) + abs(neg) <= tol * abs(total):
            small_run += 1
            if small_run >= 3:
                return total
        else:
            small_run = 0
    raise NonConvergent(f"bilateral sum not settled after {max_rings} rings")
