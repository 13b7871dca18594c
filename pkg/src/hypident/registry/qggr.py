"""q-analogues of the Gelfand-Graev-Retakh identity.

``ggrq`` and ``ggrq1`` are formal-only: their sides diverge analytically for
every ``q``.  ``ggrq2`` is a true formal identity but fails analytically; its
numeric comparison is an expected failure corrected by the two-term form
``ggrq5``.  ``ggrq3``, ``ggrq4`` and ``8phi7`` hold in both senses.

Formal right-hand sides contain parameters such as ``beta*y/x``.  These are
passed as :class:`MonomialRatio` values, so every term is a genuine power
series once the ``x`` powers are collected against the argument.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath

from hypident.errors import NonConvergent, PoleError
from hypident.exact import as_exact, q_pochhammer, to_numeric
from hypident.hyper import HypSeriesSpec, VwpSpec, basic_hyp_phi, over, qpoch_inf, vwp_8phi7
from hypident.registry.core import BOTH, FORMAL, NUMERIC, Constraint, IdentityDescriptor, Side, register
from hypident.registry.ggr import VARS, series_from_coefficients
from hypident.series import TruncatedSeries, q_product, series_invert

PARAMS = ("alpha", "beta", "gamma", "q")
SAMPLE_BASES = (Fraction(1, 2), Fraction(1, 3), Fraction(2, 5), Fraction(3, 7))


def _exact(p):
    return tuple(as_exact(p[k]) for k in PARAMS)


def _numeric(p):
    return tuple(to_numeric(p[k]) for k in PARAMS + VARS)


def _binom2(n: int) -> int:
    return n * (n - 1) // 2


# -- coefficient formulas -----------------------------------------------------


def plain_lhs_coefficient(p, X: int, Y: int, Z: int):
    """Coefficient of ``x^X y^Y z^Z`` in the q-triple sum without q-power weights."""
    a, b, g, q = _exact(p)
    s = X + Y - Z
    num = q_pochhammer(a, q, X) * q_pochhammer(b, q, Y) * q_pochhammer(q / g, q, Z) * q_pochhammer(g, q, s)
    den = (
        q_pochhammer(q, q, X) * q_pochhammer(q, q, Y) * q_pochhammer(q, q, Z) * q_pochhammer(a * b, q, s)
    )
    return num / den


def ggrq_lhs_coefficient(p, X: int, Y: int, Z: int):
    """Left side of the weighted formal q-analogue (quadratic q-powers, diverges for |q|<1)."""
    a, b, g, q = _exact(p)
    weight = q ** (-_binom2(Y) - _binom2(Z)) * a ** (-Z) * b ** (X - Z) * g ** (2 * Z - X - Y)
    return weight * plain_lhs_coefficient(p, X, Y, Z)


def ggrq_rhs_coefficient_bruteforce(variant: str, p, X: int, Y: int, Z: int):
    """Finite sextuple sum giving the right-side coefficient of ``x^X y^Y z^Z``.

    Finiteness: the monomial constraints bound every index except ``n``,
    and ``(q^-n; q)_m`` vanishes for ``m > n``.
    """
    if variant == "ggrq":
        return _ggrq_rhs(p, X, Y, Z)
    if variant == "ggrq1":
        return _ggrq1_rhs(p, X, Y, Z)
    raise ValueError(f"unknown variant {variant!r}")


def _ggrq_rhs(p, X, Y, Z):
    # x^(i+l+n-m) y^(j+m) z^(k+l)
    a, b, g, q = _exact(p)
    qp = q_pochhammer
    total = Fraction(0)
    for m in range(Y + 1):
        j = Y - m
        for l in range(Z + 1):
            k = Z - l
            for n in range(0, X - l + m + 1):
                i = X - l - n + m
                tail = qp(q ** -n, q, m)
                if tail == 0:
                    continue
                e = m * n - k * l - j * m - l * n - _binom2(j) - _binom2(k) - _binom2(l) - _binom2(m)
                head = qp(b, q, n) * qp(a * b / g, q, n) / (qp(a * b, q, n) * qp(q, q, n))
                body = (
                    qp(g / b, q, i)
                    * qp(b * q ** n, q, j)
                    * qp(q ** (1 - n) / (a * b), q, k)
                    * qp(a * b * q ** n / g, q, l)
                    * tail
                ) / (qp(q, q, i) * qp(q, q, j) * qp(q, q, k) * qp(q, q, l) * qp(q, q, m))
                total += q ** e * a ** (-l) * b ** (i - l) * g ** (-i - j + k + l) * head * body
    return total


def _ggrq1_rhs(p, X, Y, Z):
    # x^(i+l+m) y^(j+n-m) z^(j+k+l)
    a, b, g, q = _exact(p)
    qp = q_pochhammer
    total = Fraction(0)
    for l in range(min(X, Z) + 1):
        for m in range(X - l + 1):
            i = X - l - m
            for j in range(Z - l + 1):
                k = Z - j - l
                n = Y - j + m
                if n < 0:
                    continue
                tail = qp(q ** -n, q, m)
                if tail == 0:
                    continue
                head = qp(b, q, n) * qp(g, q, n) / (qp(a * b, q, n) * qp(q, q, n))
                body = (
                    qp(g * q ** n, q, i)
                    * qp(b * q ** n, q, j)
                    * qp(q ** (1 - n) / (a * b), q, k)
                    * qp(a / g, q, l)
                    * tail
                ) / (qp(q, q, i) * qp(q, q, j) * qp(q, q, k) * qp(q, q, l) * qp(q, q, m))
                total += q ** (k * n - i * n + m) * a ** k * b ** (k - i - m) * g ** (-k) * head * body
    return total


# -- formal sides -------------------------------------------------------------


def _ring(order):
    return tuple(TruncatedSeries.variable(v, VARS, order) for v in VARS)


def _inf_ratio(q, numerators, denominators):
    """prod (u;q)_inf over prod (v;q)_inf for series with zero constant term."""
    num = None
    for u in numerators:
        f = q_product(u, q, math.inf)
        num = f if num is None else num * f
    den = None
    for v in denominators:
        f = q_product(v, q, math.inf)
        den = f if den is None else den * f
    return num * series_invert(den)


def ggrq_lhs_series(p, order):
    return series_from_coefficients(lambda X, Y, Z: ggrq_lhs_coefficient(p, X, Y, Z), order)


def ggrq_rhs_series(p, order):
    return series_from_coefficients(lambda X, Y, Z: _ggrq_rhs(p, X, Y, Z), order)


def plain_lhs_series(p, order):
    return series_from_coefficients(lambda X, Y, Z: plain_lhs_coefficient(p, X, Y, Z), order)


def ggrq1_rhs_series(p, order):
    return series_from_coefficients(lambda X, Y, Z: _ggrq1_rhs(p, X, Y, Z), order)


def ggrq2_rhs_series(p, order):
    a, b, g, q = _exact(p)
    x, y, z = _ring(order)
    one = x ** 0
    pref = _inf_ratio(
        q,
        [g * x / b, q * z / g, a * x * z / g, b * y * z],
        [x / b, a * b * z / g, x * z, y * z],
    )
    phi = basic_hyp_phi(
        HypSeriesSpec(
            upper=[b, a * b * z / g, over(b * y, "x"), g],
            lower=[a * b, b * y * z, over(q * b * one, "x")],
            argument=q,
            base=q,
        )
    )
    return pref * phi


def ggrq3_rhs_series(p, order):
    a, b, g, q = _exact(p)
    x, y, z = _ring(order)
    pref = _inf_ratio(
        q,
        [g * x / b, b * y, q * z / g, a * b * x * z / g, b * y * z, a * b * y * z / g],
        [x, y, a * b * z / g, x * z, y * z, a * b * b * y * z / g],
    )
    phi = vwp_8phi7(
        VwpSpec(
            a=a * b * b * y * z / (g * q),
            lateral=[a * b * z / g, b * y * z / g, b, a * b / g, over(b * y, "x")],
            base=q,
            argument=g * x / b,
        )
    )
    return pref * phi


def ggrq4_rhs_series(p, order):
    a, b, g, q = _exact(p)
    x, y, z = _ring(order)
    one = x ** 0
    pref = _inf_ratio(
        q,
        [g * x, q * z / g, a * x * z / g, b * y * z, b * y, g * y],
        [x, a * b * z / g, x * z, y * z, b * g * y, y],
    )
    phi = vwp_8phi7(
        VwpSpec(
            a=b * g * y / q,
            lateral=[g * one, b * one, g * y / a, over(b * y, "x"), over(g * one, "z")],
            base=q,
            argument=a * x * z / g,
        )
    )
    return pref * phi


def vwp_form_rhs_series(p, order):
    a, b, g, q = _exact(p)
    x, y, z = _ring(order)
    one = x ** 0
    pref = _inf_ratio(
        q,
        [a * x, b * y, g * y, q * z / g, a * b * y * z / g],
        [x, y, a * b * y, a * b * z / g, y * z],
    )
    phi = vwp_8phi7(
        VwpSpec(
            a=a * b * y / q,
            lateral=[a * one, y, over(g * one, "z"), a * b / g * one, over(b * y, "x")],
            base=q,
            argument=x * z,
        )
    )
    return pref * phi


# -- numeric sides ------------------------------------------------------------


def plain_lhs_numeric(p, tol=None, start: int = 32, max_terms: int = 4096):
    """The q-triple sum at a point, truncated at ``j, k, m <= M`` with ``M`` doubled until stable."""
    a, b, g, q, x, y, z = _numeric(p)
    tol = mpmath.eps * 8 if tol is None else tol
    previous = None
    M = start
    while M <= max_terms:
        value = _triple_sum(a, b, g, q, x, y, z, M)
        if previous is not None and abs(value - previous) <= tol * abs(value):
            return value
        previous = value
        M *= 2
    raise NonConvergent(f"q-triple sum not settled at M={max_terms}")


def _triple_sum(a, b, g, q, x, y, z, M):
    def unilateral(c, arg):
        out = [mpmath.mpf(1)]
        for t in range(M):
            out.append(out[-1] * (1 - c * q ** t) / (1 - q ** (t + 1)) * arg)
        return out

    A = unilateral(a, x)
    B = unilateral(b, y)
    C = unilateral(q / g, z)
    # D[s] = (g;q)_s / (ab;q)_s for s in [-M, 2M]
    D = {0: mpmath.mpf(1)}
    for t in range(2 * M):
        den = 1 - a * b * q ** t
        if den == 0:
            raise PoleError("(alpha beta; q) vanishes")
        D[t + 1] = D[t] * (1 - g * q ** t) / den
    for t in range(1, M + 1):
        den = 1 - g * q ** (-t)
        if den == 0:
            raise PoleError("(gamma; q)_{-t} has a pole")
        D[-t] = D[-t + 1] * (1 - a * b * q ** (-t)) / den
    total = mpmath.mpf(0)
    for s in range(2 * M + 1):
        F = mpmath.fsum(A[j] * B[s - j] for j in range(max(0, s - M), min(s, M) + 1))
        E = mpmath.fsum(C[m] * D[s - m] for m in range(M + 1))
        total += F * E
    return total


def _n_inf_ratio(q, numerators, denominators):
    num = mpmath.mpf(1)
    for u in numerators:
        num *= qpoch_inf(u, q)
    den = mpmath.mpf(1)
    for v in denominators:
        den *= qpoch_inf(v, q)
    if den == 0:
        raise PoleError("infinite product in a denominator vanishes")
    return num / den


def ggrq2_rhs_numeric(p):
    """First term of the two-term form; the analytic reading of the formal ggrq2 right side."""
    a, b, g, q, x, y, z = _numeric(p)
    pref = _n_inf_ratio(q, [g * x / b, q * z / g, a * x * z / g, b * y * z], [x / b, a * b * z / g, x * z, y * z])
    phi = basic_hyp_phi(
        HypSeriesSpec(upper=[b, a * b * z / g, b * y / x, g], lower=[a * b, b * y * z, q * b / x], argument=q, base=q)
    )
    return pref * phi


def ggrq5_second_term_numeric(p):
    a, b, g, q, x, y, z = _numeric(p)
    pref = _n_inf_ratio(
        q,
        [q * z / g, b, g, b * y / x, a * x, x * y * z],
        [x, y, x * z, y * z, a * b, b / x],
    )
    phi = basic_hyp_phi(
        HypSeriesSpec(upper=[x, y, g * x / b, a * x * z / g], lower=[a * x, x * y * z, q * x / b], argument=q, base=q)
    )
    return pref * phi


def ggrq5_rhs_numeric(p):
    return ggrq2_rhs_numeric(p) + ggrq5_second_term_numeric(p)


def ggrq3_rhs_numeric(p):
    a, b, g, q, x, y, z = _numeric(p)
    pref = _n_inf_ratio(
        q,
        [g * x / b, b * y, q * z / g, a * b * x * z / g, b * y * z, a * b * y * z / g],
        [x, y, a * b * z / g, x * z, y * z, a * b * b * y * z / g],
    )
    phi = vwp_8phi7(
        VwpSpec(a=a * b * b * y * z / (g * q), lateral=[a * b * z / g, b * y * z / g, b, a * b / g, b * y / x], base=q, argument=g * x / b)
    )
    return pref * phi


def ggrq4_rhs_numeric(p):
    a, b, g, q, x, y, z = _numeric(p)
    pref = _n_inf_ratio(
        q,
        [g * x, q * z / g, a * x * z / g, b * y * z, b * y, g * y],
        [x, a * b * z / g, x * z, y * z, b * g * y, y],
    )
    phi = vwp_8phi7(
        VwpSpec(a=b * g * y / q, lateral=[g, b, g * y / a, b * y / x, g / z], base=q, argument=a * x * z / g)
    )
    return pref * phi


def vwp_form_rhs_numeric(p):
    a, b, g, q, x, y, z = _numeric(p)
    pref = _n_inf_ratio(
        q,
        [a * x, b * y, g * y, q * z / g, a * b * y * z / g],
        [x, y, a * b * y, a * b * z / g, y * z],
    )
    phi = vwp_8phi7(VwpSpec(a=a * b * y / q, lateral=[a, y, g / z, a * b / g, b * y / x], base=q, argument=x * z))
    return pref * phi


# -- admissibility ------------------------------------------------------------


def _is_power_of(v, q, exponents):
    return any(v == q ** t for t in exponents)


def q_admissible(p, bound: int = 40) -> bool:
    """No q-Pochhammer denominator of any side can vanish.

    Poles come only from ``(alpha beta; q)_n`` with ``n >= 0`` and from
    ``(gamma; q)_n`` with ``n < 0``; zero numerator factors are harmless.
    """
    try:
        a, b, g, q = _exact(p)
    except (TypeError, ValueError):
        return True
    if q in (0, 1, -1) or 0 in (a, b, g):
        return False
    return not (
        _is_power_of(a * b, q, range(-bound, 1)) or _is_power_of(g, q, range(1, bound + 1))
    )


def q_generic(p, bound: int = 20) -> bool:
    """Stricter sampling filter: no parameter combination is an integer power of q."""
    if not q_admissible(p):
        return False
    a, b, g, q = _exact(p)
    span = range(-bound, bound + 1)
    return not any(_is_power_of(v, q, span) for v in (a, b, g, a * b, a * b / g, g / b, a / g, a * b * b / g))


def _mag(p, *names):
    return [abs(to_numeric(p[n])) for n in names]


def ggrq3_domain(p) -> bool:
    """max(|x|,|y|,|ab/g|) < min(1, 1/|z|) and |g x / b| < 1."""
    a, b, g, q, x, y, z = (abs(v) for v in _numeric(p))
    bound = 1 if z <= 1 else 1 / z
    return max(x, y, a * b / g) < bound and g * x / b < 1 and 0 < abs(q) < 1


def small_point(p, limit=Fraction(1, 2)) -> bool:
    """Nonzero variables inside the box where the triple sum and both products converge."""
    a, b, g, q, x, y, z = (abs(v) for v in _numeric(p))
    lim = to_numeric(limit)
    return (
        0 < x <= lim and 0 < y <= lim and 0 < z <= lim
        and a * b * z / g < 1 and x < 1 and y < 1 and 0 < q < 1
    )


_q_constraint = Constraint("alpha, beta, gamma, alpha*beta avoid integer powers of q; q not in {0, 1, -1}", q_admissible)

register(
    IdentityDescriptor(
        id="ggrq",
        title="weighted formal q-analogue (triple sum = sextuple sum)",
        sides=(
            Side("lhs", "closed coefficient with quadratic q-powers", formal=ggrq_lhs_series),
            Side("rhs", "constrained sextuple sum, brute force", formal=ggrq_rhs_series),
        ),
        mode=FORMAL,
        parameters=PARAMS,
        variables=VARS,
        constraints=(_q_constraint,),
        anchor="formal q-analogue of the triple sum = 2F1 equality; left side diverges for |q|<1, right side for |q|>1",
    )
)

register(
    IdentityDescriptor(
        id="ggrq1",
        title="plain formal q-analogue (triple sum = sextuple sum, Euler-transformed form)",
        sides=(
            Side("lhs", "closed q-Pochhammer coefficient", formal=plain_lhs_series),
            Side("rhs", "constrained sextuple sum, brute force", formal=ggrq1_rhs_series),
        ),
        mode=FORMAL,
        parameters=PARAMS,
        variables=VARS,
        constraints=(_q_constraint,),
        anchor="formal q-analogue of the Euler-transformed equality; right side never converges",
    )
)

register(
    IdentityDescriptor(
        id="ggrq2",
        title="compact formal q-analogue: products times a balanced 4phi3",
        sides=(
            Side("lhs", "q-triple sum", formal=plain_lhs_series, numeric=plain_lhs_numeric),
            Side("rhs", "infinite products times balanced 4phi3", formal=ggrq2_rhs_series, numeric=ggrq2_rhs_numeric),
        ),
        mode=BOTH,
        parameters=PARAMS,
        variables=VARS,
        constraints=(
            _q_constraint,
            Constraint("nonzero small point", small_point, applies_to=NUMERIC),
        ),
        anchor="balanced 4phi3 form: true formally, analytically missing the second term of ggrq5",
        numeric_expected_fail=True,
    )
)

register(
    IdentityDescriptor(
        id="ggrq3",
        title="analytic q-analogue via a very-well-poised 8phi7 (argument gamma x / beta)",
        sides=(
            Side("lhs", "q-triple sum", formal=plain_lhs_series, numeric=plain_lhs_numeric),
            Side("rhs", "infinite products times VWP 8phi7", formal=ggrq3_rhs_series, numeric=ggrq3_rhs_numeric),
        ),
        mode=BOTH,
        parameters=PARAMS,
        variables=VARS,
        constraints=(
            _q_constraint,
            Constraint("max(|x|,|y|,|alpha beta/gamma|) < min(1, 1/|z|) and |gamma x/beta| < 1", ggrq3_domain, applies_to=NUMERIC),
        ),
        anchor="q-analogue of the triple sum = first 2F1 form, valid analytically and formally",
    )
)

register(
    IdentityDescriptor(
        id="ggrq4",
        title="analytic q-analogue via a very-well-poised 8phi7 (argument alpha x z / gamma)",
        sides=(
            Side("lhs", "q-triple sum", formal=plain_lhs_series, numeric=plain_lhs_numeric),
            Side("rhs", "infinite products times VWP 8phi7", formal=ggrq4_rhs_series, numeric=ggrq4_rhs_numeric),
        ),
        mode=BOTH,
        parameters=PARAMS,
        variables=VARS,
        constraints=(_q_constraint, Constraint("nonzero small point", small_point, applies_to=NUMERIC)),
        anchor="q-analogue of the triple sum = Euler-transformed 2F1 form; no convergence region is stated",
    )
)

register(
    IdentityDescriptor(
        id="ggrq5",
        title="two-term analytic form: balanced 4phi3 plus correction",
        sides=(
            Side("lhs", "q-triple sum", numeric=plain_lhs_numeric),
            Side("rhs", "products times 4phi3, plus the second 4phi3 term", numeric=ggrq5_rhs_numeric),
        ),
        mode=NUMERIC,
        parameters=PARAMS,
        variables=VARS,
        constraints=(_q_constraint, Constraint("nonzero small point", small_point, applies_to=NUMERIC)),
        anchor="alternative two-term expression of the q-triple sum; its first term is the ggrq2 right side",
    )
)

register(
    IdentityDescriptor(
        id="8phi7",
        title="q-triple sum as products times a VWP 8phi7 in the argument x z",
        sides=(
            Side("lhs", "q-triple sum", formal=plain_lhs_series, numeric=plain_lhs_numeric),
            Side("rhs", "infinite products times VWP 8phi7", formal=vwp_form_rhs_series, numeric=vwp_form_rhs_numeric),
        ),
        mode=BOTH,
        parameters=PARAMS,
        variables=VARS,
        constraints=(_q_constraint, Constraint("nonzero small point", small_point, applies_to=NUMERIC)),
        anchor="the combined very-well-poised form from which both 8phi7 analogues follow by Bailey's transformation",
    )
)
