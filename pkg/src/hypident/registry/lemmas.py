"""Classical summation and transformation formulas used along the way."""

from __future__ import annotations

import math
from fractions import Fraction

from hypident.exact import as_exact, is_integer, pochhammer, q_pochhammer, to_numeric
from hypident.hyper import (
    HypSeriesSpec,
    VwpSpec,
    basic_hyp_phi,
    bilateral_1psi1,
    hyp_f,
    psi11_product,
    qpoch_inf,
    vwp_8phi7,
)
from hypident.registry.core import BOTH, FORMAL, NUMERIC, Constraint, IdentityDescriptor, Side, register
from hypident.series import TruncatedSeries, q_product, series_invert, series_pow


def _get(p, *names):
    return tuple(as_exact(p[n]) for n in names)


def _nonpositive_integer(v) -> bool:
    return is_integer(v) and v <= 0


def _not_q_power(v, q, span=range(-40, 41)) -> bool:
    return all(v != q ** t for t in span)


# -- Chu-Vandermonde and Pfaff-Saalschutz ------------------------------------


def vand_lhs(p, N):
    a, c = _get(p, "a", "c")
    return hyp_f(HypSeriesSpec([a, -N], [c], 1))


def vand_rhs(p, N):
    a, c = _get(p, "a", "c")
    return pochhammer(c - a, N) / pochhammer(c, N)


def pfaff_lhs(p, N):
    a, b, c = _get(p, "a", "b", "c")
    return hyp_f(HypSeriesSpec([a, b, -N], [c, 1 + a + b - c - N], 1))


def pfaff_rhs(p, N):
    a, b, c = _get(p, "a", "b", "c")
    return pochhammer(c - a, N) * pochhammer(c - b, N) / (pochhammer(c, N) * pochhammer(c - a - b, N))


def qvand_lhs(p, N):
    a, c, q = _get(p, "a", "c", "q")
    return basic_hyp_phi(HypSeriesSpec([a, q ** -N], [c], q, base=q))


def qvand_rhs(p, N):
    a, c, q = _get(p, "a", "c", "q")
    return a ** N * q_pochhammer(c / a, q, N) / q_pochhammer(c, q, N)


def qpfaff_lhs(p, N):
    a, b, c, q = _get(p, "a", "b", "c", "q")
    return basic_hyp_phi(HypSeriesSpec([a, b, q ** -N], [c, a * b * q ** (1 - N) / c], q, base=q))


def qpfaff_rhs(p, N):
    a, b, c, q = _get(p, "a", "b", "c", "q")
    return (
        q_pochhammer(c / a, q, N) * q_pochhammer(c / b, q, N)
        / (q_pochhammer(c, q, N) * q_pochhammer(c / (a * b), q, N))
    )


def _vand_ok(p):
    a, c = _get(p, "a", "c")
    return not _nonpositive_integer(c)


def _pfaff_ok(p):
    a, b, c = _get(p, "a", "b", "c")
    # lower parameters c and 1+a+b-c-N must not hit poles before termination
    return not any(is_integer(v) for v in (c, a + b - c, c - a - b))


def _qvand_ok(p):
    a, c, q = _get(p, "a", "c", "q")
    return q not in (0, 1, -1) and a != 0 and _not_q_power(c, q, range(-40, 1))


def _qpfaff_ok(p):
    a, b, c, q = _get(p, "a", "b", "c", "q")
    return (
        q not in (0, 1, -1) and 0 not in (a, b, c)
        and _not_q_power(c, q, range(-40, 1))
        and _not_q_power(c / (a * b), q)
        and _not_q_power(a * b / c, q)
    )


register(IdentityDescriptor(
    id="vand", title="Chu-Vandermonde summation",
    sides=(Side("lhs", "2F1[a, -N; c; 1]", formal=vand_lhs), Side("rhs", "(c-a)_N / (c)_N", formal=vand_rhs)),
    mode=FORMAL, parameters=("a", "c"), formal_target="scalar",
    constraints=(Constraint("c is not a nonpositive integer", _vand_ok),),
    anchor="Chu-Vandermonde summation, N a nonnegative integer",
))

register(IdentityDescriptor(
    id="pfaff", title="Pfaff-Saalschutz summation",
    sides=(
        Side("lhs", "3F2[a, b, -N; c, 1+a+b-c-N; 1]", formal=pfaff_lhs),
        Side("rhs", "(c-a)_N (c-b)_N / ((c)_N (c-a-b)_N)", formal=pfaff_rhs),
    ),
    mode=FORMAL, parameters=("a", "b", "c"), formal_target="scalar",
    constraints=(Constraint("c, a+b-c are not integers", _pfaff_ok),),
    anchor="Pfaff-Saalschutz summation of a balanced terminating 3F2",
))

register(IdentityDescriptor(
    id="qvand", title="q-Chu-Vandermonde summation",
    sides=(
        Side("lhs", "2phi1[a, q^-N; c; q, q]", formal=qvand_lhs),
        Side("rhs", "a^N (c/a;q)_N / (c;q)_N", formal=qvand_rhs),
    ),
    mode=FORMAL, parameters=("a", "c", "q"), formal_target="scalar",
    constraints=(Constraint("c is not q^-k; q not in {0, 1, -1}", _qvand_ok),),
    anchor="q-analogue of the Chu-Vandermonde summation (argument q)",
))

register(IdentityDescriptor(
    id="qpfaff", title="q-Pfaff-Saalschutz summation",
    sides=(
        Side("lhs", "3phi2[a, b, q^-N; c, ab q^(1-N)/c; q, q]", formal=qpfaff_lhs),
        Side("rhs", "(c/a;q)_N (c/b;q)_N / ((c;q)_N (c/ab;q)_N)", formal=qpfaff_rhs),
    ),
    mode=FORMAL, parameters=("a", "b", "c", "q"), formal_target="scalar",
    constraints=(Constraint("c, c/ab avoid integer powers of q", _qpfaff_ok),),
    anchor="q-analogue of the Pfaff-Saalschutz summation",
))


# -- q-binomial theorem -------------------------------------------------------

QBIN_VARS = ("z",)


def qbin_lhs(p, order):
    a, q = _get(p, "a", "q")
    z = TruncatedSeries.variable("z", QBIN_VARS, order)
    return basic_hyp_phi(HypSeriesSpec([a], [], z, base=q))


def qbin_rhs(p, order):
    a, q = _get(p, "a", "q")
    z = TruncatedSeries.variable("z", QBIN_VARS, order)
    return q_product(a * z, q, math.inf) * series_invert(q_product(z, q, math.inf))


def qbin_lhs_numeric(p):
    a, q, z = (to_numeric(p[k]) for k in ("a", "q", "z"))
    return basic_hyp_phi(HypSeriesSpec([a], [], z, base=q))


def qbin_rhs_numeric(p):
    a, q, z = (to_numeric(p[k]) for k in ("a", "q", "z"))
    return qpoch_inf(a * z, q) / qpoch_inf(z, q)


register(IdentityDescriptor(
    id="qbin", title="q-binomial theorem",
    sides=(
        Side("lhs", "sum (a;q)_l z^l / (q;q)_l", formal=qbin_lhs, numeric=qbin_lhs_numeric),
        Side("rhs", "(az;q)_inf / (z;q)_inf", formal=qbin_rhs, numeric=qbin_rhs_numeric),
    ),
    mode=BOTH, parameters=("a", "q"), variables=QBIN_VARS,
    constraints=(
        Constraint("0 < |q| < 1", lambda p: 0 < abs(to_numeric(p["q"])) < 1),
        Constraint("|z| < 1", lambda p: abs(to_numeric(p["z"])) < 1, applies_to=NUMERIC),
    ),
    anchor="q-binomial theorem",
))


# -- Euler's 2F1 transformation ----------------------------------------------

EULER_VARS = ("x", "y", "z")


def _euler_argument(order):
    x, y, z = (TruncatedSeries.variable(v, EULER_VARS, order) for v in EULER_VARS)
    return x + y * z - 2 * x * y + z / 3


def euler_lhs(p, order):
    a, b, c = _get(p, "a", "b", "c")
    return hyp_f(HypSeriesSpec([a, b], [c], _euler_argument(order)))


def euler_rhs(p, order):
    a, b, c = _get(p, "a", "b", "c")
    w = _euler_argument(order)
    return series_pow(1 - w, -a) * hyp_f(HypSeriesSpec([a, c - b], [c], -w * series_invert(1 - w)))


register(IdentityDescriptor(
    id="euler-2f1", title="Euler's 2F1 transformation",
    sides=(
        Side("lhs", "2F1[a, b; c; w]", formal=euler_lhs),
        Side("rhs", "(1-w)^-a 2F1[a, c-b; c; -w/(1-w)]", formal=euler_rhs),
    ),
    mode=FORMAL, parameters=("a", "b", "c"), variables=EULER_VARS,
    constraints=(Constraint("c is not a nonpositive integer", lambda p: not _nonpositive_integer(as_exact(p["c"]))),),
    anchor="Euler's transformation relating the two 2F1 product forms; w = x + yz - 2xy + z/3",
))


# -- Bailey's very-well-poised 8phi7 transformation ----------------------------

BAILEY_PARAMS = ("a", "b", "c", "d", "f", "q")


def _bailey_values(p, N=None):
    a, b, c, d, f, q = (p[k] for k in BAILEY_PARAMS)
    e = q ** -N if N is not None else p["e"]
    return a, b, c, d, e, f, q


def _bailey_left(a, b, c, d, e, f, q):
    return vwp_8phi7(VwpSpec(a, [b, c, d, e, f], q, a * a * q * q / (b * c * d * e * f)))


def _bailey_right_series(a, b, c, d, e, f, q):
    lam = a * a * q / (b * c * d)
    return vwp_8phi7(VwpSpec(lam, [a * q / (c * d), a * q / (b * d), a * q / (b * c), e, f], q, a * q / (e * f)))


def bailey_lhs(p, N):
    return _bailey_left(*_bailey_values({k: as_exact(v) for k, v in p.items()}, N))


def bailey_rhs(p, N):
    a, b, c, d, e, f, q = _bailey_values({k: as_exact(v) for k, v in p.items()}, N)
    lam = a * a * q * q / (b * c * d)
    # With e = q^-N the four infinite-product ratios collapse to finite ones.
    pref = (
        q_pochhammer(a * q, q, N) * q_pochhammer(lam / f, q, N)
        / (q_pochhammer(a * q / f, q, N) * q_pochhammer(lam, q, N))
    )
    return pref * _bailey_right_series(a, b, c, d, e, f, q)


def bailey_lhs_numeric(p):
    vals = {k: to_numeric(v) for k, v in p.items()}
    return _bailey_left(*_bailey_values(vals))


def bailey_rhs_numeric(p):
    a, b, c, d, e, f, q = _bailey_values({k: to_numeric(v) for k, v in p.items()})
    lam = a * a * q * q / (b * c * d)
    num = qpoch_inf(a * q, q) * qpoch_inf(a * q / (e * f), q) * qpoch_inf(lam / e, q) * qpoch_inf(lam / f, q)
    den = qpoch_inf(a * q / e, q) * qpoch_inf(a * q / f, q) * qpoch_inf(lam, q) * qpoch_inf(lam / (e * f), q)
    return num / den * _bailey_right_series(a, b, c, d, e, f, q)


def _bailey_ok(p):
    try:
        a, b, c, d, f, q = (as_exact(p[k]) for k in BAILEY_PARAMS)
    except (TypeError, ValueError):
        return True
    if q in (0, 1, -1) or 0 in (a, b, c, d, f):
        return False
    lam = a * a * q * q / (b * c * d)
    partners = [a * q / v for v in (b, c, d, f)] + [a * q / (c * d), a * q / (b * d), a * q / (b * c)]
    risky = [a, a * q, lam, lam / q, a * q / f] + partners
    return all(_not_q_power(v, q) for v in risky)


def _bailey_convergent(p):
    a, b, c, d, e, f, q = (to_numeric(p[k]) for k in ("a", "b", "c", "d", "e", "f", "q"))
    return abs(a * a * q * q / (b * c * d * e * f)) < 1 and abs(a * q / (e * f)) < 1 and 0 < abs(q) < 1


register(IdentityDescriptor(
    id="bailey", title="Bailey's very-well-poised 8phi7 transformation",
    sides=(
        Side("lhs", "8phi7[a; b, c, d, e, f; q, a^2q^2/bcdef]", formal=bailey_lhs, numeric=bailey_lhs_numeric),
        Side("rhs", "product ratio times 8phi7[a^2q/bcd; aq/cd, aq/bd, aq/bc, e, f; q, aq/ef]",
             formal=bailey_rhs, numeric=bailey_rhs_numeric),
    ),
    mode=BOTH, parameters=BAILEY_PARAMS, formal_target="scalar",
    constraints=(
        Constraint("no parameter partner is an integer power of q", _bailey_ok, applies_to=FORMAL),
        Constraint("|a^2q^2/bcdef| < 1 and |aq/ef| < 1", _bailey_convergent, applies_to=NUMERIC),
    ),
    anchor="Bailey's very-well-poised 8phi7 transformation; formal target N sets e = q^-N",
    notes="numeric mode reads e from the parameters",
))


# -- Ramanujan's 1psi1 ---------------------------------------------------------


def psi11_lhs(p):
    return bilateral_1psi1(p["a"], p["b"], p["q"], p["z"])


def psi11_rhs(p):
    return psi11_product(p["a"], p["b"], p["q"], p["z"])


def psi11_annulus(p):
    a, b, q, z = (abs(to_numeric(p[k])) for k in ("a", "b", "q", "z"))
    return 0 < q < 1 and b / a < z < 1


register(IdentityDescriptor(
    id="1psi1", title="Ramanujan's 1psi1 summation",
    sides=(
        Side("sum", "bilateral sum of (a;q)_n / (b;q)_n z^n", numeric=psi11_lhs),
        Side("product", "ratio of eight infinite products", numeric=psi11_rhs),
    ),
    mode=NUMERIC, parameters=("a", "b", "q"), variables=("z",),
    constraints=(Constraint("|b/a| < |z| < 1 and 0 < |q| < 1", psi11_annulus, applies_to=NUMERIC),),
    anchor="Ramanujan's 1psi1 summation, convergent for |b/a| < |z| < 1",
))
