"""Andrews's multivariable q-Heine transformation.

The left side is unambiguous:

    sum over k_1..k_n >= 0 of (a;q)_{|k|} / (c;q)_{|k|} * prod_j (b_j;q)_{k_j} / (q;q)_{k_j} x_j^{k_j}

The printed right side uses symbols ``c, d, a_j`` and a lower ``a x_j`` that
do not all appear on the left.  Each entry of :data:`READINGS` assigns left
side symbols to those printed slots; :func:`screen_readings` compares every
reading with the left side numerically, and only the reading that survives
(:data:`ANDREWS_READING`) is used for the registered identity.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath

from hypident.errors import ConstraintViolation, NonTerminating
from hypident.exact import as_exact, q_pochhammer, to_numeric
from hypident.hyper import HypSeriesSpec, basic_hyp_phi, qpoch_inf
from hypident.registry.core import BOTH, FORMAL, NUMERIC, Constraint, IdentityDescriptor, Side, register
from hypident.series import TruncatedSeries, monomials, q_product, series_invert

MAX_N = 4

# printed slot -> left-side symbol; "b" stands for b_j of the matching index
READINGS = {
    "heine": {"c": "a", "d": "c", "a_j": "b", "lower": "b"},
    "rename-literal-lower": {"c": "a", "d": "c", "a_j": "b", "lower": "a"},
    "as-printed-d-is-a": {"c": "c", "d": "a", "a_j": "b", "lower": "b"},
    "as-printed-d-is-a-literal-lower": {"c": "c", "d": "a", "a_j": "b", "lower": "a"},
    "upper-and-lower-a": {"c": "a", "d": "c", "a_j": "a", "lower": "a"},
}
ANDREWS_READING = "heine"


def variables_for(n: int) -> tuple:
    return tuple(f"x{j}" for j in range(1, n + 1))


def _n(p) -> int:
    n = p.get("n")
    if n is None:
        n = sum(1 for j in range(1, MAX_N + 1) if f"b{j}" in p)
    n = int(n)
    if not 1 <= n <= MAX_N:
        raise ConstraintViolation(f"andrews: n must be in 1..{MAX_N}, got {n}")
    return n


def _slot(p, reading, slot, j=None):
    name = READINGS[reading][slot]
    return p[f"b{j}"] if name == "b" else p[name]


# -- left side ------------------------------------------------------------------


def lhs_series(p, order: int) -> TruncatedSeries:
    n = _n(p)
    a, c, q = (as_exact(p[k]) for k in ("a", "c", "q"))
    bs = [as_exact(p[f"b{j}"]) for j in range(1, n + 1)]
    coeffs = {}
    for idx in monomials(n, order):
        s = sum(idx)
        v = q_pochhammer(a, q, s) / q_pochhammer(c, q, s)
        for b, k in zip(bs, idx):
            v *= q_pochhammer(b, q, k) / q_pochhammer(q, q, k)
        if v:
            coeffs[idx] = v
    return TruncatedSeries(variables_for(n), order, coeffs)


def lhs_numeric(p, start: int = 32, max_terms: int = 4096):
    """The n-fold sum, grouped by total degree and cut when the degree groups settle."""
    n = _n(p)
    a, c, q = (to_numeric(p[k]) for k in ("a", "c", "q"))
    bs = [to_numeric(p[f"b{j}"]) for j in range(1, n + 1)]
    xs = [to_numeric(p[f"x{j}"]) for j in range(1, n + 1)]
    tol = mpmath.eps * 4
    M = start
    previous = None
    while M <= max_terms:
        # per-variable weights h_j[k] = (b_j;q)_k x_j^k / (q;q)_k, convolved by total degree
        conv = [mpmath.mpf(1)] + [mpmath.mpf(0)] * M
        for b, x in zip(bs, xs):
            h = [mpmath.mpf(1)]
            for k in range(M):
                h.append(h[-1] * (1 - b * q ** k) / (1 - q ** (k + 1)) * x)
            conv = [mpmath.fsum(conv[i] * h[s - i] for i in range(s + 1)) for s in range(M + 1)]
        g = mpmath.mpf(1)
        total = mpmath.mpf(0)
        for s in range(M + 1):
            total += g * conv[s]
            g *= (1 - a * q ** s) / (1 - c * q ** s)
        if previous is not None and abs(total - previous) <= tol * abs(total):
            return total
        previous = total
        M *= 2
    raise mpmath.libmp.NoConvergence("andrews left side did not settle")


# -- right side -------------------------------------------------------------------


def exact_inf_ratio(u, v, q):
    """``(u;q)_inf / (v;q)_inf`` when ``u/v`` is an integer power of q."""
    for M in range(0, 65):
        if u == v * q ** M:
            return 1 / q_pochhammer(v, q, M)
        if v == u * q ** M:
            return q_pochhammer(u, q, M)
    raise NonTerminating("ratio of infinite products is not a finite product at these parameters")


def rhs_series(p, order: int, reading: str = ANDREWS_READING) -> TruncatedSeries:
    n = _n(p)
    q = as_exact(p["q"])
    ex = {k: as_exact(v) for k, v in p.items() if k != "n"}
    C, D = _slot(ex, reading, "c"), _slot(ex, reading, "d")
    names = variables_for(n)
    xs = [TruncatedSeries.variable(v, names, order) for v in names]
    result = TruncatedSeries.constant(exact_inf_ratio(C, D, q), names, order)
    for j, x in enumerate(xs, 1):
        result = result * q_product(_slot(ex, reading, "a_j", j) * x, q, math.inf)
        result = result * series_invert(q_product(x, q, math.inf))
    upper = [D / C] + xs
    lower = [_slot(ex, reading, "lower", j) * x for j, x in enumerate(xs, 1)]
    return result * basic_hyp_phi(HypSeriesSpec(upper, lower, C, base=q))


def rhs_numeric(p, reading: str = ANDREWS_READING):
    n = _n(p)
    num = {k: to_numeric(v) for k, v in p.items() if k != "n"}
    q = num["q"]
    C, D = _slot(num, reading, "c"), _slot(num, reading, "d")
    xs = [num[f"x{j}"] for j in range(1, n + 1)]
    result = qpoch_inf(C, q) / qpoch_inf(D, q)
    for j, x in enumerate(xs, 1):
        result *= qpoch_inf(_slot(num, reading, "a_j", j) * x, q) / qpoch_inf(x, q)
    upper = [D / C] + xs
    lower = [_slot(num, reading, "lower", j) * x for j, x in enumerate(xs, 1)]
    return result * basic_hyp_phi(HypSeriesSpec(upper, lower, C, base=q))


def screen_readings(p) -> dict:
    """Relative defect of every candidate reading against the left side at a numeric point."""
    left = lhs_numeric(p)
    out = {}
    for name in READINGS:
        try:
            out[name] = float(abs(rhs_numeric(p, name) - left) / abs(left))
        except (ArithmeticError, ValueError, mpmath.libmp.NoConvergence) as exc:
            out[name] = exc
    return out


# -- constraints -------------------------------------------------------------------


def _has_bs(p) -> bool:
    try:
        n = _n(p)
    except (ValueError, TypeError):
        return False
    return all(f"b{j}" in p for j in range(1, n + 1))


def terminating_slice(p) -> bool:
    """Formal checks need c = a q^-M so the right-side series terminates."""
    a, c, q = (as_exact(p[k]) for k in ("a", "c", "q"))
    if q in (0, 1, -1) or a == 0:
        return False
    if any(c == q ** -t for t in range(0, 41)):
        return False
    return any(c == a * q ** -M for M in range(0, 41))


def numeric_domain(p) -> bool:
    n = _n(p)
    if any(f"x{j}" not in p for j in range(1, n + 1)):
        return False
    q, a = abs(to_numeric(p["q"])), abs(to_numeric(p["a"]))
    xs = [abs(to_numeric(p[f"x{j}"])) for j in range(1, n + 1)]
    return 0 < q < 1 and a < 1 and all(x < 1 for x in xs)


def andrews_sides(n: int, p, target, numeric: bool = False):
    """Both sides of the n-variable identity, formally to ``target`` or at the point in ``p``."""
    params = dict(p)
    params["n"] = n
    from hypident.registry.core import build_side

    if numeric:
        return (build_side("andrews", "lhs", params, numeric=True),
                build_side("andrews", "rhs", params, numeric=True))
    return build_side("andrews", "lhs", params, order=target), build_side("andrews", "rhs", params, order=target)


register(IdentityDescriptor(
    id="andrews", title="Andrews's multivariable q-Heine transformation",
    sides=(
        Side("lhs", "n-fold sum of (a;q)_|k| / (c;q)_|k| prod (b_j;q)_k_j / (q;q)_k_j x_j^k_j",
             formal=lhs_series, numeric=lhs_numeric),
        Side("rhs", "(a;q)_inf/(c;q)_inf prod (b_j x_j;q)_inf/(x_j;q)_inf "
                    "* phi[c/a, x_1..x_n; b_1x_1..b_nx_n; q, a]",
             formal=rhs_series, numeric=rhs_numeric),
    ),
    mode=BOTH, parameters=("a", "c", "q"),
    constraints=(
        Constraint(f"parameters b1..bn present for n in 1..{MAX_N}", _has_bs),
        Constraint("c = a q^-M for some M in 0..40 (terminating right side)", terminating_slice, applies_to=FORMAL),
        Constraint("0 < |q| < 1, |a| < 1 and |x_j| < 1", numeric_domain, applies_to=NUMERIC),
    ),
    anchor="Andrews's multivariable extension of Heine's transformation (bilateral family with all lower b-partners q)",
    notes="right side reading 'heine' selected by screen_readings against the left-side sum",
))
