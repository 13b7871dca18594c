"""Independent reference computations used to check the package.

Nothing here imports hypident.  Everything is written as directly as
possible: explicit loops, univariate polynomial lists, and mpmath's own
q-Pochhammer where a numeric value is needed.
"""

from fractions import Fraction
from math import factorial

import mpmath


def rising(a, k):
    a = Fraction(a)
    out = Fraction(1)
    for i in range(k):
        out *= a + i
    return out


def qrising(a, q, n):
    a, q = Fraction(a), Fraction(q)
    out = Fraction(1)
    for i in range(n):
        out *= 1 - a * q ** i
    return out


def qrising_negative(a, q, n):
    """``(a;q)_{-n}`` through ``1/(a q^{-n}; q)_n``."""
    a, q = Fraction(a), Fraction(q)
    return 1 / qrising(a * q ** (-n), q, n)


def poly_mul(p, r, deg):
    out = [Fraction(0)] * (deg + 1)
    for i, a in enumerate(p[: deg + 1]):
        if a:
            for j, b in enumerate(r[: deg + 1 - i]):
                out[i + j] += a * b
    return out


def partial_product(q, M, deg):
    """Coefficients of ``prod_{i=0}^{M} (1 - x q^i)`` up to ``x^deg``."""
    q = Fraction(q)
    out = [Fraction(1)] + [Fraction(0)] * deg
    for i in range(M + 1):
        out = poly_mul(out, [Fraction(1), -q ** i], deg)
    return out


def euler_tail_bound(q, M):
    """Bound on how much factors i > M can move coefficients of degree <= 2."""
    q = abs(Fraction(q))
    tail = q ** (M + 1) / (1 - q)
    return 2 * tail + tail ** 2


def vand_direct(a, c, N):
    """``2F1(a, -N; c; 1)`` summed term by term."""
    return sum(rising(a, l) * rising(-N, l) / (factorial(l) * rising(c, l)) for l in range(N + 1))


def ggr_triple_sum(alpha, beta, gamma, X, Y, Z):
    """Coefficient of x^X y^Y z^Z in the triple sum, straight from its term."""
    a, b, g = Fraction(alpha), Fraction(beta), Fraction(gamma)
    s = X + Y - Z
    if s < 0:
        # (gamma)_s / (alpha+beta)_s for negative s
        ratio = rising(a + b + s, -s) / rising(g + s, -s)
    else:
        ratio = rising(g, s) / rising(a + b, s)
    return rising(a, X) * rising(b, Y) * rising(1 - g, Z) * ratio / (factorial(X) * factorial(Y) * factorial(Z))


def _mp(v):
    v = Fraction(v)
    return mpmath.mpf(v.numerator) / v.denominator


def psi11_sum(a, b, q, z, dps=40, terms=400):
    """Bilateral 1psi1 sum over |n| <= terms, every term from explicit products."""
    with mpmath.workdps(dps):
        a, b, q, z = (_mp(v) for v in (a, b, q, z))
        total = mpmath.mpf(0)
        for n in range(-terms, terms + 1):
            if n >= 0:
                num = mpmath.fprod(1 - a * q ** i for i in range(n))
                den = mpmath.fprod(1 - b * q ** i for i in range(n))
            else:
                m = -n
                num = mpmath.fprod(1 - b * q ** (i - m) for i in range(m))
                den = mpmath.fprod(1 - a * q ** (i - m) for i in range(m))
            total += num / den * z ** n
        return +total


def psi11_product_oracle(a, b, q, z, dps=40):
    with mpmath.workdps(dps):
        a, b, q, z = (_mp(v) for v in (a, b, q, z))
        qp = mpmath.qp
        return +(qp(q, q) * qp(b / a, q) * qp(a * z, q) * qp(q / (a * z), q)
                 / (qp(b, q) * qp(q / a, q) * qp(z, q) * qp(b / (a * z), q)))


def vwp_with_square_roots(a, lateral, q, arg, terms, dps=40):
    """Very-well-poised 8phi7 summed with the explicit +-sqrt(a) parameter pair."""
    with mpmath.workdps(dps):
        a, q, arg = _mp(a), _mp(q), _mp(arg)
        lateral = [_mp(v) for v in lateral]
        r = mpmath.sqrt(a)
        upper = [a, q * r, -q * r] + lateral
        lower = [q, r, -r] + [a * q / v for v in lateral]
        total = mpmath.mpf(0)
        for l in range(terms + 1):
            num = mpmath.fprod(mpmath.qp(u, q, l) for u in upper)
            den = mpmath.fprod(mpmath.qp(w, q, l) for w in lower)
            total += num / den * arg ** l
        return +total
