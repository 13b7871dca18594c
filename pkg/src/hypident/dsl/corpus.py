"""Every registered identity written as a comparison document.

Each entry records whether the DSL evaluator can run it in reasonable time
(``evaluable``) and the verdict the evaluation should give (``expect``): the
analytic reading of ``ggrq2`` is false, so its document must fail.  The sextuple-sum sides of ``ggrq``/``ggrq1`` parse and print
fine but are far too slow through nested ``auto`` sums, so those entries are
used for round-trip checks only.
"""

from __future__ import annotations

from dataclasses import dataclass

_Q_PARAMS = """\
param alpha = 3/7 where alpha != 0
param beta = 6/11 where beta != 0
param gamma = 7/9 where gamma != 0
param q = 2/5 where abs(q) < 1 and q != 0
"""

_Q_POINT = """\
var x = 1/5
var y = -1/4
var z = 3/10
mode numeric 1e-9
"""

_Q_TRIPLE = (
    "sum(j, 0, auto, sum(k, 0, auto, sum(m, 0, auto, "
    "qpoch(alpha, j)*qpoch(beta, k)*qpoch(q/gamma, m)*qpoch(gamma, j + k - m)"
    "/(qpoch(q, j)*qpoch(q, k)*qpoch(q, m)*qpoch(alpha*beta, j + k - m))*x^j*y^k*z^m)))"
)

_T1 = (
    "qprodinf(gamma*x/beta)*qprodinf(q*z/gamma)*qprodinf(alpha*x*z/gamma)*qprodinf(beta*y*z)"
    "/(qprodinf(x/beta)*qprodinf(alpha*beta*z/gamma)*qprodinf(x*z)*qprodinf(y*z))"
    "*qhyp(beta, alpha*beta*z/gamma, beta*y/x, gamma; alpha*beta, beta*y*z, q*beta/x; q)"
)

_T2 = (
    "qprodinf(q*z/gamma)*qprodinf(beta)*qprodinf(gamma)*qprodinf(beta*y/x)*qprodinf(alpha*x)*qprodinf(x*y*z)"
    "/(qprodinf(x)*qprodinf(y)*qprodinf(x*z)*qprodinf(y*z)*qprodinf(alpha*beta)*qprodinf(beta/x))"
    "*qhyp(x, y, gamma*x/beta, alpha*x*z/gamma; alpha*x, x*y*z, q*x/beta; q)"
)

_GGRQ_RHS = (
    "sum(i, 0, auto, sum(j, 0, auto, sum(k, 0, auto, sum(l, 0, auto, sum(m, 0, auto, sum(n, 0, auto, "
    "q^(m*n - k*l - j*m - l*n - j*(j - 1)/2 - k*(k - 1)/2 - l*(l - 1)/2 - m*(m - 1)/2)"
    "*alpha^(-l)*beta^(i - l)*gamma^(-i - j + k + l)"
    "*qpoch(beta, n)*qpoch(alpha*beta/gamma, n)/(qpoch(alpha*beta, n)*qpoch(q, n))"
    "*qpoch(gamma/beta, i)*qpoch(beta*q^n, j)*qpoch(q^(1 - n)/(alpha*beta), k)*qpoch(alpha*beta*q^n/gamma, l)"
    "*qpoch(q^(-n), m)/(qpoch(q, i)*qpoch(q, j)*qpoch(q, k)*qpoch(q, l)*qpoch(q, m))"
    "*x^(i + l + n - m)*y^(j + m)*z^(k + l)))))))"
)

_GGRQ1_RHS = (
    "sum(i, 0, auto, sum(j, 0, auto, sum(k, 0, auto, sum(l, 0, auto, sum(m, 0, auto, sum(n, 0, auto, "
    "q^(k*n - i*n + m)*alpha^k*beta^(k - i - m)*gamma^(-k)"
    "*qpoch(beta, n)*qpoch(gamma, n)/(qpoch(alpha*beta, n)*qpoch(q, n))"
    "*qpoch(gamma*q^n, i)*qpoch(beta*q^n, j)*qpoch(q^(1 - n)/(alpha*beta), k)*qpoch(alpha/gamma, l)"
    "*qpoch(q^(-n), m)/(qpoch(q, i)*qpoch(q, j)*qpoch(q, k)*qpoch(q, l)*qpoch(q, m))"
    "*x^(i + l + m)*y^(j + n - m)*z^(j + k + l)))))))"
)


@dataclass(frozen=True)
class CorpusEntry:
    identity: str
    text: str
    evaluable: bool = True
    expect: str = "pass"


CORPUS = {
    "ggr": CorpusEntry("ggr", """\
param alpha = 3/7
param beta = -5/4
param gamma = 7/9
var x
var y
var z
mode formal 3
sum(j, 0, auto, sum(k, 0, auto, sum(m, 0, auto,
    pochhammer(alpha, j)*pochhammer(beta, k)*pochhammer(1 - gamma, m)*pochhammer(gamma, j + k - m)
    / (pochhammer(1, j)*pochhammer(1, k)*pochhammer(1, m)*pochhammer(alpha + beta, j + k - m))
    * x^j*y^k*z^m)))
== (1 - z)^(alpha + beta - 1)*(1 - x*z)^(gamma - alpha - beta)*(1 - x)^(beta - gamma)*(1 - y)^(-beta)
   * hyp(beta, alpha + beta - gamma; alpha + beta; (x - y)*(1 - z)/((1 - y)*(1 - x*z)))
== (1 - z)^(alpha + beta - 1)*(1 - x*z)^(gamma - alpha)*(1 - x)^(-gamma)*(1 - y*z)^(-beta)
   * hyp(beta, gamma; alpha + beta; (y - x)*(1 - z)/((1 - x)*(1 - y*z)))
"""),
    "ggrq": CorpusEntry("ggrq", _Q_PARAMS + "var x\nvar y\nvar z\nmode formal 3\n" + (
        "sum(j, 0, auto, sum(k, 0, auto, sum(m, 0, auto, "
        "q^(-k*(k - 1)/2 - m*(m - 1)/2)*alpha^(-m)*beta^(j - m)*gamma^(2*m - j - k)"
        "*qpoch(alpha, j)*qpoch(beta, k)*qpoch(q/gamma, m)*qpoch(gamma, j + k - m)"
        "/(qpoch(q, j)*qpoch(q, k)*qpoch(q, m)*qpoch(alpha*beta, j + k - m))*x^j*y^k*z^m)))"
    ) + "\n== " + _GGRQ_RHS + "\n", evaluable=False),
    "ggrq1": CorpusEntry("ggrq1", _Q_PARAMS + "var x\nvar y\nvar z\nmode formal 3\n" + _Q_TRIPLE
                         + "\n== " + _GGRQ1_RHS + "\n", evaluable=False),
    "ggrq2": CorpusEntry("ggrq2", _Q_PARAMS + _Q_POINT + _Q_TRIPLE + "\n== " + _T1 + "\n", expect="fail"),
    "ggrq5": CorpusEntry("ggrq5", _Q_PARAMS + _Q_POINT + _Q_TRIPLE + "\n== " + _T1 + "\n + " + _T2 + "\n"),
    "ggrq3": CorpusEntry("ggrq3", _Q_PARAMS + _Q_POINT + _Q_TRIPLE + "\n== " + (
        "qprodinf(gamma*x/beta)*qprodinf(beta*y)*qprodinf(q*z/gamma)*qprodinf(alpha*beta*x*z/gamma)"
        "*qprodinf(beta*y*z)*qprodinf(alpha*beta*y*z/gamma)"
        "/(qprodinf(x)*qprodinf(y)*qprodinf(alpha*beta*z/gamma)*qprodinf(x*z)*qprodinf(y*z)"
        "*qprodinf(alpha*beta^2*y*z/gamma))"
        "*vwp8phi7(alpha*beta^2*y*z/(gamma*q); alpha*beta*z/gamma, beta*y*z/gamma, beta, alpha*beta/gamma,"
        " beta*y/x; gamma*x/beta)"
    ) + "\n"),
    "ggrq4": CorpusEntry("ggrq4", _Q_PARAMS + _Q_POINT + _Q_TRIPLE + "\n== " + (
        "qprodinf(gamma*x)*qprodinf(q*z/gamma)*qprodinf(alpha*x*z/gamma)*qprodinf(beta*y*z)*qprodinf(beta*y)"
        "*qprodinf(gamma*y)"
        "/(qprodinf(x)*qprodinf(alpha*beta*z/gamma)*qprodinf(x*z)*qprodinf(y*z)*qprodinf(beta*gamma*y)*qprodinf(y))"
        "*vwp8phi7(beta*gamma*y/q; gamma, beta, gamma*y/alpha, beta*y/x, gamma/z; alpha*x*z/gamma)"
    ) + "\n"),
    "8phi7": CorpusEntry("8phi7", _Q_PARAMS + _Q_POINT + _Q_TRIPLE + "\n== " + (
        "qprodinf(alpha*x)*qprodinf(beta*y)*qprodinf(gamma*y)*qprodinf(q*z/gamma)*qprodinf(alpha*beta*y*z/gamma)"
        "/(qprodinf(x)*qprodinf(y)*qprodinf(alpha*beta*y)*qprodinf(alpha*beta*z/gamma)*qprodinf(y*z))"
        "*vwp8phi7(alpha*beta*y/q; alpha, y, gamma/z, alpha*beta/gamma, beta*y/x; x*z)"
    ) + "\n"),
    "vand": CorpusEntry("vand", """\
param a = 1/3
param c = 5/7 where c != 0
param N = 4 where N >= 0
hyp(a, -N; c; 1) == pochhammer(c - a, N)/pochhammer(c, N)
"""),
    "pfaff": CorpusEntry("pfaff", """\
param a = 2/3
param b = -3/5
param c = 7/11
param N = 5
hyp(a, b, -N; c, 1 + a + b - c - N; 1)
== pochhammer(c - a, N)*pochhammer(c - b, N)/(pochhammer(c, N)*pochhammer(c - a - b, N))
"""),
    "qvand": CorpusEntry("qvand", """\
param a = 1/3
param c = 5/7
param q = 1/2
param N = 5
qhyp(a, q^(-N); c; q) == a^N*qpoch(c/a, N)/qpoch(c, N)
"""),
    "qpfaff": CorpusEntry("qpfaff", """\
param a = 2/3
param b = -3/5
param c = 7/11
param q = 1/3
param N = 4
qhyp(a, b, q^(-N); c, a*b*q^(1 - N)/c; q)
== qpoch(c/a, N)*qpoch(c/b, N)/(qpoch(c, N)*qpoch(c/(a*b), N))
"""),
    "qbin": CorpusEntry("qbin", """\
param a = 1/3
param q = 1/2
var z
mode formal 6
sum(l, 0, auto, qpoch(a, l)/qpoch(q, l)*z^l) == qprodinf(a*z)/qprodinf(z) == qhyp(a; ; z)
"""),
    "euler-2f1": CorpusEntry("euler-2f1", """\
param a = 1/3
param b = 2/7
param c = -5/4
var w
mode formal 8
hyp(a, b; c; w) == (1 - w)^(-a)*hyp(a, c - b; c; -w/(1 - w))
"""),
    "bailey": CorpusEntry("bailey", """\
param a = 1/5
param b = 1/2
param c = 1/3
param d = 1/7
param f = 2/3
param q = 1/2
param N = 4
param e = q^(-N)
param lam = a^2*q/(b*c*d)
vwp8phi7(a; b, c, d, e, f; a^2*q^2/(b*c*d*e*f))
== qpoch(a*q, N)*qpoch(lam*q/f, N)/(qpoch(a*q/f, N)*qpoch(lam*q, N))
   * vwp8phi7(lam; a*q/(c*d), a*q/(b*d), a*q/(b*c), e, f; a*q/(e*f))
"""),
    "1psi1": CorpusEntry("1psi1", """\
param a = -2/3
param b = 1/5
param q = -2/5
var z = -3/5
mode numeric 1e-10
sum(n, 0, auto, qpoch(a, n)/qpoch(b, n)*z^n) + sum(n, 1, auto, qpoch(a, -n)/qpoch(b, -n)*z^(-n))
== qprodinf(q)*qprodinf(b/a)*qprodinf(a*z)*qprodinf(q/(a*z))
   / (qprodinf(b)*qprodinf(q/a)*qprodinf(z)*qprodinf(b/(a*z)))
"""),
    "andrews": CorpusEntry("andrews", """\
param a = 1/3
param q = 1/2
param M = 2
param c = a*q^(-M)
param b1 = 2/7
param b2 = -3/4
var x1
var x2
mode formal 4
sum(k1, 0, auto, sum(k2, 0, auto, qpoch(a, k1 + k2)/qpoch(c, k1 + k2)
    * qpoch(b1, k1)/qpoch(q, k1)*qpoch(b2, k2)/qpoch(q, k2)*x1^k1*x2^k2))
== 1/qpoch(c, M)*qprodinf(b1*x1)/qprodinf(x1)*qprodinf(b2*x2)/qprodinf(x2)
   * qhyp(c/a, x1, x2; b1*x1, b2*x2; a)
"""),
}
