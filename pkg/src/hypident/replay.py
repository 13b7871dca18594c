"""Stage-by-stage replay of the two classical reductions of the GGR coefficient.

For a coefficient ``x^X y^Y z^Z`` each chain goes

1. the constrained sextuple sum,
2. a double sum carrying a 2F1 (summed directly here),
3. a single sum carrying a 2F1 (again summed directly),
4. a prefactor times a terminating 3F2 (summed directly, and via Pfaff-Saalschutz),
5. the closed coefficient.

Between the stages each 2F1 is also summed by Chu-Vandermonde; those values
are recorded as cross-checks.  Factorials of negative integers appear in the
intermediate sums; ``1/n!`` is read as ``1/Gamma(n+1)``, which is zero for
negative ``n``.  Where such a factor multiplies a 2F1 whose lower parameter
``n+1`` is a nonpositive integer the product is summed in the regularized
form ``sum_l (a)_l (-N)_l / (l! (n+l)!)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from hypident.errors import HypIdentError, PoleError
from hypident.exact import as_exact, pochhammer, reciprocal_factorial as rf
from hypident.hyper import HypSeriesSpec, hyp_f
from hypident.registry.ggr import ggr1_multisum, ggr2_multisum, ggr_lhs_coefficient

STAGES = (
    "multiple sum",
    "after first Chu-Vandermonde",
    "after second Chu-Vandermonde",
    "after Pfaff-Saalschutz",
    "closed form",
)
VARIANTS = ("ggr1", "ggr2")
DEFAULT_BOUND = 5


@dataclass
class ProofTrace:
    variant: str
    xyz: tuple
    params: dict
    stages: list  # (name, value or None)
    checks: dict = field(default_factory=dict)  # lemma-summed alternatives
    errors: dict = field(default_factory=dict)  # stage index -> message

    @property
    def values(self) -> list:
        return [v for _, v in self.stages]

    @property
    def equal_flags(self) -> list:
        """Stage k agrees with stage 1 (the multiple sum)."""
        first = self.values[0]
        return [v is not None and first is not None and v == first for v in self.values]

    @property
    def passed(self) -> bool:
        if self.errors or not all(self.equal_flags):
            return False
        return all(v == self.values[0] for v in self.checks.values())

    def to_dict(self) -> dict:
        from hypident.exact import format_exact

        fmt = lambda v: None if v is None else format_exact(v)  # noqa: E731
        return {
            "variant": self.variant,
            "xyz": list(self.xyz),
            "params": {k: format_exact(as_exact(v)) for k, v in self.params.items()},
            "stages": [{"name": n, "value": fmt(v), "equal": f} for (n, v), f in zip(self.stages, self.equal_flags)],
            "checks": {k: fmt(v) for k, v in self.checks.items()},
            "errors": {str(k): v for k, v in self.errors.items()},
            "passed": self.passed,
        }


def _f2_direct(a, b, c) -> Fraction:
    return hyp_f(HypSeriesSpec([a, b], [c], 1))


def _f2_regularized(a, N: int, n: int) -> Fraction:
    """``2F1[a, -N; n+1; 1] / n!`` summed termwise as ``sum (a)_l (-N)_l / (l! (n+l)!)``."""
    total = Fraction(0)
    for l in range(N + 1):
        total += pochhammer(a, l) * pochhammer(-N, l) / math.factorial(l) * rf(n + l)
    return total


def _vand(a, N: int, c):
    return pochhammer(c - a, N) / pochhammer(c, N)


def _vand_regularized(a, N: int, n: int):
    """Chu-Vandermonde for ``2F1[a, -N; n+1; 1] / n!``: ``(n+1-a)_N / (n+N)!``."""
    return pochhammer(n + 1 - a, N) * rf(n + N)


def _pfaff(a, b, N: int, c):
    return pochhammer(c - a, N) * pochhammer(c - b, N) / (pochhammer(c, N) * pochhammer(c - a - b, N))


# -- GGR0 = GGR1 --------------------------------------------------------------


def _ggr1_stage2(a, b, g, X, Y, Z, lemma=False):
    total = Fraction(0)
    for i in range(X + 1):
        for k in range(Z + 1):
            w = rf(k + X - Z - i)
            if w == 0:
                continue
            s = k + X + Y - Z - i
            c = 1 - a - b + g + i - X - Y
            head = (
                (-1) ** (Y + Z)
                * pochhammer(b, s) * pochhammer(a + b - g, s) * pochhammer(g - b, i)
                * w * rf(Z - k) / (math.factorial(i) * math.factorial(k) * math.factorial(Y))
                * pochhammer(c, Z - k) / pochhammer(a + b, X + Y - Z - i)
            )
            upper = 1 - a - b + i - X - Y + Z
            inner = _vand(upper, Y, c) if lemma else _f2_direct(upper, -Y, c)
            total += head * inner
    return total


def _ggr1_stage3(a, b, g, X, Y, Z, lemma=False):
    total = Fraction(0)
    for i in range(X + 1):
        head = (
            pochhammer(b, X + Y - Z - i) * pochhammer(a + b - g, X - i) * pochhammer(g - b, i)
            * pochhammer(g - Z, Y)
            / (math.factorial(i) * math.factorial(Y) * math.factorial(Z) * pochhammer(a + b, X + Y - Z - i))
        )
        upper, n = b - i + X + Y - Z, X - Z - i
        inner = _vand_regularized(upper, Z, n) if lemma else _f2_regularized(upper, Z, n)
        total += head * inner
    return total


def _ggr1_stage4(a, b, g, X, Y, Z, lemma=False):
    head = (
        pochhammer(b, X + Y - Z) * pochhammer(a + b - g, X) * pochhammer(1 - b - Y, Z) * pochhammer(g - Z, Y)
        / (math.factorial(X) * math.factorial(Y) * math.factorial(Z) * pochhammer(a + b, X + Y - Z))
    )
    u1, u2, c = 1 - a - b - X - Y + Z, g - b, 1 - b - X - Y + Z
    if lemma:
        return head * _pfaff(u1, u2, X, c)
    return head * hyp_f(HypSeriesSpec([u1, u2, -X], [c, 1 - a - b + g - X], 1))


# -- GGR0 = GGR2 --------------------------------------------------------------


def _ggr2_stage2(a, b, g, X, Y, Z, lemma=False):
    total = Fraction(0)
    for i in range(X + 1):
        for l in range(min(X, Z) + 1):
            w = rf(X - i - l)
            if w == 0:
                continue
            head = (
                (-1) ** (X + l + i)
                * pochhammer(b, X + Y - i - l) * pochhammer(a - g, l) * pochhammer(g, X + Y - Z)
                * w * rf(Z - l)
                / (math.factorial(i) * math.factorial(l) * pochhammer(a + b, X + Y - Z - i))
            )
            upper, n = g + X + Y - Z, Y + l - Z
            inner = _vand_regularized(upper, Z - l, n) if lemma else _f2_regularized(upper, Z - l, n)
            total += head * inner
    return total


def _ggr2_stage3(a, b, g, X, Y, Z, lemma=False):
    total = Fraction(0)
    for l in range(min(X, Z) + 1):
        head = (
            (-1) ** (X + l)
            * pochhammer(b, X + Y - l) * pochhammer(a - g, l) * pochhammer(g, X + Y - Z)
            * pochhammer(1 - g + l - X, Z - l)
            / (math.factorial(l) * math.factorial(X - l) * math.factorial(Y) * math.factorial(Z - l)
               * pochhammer(a + b, X + Y - Z))
        )
        upper, c = 1 - a - b - X - Y + Z, 1 - b + l - X - Y
        inner = _vand(upper, X - l, c) if lemma else _f2_direct(upper, l - X, c)
        total += head * inner
    return total


def _ggr2_stage4(a, b, g, X, Y, Z, lemma=False):
    head = (
        (-1) ** X
        * pochhammer(b, X + Y) * pochhammer(g, X + Y - Z) * pochhammer(1 - g - X, Z) * pochhammer(a - Z, X)
        / (math.factorial(X) * math.factorial(Y) * math.factorial(Z) * pochhammer(a + b, X + Y - Z)
           * pochhammer(1 - b - X - Y, X))
    )
    if lemma:
        return head * _pfaff(a - g, -Z, X, a - Z)
    return head * hyp_f(HypSeriesSpec([a - g, -Z, -X], [1 - g - X, a - Z], 1))


_CHAINS = {
    "ggr1": (ggr1_multisum, _ggr1_stage2, _ggr1_stage3, _ggr1_stage4),
    "ggr2": (ggr2_multisum, _ggr2_stage2, _ggr2_stage3, _ggr2_stage4),
}


def replay_proof(variant: str, p, X: int, Y: int, Z: int, bound: int = DEFAULT_BOUND) -> ProofTrace:
    """Evaluate every stage of the reduction chain for one coefficient, exactly."""
    variant = variant.lower()
    if variant not in _CHAINS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    if min(X, Y, Z) < 0 or max(X, Y, Z) > bound:
        raise ValueError(f"need 0 <= X, Y, Z <= {bound}")
    params = {k: as_exact(p[k]) for k in ("alpha", "beta", "gamma")}
    a, b, g = params["alpha"], params["beta"], params["gamma"]
    multisum, s2, s3, s4 = _CHAINS[variant]
    trace = ProofTrace(variant, (X, Y, Z), params, [])

    steps = [
        (lambda: multisum(params, X, Y, Z), None),
        (lambda: s2(a, b, g, X, Y, Z), lambda: s2(a, b, g, X, Y, Z, lemma=True)),
        (lambda: s3(a, b, g, X, Y, Z), lambda: s3(a, b, g, X, Y, Z, lemma=True)),
        (lambda: s4(a, b, g, X, Y, Z), lambda: s4(a, b, g, X, Y, Z, lemma=True)),
        (lambda: ggr_lhs_coefficient(params, X, Y, Z), None),
    ]
    lemma_names = {1: "stage 2 via Chu-Vandermonde", 2: "stage 3 via Chu-Vandermonde", 3: "stage 4 via Pfaff-Saalschutz"}
    for idx, (direct, lemma) in enumerate(steps):
        try:
            value = direct()
        except (HypIdentError, ZeroDivisionError) as exc:
            trace.errors[idx + 1] = f"{type(exc).__name__}: {exc}"
            value = None
        trace.stages.append((STAGES[idx], value))
        if lemma is not None:
            try:
                trace.checks[lemma_names[idx]] = lemma()
            except (HypIdentError, ZeroDivisionError) as exc:
                trace.errors[idx + 1] = f"{type(exc).__name__}: {exc}"
    return trace
