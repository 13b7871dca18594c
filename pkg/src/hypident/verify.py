"""Sampling, formal and numeric comparison, and the report type.

Formal identities are checked by exact evaluation at random rational
parameter points.  Every coefficient of every side is a rational function of
the parameters, so a false identity can agree only on the zero set of a
nonzero rational function; a handful of random points with bounded height
catch it with overwhelming probability.
"""

from __future__ import annotations

import json
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import mpmath

from hypident.errors import (
    ConstraintUnsatisfiable,
    ConstraintViolation,
    HypIdentError,
    ModeViolation,
    OutOfDomain,
    PoleError,
)
from hypident.exact import as_exact, format_exact, is_exact, pochhammer, q_pochhammer, to_numeric
from hypident.registry import FORMAL, NUMERIC, build_side, get_identity
from hypident.registry.andrews import MAX_N
from hypident.registry.ggr import ggr_generic, ggr_lhs_coefficient
from hypident.registry.qggr import (
    SAMPLE_BASES,
    ggrq2_rhs_numeric,
    ggrq5_second_term_numeric,
    plain_lhs_numeric,
    q_generic,
)
from hypident.series import TruncatedSeries

PASS = "pass"
FAIL = "fail"
EXPECTED_FAIL = "expected-fail-confirmed"
ERROR = "error"  # a builder raised; not a verdict on the identity

DEFAULT_TOL = 1e-10
DEFAULT_Q_SEQUENCE = (0.9, 0.99, 0.999)
HEIGHT = 50  # bound on sampled numerators and denominators
MAX_TRIES = 20000


# -- reports ------------------------------------------------------------------------


def _ser(v):
    if v is None or isinstance(v, (bool, str)):
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return format_exact(v)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, mpmath.mpf):
        return mpmath.nstr(v, 17)
    if isinstance(v, (list, tuple)):
        return [_ser(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _ser(x) for k, x in v.items()}
    return str(v)


@dataclass
class VerificationReport:
    identity: str
    mode: str
    params: dict
    verdict: str
    order: int | None = None
    tol: float | None = None
    differences: list = field(default_factory=list)
    measured: dict = field(default_factory=dict)
    error: str | None = None
    seed: int | None = None
    sample_index: int | None = None
    timing: float = 0.0

    @property
    def passed(self) -> bool:
        return self.verdict in (PASS, EXPECTED_FAIL)

    def to_dict(self, include_timing: bool = True) -> dict:
        out = {
            "identity": self.identity,
            "mode": self.mode,
            "params": _ser(self.params),
            "order": self.order,
            "tol": _ser(self.tol),
            "differences": _ser(self.differences),
            "measured": _ser(self.measured),
            "verdict": self.verdict,
            "error": self.error,
            "seed": self.seed,
            "sample_index": self.sample_index,
        }
        if include_timing:
            out["timing"] = round(self.timing, 6)
        return out

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2)

    def to_text(self) -> str:
        params = ", ".join(f"{k}={_ser(v)}" for k, v in self.params.items())
        target = f"order {self.order}" if self.mode == FORMAL else f"tol {_ser(self.tol)}"
        lines = [f"{self.identity} [{self.mode}, {target}] {self.verdict.upper()}  ({params})"]
        for k, v in self.measured.items():
            lines.append(f"  {k}: {_ser(v)}")
        for d in self.differences[:10]:
            lines.append("  mismatch " + ", ".join(f"{k}={_ser(v)}" for k, v in d.items()))
        if len(self.differences) > 10:
            lines.append(f"  ... {len(self.differences) - 10} more mismatches")
        if self.error:
            lines.append(f"  error: {self.error}")
        return "\n".join(lines)


def reports_to_json(reports, include_timing: bool = True) -> str:
    return json.dumps([r.to_dict(include_timing) for r in reports], indent=2)


# -- sampling -------------------------------------------------------------------------


def _rat(rng, lo=Fraction(0), hi=None, height=HEIGHT, positive=False):
    """A nonzero rational with numerator and denominator bounded by ``height`` and ``lo <= |v| <= hi``."""
    while True:
        num = rng.randint(1 if positive else -height, height)
        den = rng.randint(1, height)
        if num == 0:
            continue
        v = Fraction(num, den)
        if abs(v) >= lo and (hi is None or abs(v) <= hi):
            return v


def _not_q_power(values, q, span=40) -> bool:
    return all(v != q ** t for v in values for t in range(-span, span + 1))


def _pairwise(values):
    out = list(values)
    vs = list(values)
    for i, u in enumerate(vs):
        for w in vs[i + 1:]:
            out += [u * w, u / w, w / u]
    return out


def _classical(rng, names):
    return {n: _rat(rng) for n in names}


def _ggr_sample(rng, mode, index, fixed):
    p = _classical(rng, ("alpha", "beta", "gamma"))
    return p if ggr_generic(p) else None


def _q_formal(rng, index, bases):
    p = _classical(rng, ("alpha", "beta", "gamma"))
    p["q"] = bases[index % len(bases)]
    return p


def _q_point(rng, index, bases):
    p = {n: _rat(rng, Fraction(1, 5), Fraction(5, 2)) for n in ("alpha", "beta", "gamma")}
    p["q"] = bases[index % len(bases)]
    for v in ("x", "y", "z"):
        p[v] = _rat(rng, Fraction(1, 50), Fraction(3, 10))
    return p


def _q_point_generic(p) -> bool:
    a, b, g, q, x, y, z = (p[k] for k in ("alpha", "beta", "gamma", "q", "x", "y", "z"))
    # every very-well-poised argument comfortably inside the unit disc
    args = (g * x / b, a * x * z / g, x * z, a * b * z / g, a * b / g * x, b * y)
    if any(abs(v) >= Fraction(9, 10) for v in args):
        return False
    return _not_q_power(_pairwise((a, b, g, x, y, z)) + [a * b * z / g, a * x * z / g, g * x / b], q, 30)


def _ggrq_sample(rng, mode, index, fixed, bases=SAMPLE_BASES):
    if mode == FORMAL:
        p = _q_formal(rng, index, bases)
        return p if q_generic(p) else None
    p = _q_point(rng, index, bases)
    return p if q_generic(p) and _q_point_generic(p) else None


def _vand_sample(rng, mode, index, fixed):
    return _classical(rng, ("a", "c"))


def _pfaff_sample(rng, mode, index, fixed):
    return _classical(rng, ("a", "b", "c"))


def _lemma_q(names, bases=SAMPLE_BASES[:3]):
    def sample(rng, mode, index, fixed):
        p = _classical(rng, names)
        p["q"] = bases[index % len(bases)]
        return p
    return sample


def _qbin_sample(rng, mode, index, fixed):
    p = {"a": _rat(rng), "q": SAMPLE_BASES[index % len(SAMPLE_BASES)]}
    if mode == NUMERIC:
        p["z"] = _rat(rng, Fraction(1, 50), Fraction(4, 5))
        p["a"] = _rat(rng, hi=Fraction(5))
    return p


def _bailey_sample(rng, mode, index, fixed):
    q = SAMPLE_BASES[index % len(SAMPLE_BASES)]
    if mode == FORMAL:
        p = {k: _rat(rng) for k in ("a", "b", "c", "d", "f")}
        p["q"] = q
        return p
    p = {k: _rat(rng, Fraction(1, 10), Fraction(9, 10)) for k in ("a",)}
    p.update({k: _rat(rng, Fraction(1, 2), Fraction(3)) for k in ("b", "c", "d", "e", "f")})
    p["q"] = q
    vals = [p[k] for k in ("a", "b", "c", "d", "e", "f")]
    return p if _not_q_power(_pairwise(vals), q, 30) else None


def _psi11_sample(rng, mode, index, fixed):
    q = SAMPLE_BASES[index % len(SAMPLE_BASES)]
    a = _rat(rng, Fraction(1, 5), Fraction(5))
    b = _rat(rng, hi=abs(a) * Fraction(4, 5))
    lo = abs(b / a)
    z = _rat(rng, lo * Fraction(11, 10), Fraction(9, 10))
    p = {"a": a, "b": b, "q": q, "z": z}
    risky = [a, b, z, a * z, b / (a * z), b / a, q / a, q / (a * z)]
    return p if _not_q_power(risky, q, 40) else None


def _euler_sample(rng, mode, index, fixed):
    return _classical(rng, ("a", "b", "c"))


def _andrews_sample(rng, mode, index, fixed):
    n = int(fixed.get("n", 2))
    if not 1 <= n <= MAX_N:
        raise ConstraintUnsatisfiable(f"andrews needs 1 <= n <= {MAX_N}")
    q = SAMPLE_BASES[index % len(SAMPLE_BASES)]
    p = {"n": n, "q": q}
    for j in range(1, n + 1):
        p[f"b{j}"] = _rat(rng)
    if mode == FORMAL:
        p["a"] = _rat(rng)
        p["c"] = p["a"] * q ** -rng.randint(0, 4)
        return p
    p["a"] = _rat(rng, Fraction(1, 20), Fraction(4, 5))
    p["c"] = _rat(rng, Fraction(1, 20), Fraction(4, 5))
    for j in range(1, n + 1):
        p[f"x{j}"] = _rat(rng, Fraction(1, 50), Fraction(3, 10))
    vals = [p["a"], p["c"]] + [p[f"b{j}"] for j in range(1, n + 1)]
    return p if _not_q_power(vals, q, 40) else None


SAMPLERS = {
    "ggr": _ggr_sample,
    "ggrq": _ggrq_sample,
    "ggrq1": _ggrq_sample,
    "ggrq2": _ggrq_sample,
    "ggrq3": _ggrq_sample,
    "ggrq4": _ggrq_sample,
    "ggrq5": _ggrq_sample,
    "8phi7": _ggrq_sample,
    "vand": _vand_sample,
    "pfaff": _pfaff_sample,
    "qvand": _lemma_q(("a", "c")),
    "qpfaff": _lemma_q(("a", "b", "c")),
    "qbin": _qbin_sample,
    "euler-2f1": _euler_sample,
    "bailey": _bailey_sample,
    "1psi1": _psi11_sample,
    "andrews": _andrews_sample,
}


def _default_mode(desc) -> str:
    return FORMAL if desc.allows(FORMAL) else NUMERIC


def sample_parameters(identity, seed: int, count: int, mode: str | None = None, fixed: Mapping | None = None,
                      max_tries: int = MAX_TRIES) -> list:
    """``count`` distinct admissible parameter points, reproducible from ``seed``.

    Numeric-mode samples also carry values for the identity's variables.
    ``fixed`` values override sampled ones (and are passed to the sampler,
    e.g. ``n`` for the multivariable identity).
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    desc = get_identity(identity)
    mode = mode or _default_mode(desc)
    if not desc.allows(mode):
        raise ModeViolation(f"identity {desc.id!r} is {desc.mode}-only")
    fixed = dict(fixed or {})
    sampler = SAMPLERS.get(desc.id)
    if sampler is None:
        raise ConstraintUnsatisfiable(f"no sampler registered for {desc.id!r}")
    rng = random.Random(f"{desc.id}:{mode}:{seed}")
    out, seen = [], set()
    for _ in range(max_tries):
        if len(out) == count:
            return out
        p = sampler(rng, mode, len(out), fixed)
        if p is None:
            continue
        p.update(fixed)
        try:
            desc.check_constraints(p, mode)
        except (ConstraintViolation, ArithmeticError, ValueError):
            continue
        key = tuple(sorted((k, str(v)) for k, v in p.items()))
        if key in seen:
            continue
        seen.add(key)
        out.append(p)
    if len(out) == count:
        return out
    raise ConstraintUnsatisfiable(f"{desc.id}: only {len(out)} of {count} admissible samples in {max_tries} tries")


# -- formal verification --------------------------------------------------------------


def _monomial_name(variables, idx) -> str:
    parts = [v if e == 1 else f"{v}^{e}" for v, e in zip(variables, idx) if e]
    return "*".join(parts) or "1"


def _compare_formal(ref_name, ref, name, other) -> list:
    if isinstance(ref, TruncatedSeries):
        a, b = ref.coefficients(), other.coefficients()
        diffs = []
        for idx in sorted(set(a) | set(b), key=lambda k: (sum(k), tuple(-e for e in k))):
            u, v = a.get(idx, Fraction(0)), b.get(idx, Fraction(0))
            if u != v:
                diffs.append({"sides": f"{ref_name} vs {name}", "monomial": _monomial_name(ref.variables, idx),
                              "expected": u, "actual": v})
        return diffs
    if ref != other:
        return [{"sides": f"{ref_name} vs {name}", "monomial": None, "expected": ref, "actual": other}]
    return []


def verify_formal(identity, params: Mapping, order: int, seed: int | None = None,
                  sample_index: int | None = None, sides=None) -> VerificationReport:
    """Expand every side to ``order`` and compare all coefficients exactly."""
    desc = get_identity(identity)
    if not desc.allows(FORMAL):
        raise ModeViolation(f"identity {desc.id!r} is {desc.mode}-only; formal comparison is not meaningful")
    desc.check_constraints(params, FORMAL)
    names = list(sides or [s.name for s in desc.sides if s.formal is not None])
    start = time.perf_counter()
    report = VerificationReport(desc.id, FORMAL, dict(params), PASS, order=order, seed=seed, sample_index=sample_index)
    try:
        values = [build_side(desc, n, params, order=order) for n in names]
    except (HypIdentError, ZeroDivisionError) as exc:
        report.verdict = ERROR
        report.error = f"{type(exc).__name__}: {exc}"
        report.timing = time.perf_counter() - start
        return report
    for n, v in zip(names[1:], values[1:]):
        report.differences += _compare_formal(names[0], values[0], n, v)
    if isinstance(values[0], TruncatedSeries):
        report.measured["coefficients compared"] = len(list(_all_monomials(values[0]))) * (len(values) - 1)
    report.verdict = FAIL if report.differences else PASS
    report.timing = time.perf_counter() - start
    return report


def _all_monomials(s: TruncatedSeries):
    from hypident.series import monomials

    return monomials(len(s.variables), s.order)


# -- numeric verification ---------------------------------------------------------------


def _dps_for(tol) -> int:
    """Working digits: double precision unless the tolerance asks for more."""
    return max(15, int(math.ceil(-math.log10(float(tol)))) + 5)


def _rel(a, b):
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale else mpmath.mpf(0)


def verify_numeric(identity, point: Mapping, tol=DEFAULT_TOL, seed: int | None = None,
                   sample_index: int | None = None, dps: int | None = None) -> VerificationReport:
    """Evaluate each side at the point and compare with a relative tolerance."""
    desc = get_identity(identity)
    if not desc.allows(NUMERIC):
        raise ModeViolation(f"identity {desc.id!r} is {desc.mode}-only; numeric evaluation is not meaningful")
    if desc.numeric_expected_fail:
        return falsify_analytic_ggrq2(point, tol, seed=seed, sample_index=sample_index, dps=dps)
    try:
        desc.check_constraints(point, NUMERIC)
    except ConstraintViolation as exc:
        raise OutOfDomain(str(exc)) from None
    names = [s.name for s in desc.sides if s.numeric is not None]
    start = time.perf_counter()
    report = VerificationReport(desc.id, NUMERIC, dict(point), PASS, tol=tol, seed=seed, sample_index=sample_index)
    with mpmath.workdps(dps or _dps_for(tol)):
        try:
            values = [build_side(desc, n, point, numeric=True) for n in names]
        except (HypIdentError, ZeroDivisionError, mpmath.libmp.NoConvergence) as exc:
            report.verdict = ERROR
            report.error = f"{type(exc).__name__}: {exc}"
            report.timing = time.perf_counter() - start
            return report
        worst = mpmath.mpf(0)
        for n, v in zip(names[1:], values[1:]):
            r = _rel(values[0], v)
            worst = max(worst, r)
            if not r <= tol:
                report.differences.append({"sides": f"{names[0]} vs {n}", "expected": values[0],
                                           "actual": v, "relative": r})
        for n, v in zip(names, values):
            report.measured[n] = v
        report.measured["relative error"] = worst
    report.verdict = FAIL if report.differences else PASS
    report.timing = time.perf_counter() - start
    return report


def falsify_analytic_ggrq2(point: Mapping, tol=DEFAULT_TOL, seed: int | None = None,
                           sample_index: int | None = None, dps: int | None = None) -> VerificationReport:
    """Show that the compact 4phi3 form is analytically wrong and the two-term form is right.

    ``L`` is the q-triple sum, ``T1`` the compact right side and ``T2`` the
    correction term.  The verdict is expected-fail-confirmed only when
    ``|L - T1| > 10 tol`` and ``|L - (T1 + T2)| <= tol |L|``.
    """
    desc = get_identity("ggrq5")
    if all(to_numeric(point.get(v, 0)) == 0 for v in ("x", "y", "z")):
        raise OutOfDomain("x = y = z = 0 is degenerate: both forms reduce to 1 and no defect can be seen")
    try:
        desc.check_constraints(point, NUMERIC)
    except ConstraintViolation as exc:
        raise OutOfDomain(str(exc)) from None
    start = time.perf_counter()
    report = VerificationReport("ggrq2", NUMERIC, dict(point), FAIL, tol=tol, seed=seed, sample_index=sample_index)
    with mpmath.workdps(dps or _dps_for(tol)):
        try:
            L = plain_lhs_numeric(point)
            T1 = ggrq2_rhs_numeric(point)
            T2 = ggrq5_second_term_numeric(point)
        except (HypIdentError, ZeroDivisionError, mpmath.libmp.NoConvergence) as exc:
            report.verdict = ERROR
            report.error = f"{type(exc).__name__}: {exc}"
            report.timing = time.perf_counter() - start
            return report
        defect = abs(L - T1)
        corrected = abs(L - (T1 + T2)) / abs(L)
        report.measured = {"L": L, "T1": T1, "T2": T2, "defect |L-T1|": defect,
                           "relative |L-(T1+T2)|/|L|": corrected}
    if defect > 10 * tol and corrected <= tol:
        report.verdict = EXPECTED_FAIL
    else:
        report.differences.append({"defect": defect, "corrected relative": corrected})
    report.timing = time.perf_counter() - start
    return report


# -- the q -> 1 trend ---------------------------------------------------------------------


def _q_coefficient(p, X, Y, Z, q):
    a, b, g = (q ** to_numeric(p[k]) for k in ("alpha", "beta", "gamma"))
    s = X + Y - Z
    num = q_pochhammer(a, q, X) * q_pochhammer(b, q, Y) * q_pochhammer(q / g, q, Z) * q_pochhammer(g, q, s)
    den = q_pochhammer(q, q, X) * q_pochhammer(q, q, Y) * q_pochhammer(q, q, Z) * q_pochhammer(a * b, q, s)
    if den == 0:
        raise PoleError("q-coefficient denominator vanishes")
    # (q;q)_k ~ (1-q)^k k!, and the ratio carries (1-q)^(X+Y+Z - Z - X - Y) = 1 overall
    return num / den


def q_limit_check(p: Mapping, X: int, Y: int, Z: int, q_sequence=DEFAULT_Q_SEQUENCE,
                  dps: int | None = None) -> VerificationReport:
    """Compare the q-coefficient at ``(q^alpha, q^beta, q^gamma; q)`` with the classical one as q -> 1.

    Passes iff the relative errors strictly decrease along the sequence (a
    run of zeros counts as non-increasing; errors at rounding level count as
    zero) and the last one is below 1e-2.
    """
    qs = [Fraction(str(q)) if isinstance(q, float) else as_exact(q) for q in q_sequence]
    if not qs or any(not 0 < q < 1 for q in qs) or any(b <= a for a, b in zip(qs, qs[1:])):
        raise ValueError("q_sequence must increase strictly inside (0, 1)")
    start = time.perf_counter()
    params = {k: as_exact(p[k]) for k in ("alpha", "beta", "gamma")}
    report = VerificationReport("q-limit", NUMERIC, {**params, "X": X, "Y": Y, "Z": Z}, FAIL, tol=1e-2)
    try:
        classical = ggr_lhs_coefficient(params, X, Y, Z)
    except PoleError as exc:
        report.verdict = ERROR
        report.error = f"PoleError: {exc}"
        return report
    errors = []
    with mpmath.workdps(dps or 30):
        # differences at rounding level are identically-zero errors, not a trend
        floor = mpmath.mpf(10) ** (5 - mpmath.mp.dps)
        c = to_numeric(classical)
        for q in map(to_numeric, qs):
            v = _q_coefficient(params, X, Y, Z, q)
            err = abs(v - c) / abs(c) if c else abs(v)
            errors.append(mpmath.mpf(0) if err < floor else err)
        report.measured = {"classical": classical, "q": qs, "relative errors": errors}
    monotone = all(b < a or (a == 0 and b == 0) for a, b in zip(errors, errors[1:]))
    if monotone and errors[-1] < 1e-2:
        report.verdict = PASS
    else:
        report.differences.append({"errors": errors, "monotone": monotone})
    report.timing = time.perf_counter() - start
    return report


# -- batches ---------------------------------------------------------------------------------


def _job(args):
    identity, mode, p, target, seed, index, dps = args
    if mode == FORMAL:
        return verify_formal(identity, p, target, seed=seed, sample_index=index)
    return verify_numeric(identity, p, target, seed=seed, sample_index=index, dps=dps)


def verify_samples(identity, seed: int = 0, count: int = 5, mode: str | None = None, order: int = 6,
                   tol=DEFAULT_TOL, fixed: Mapping | None = None, jobs: int = 1, dps: int | None = None) -> list:
    """Sample ``count`` points and verify each; reports come back ordered by sample index."""
    desc = get_identity(identity)
    mode = mode or _default_mode(desc)
    samples = sample_parameters(desc.id, seed, count, mode=mode, fixed=fixed)
    target = order if mode == FORMAL else tol
    tasks = [(desc.id, mode, p, target, seed, i, dps) for i, p in enumerate(samples)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_job, tasks))
    else:
        reports = [_job(t) for t in tasks]
    return sorted(reports, key=lambda r: (r.identity, r.seed, r.sample_index))
