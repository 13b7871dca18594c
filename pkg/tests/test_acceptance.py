"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import random
import time
from fractions import Fraction
from itertools import product

import mpmath

from hypident.dsl import parse, render
from hypident.dsl.corpus import CORPUS
from hypident.exact import pochhammer, q_pochhammer
from hypident.registry import andrews, get_identity
from hypident.registry.core import with_perturbation
from hypident.replay import replay_proof
from hypident.series import TruncatedSeries, monomials
from hypident.verify import (
    EXPECTED_FAIL,
    FAIL,
    PASS,
    falsify_analytic_ggrq2,
    q_limit_check,
    reports_to_json,
    sample_parameters,
    verify_formal,
    verify_numeric,
    verify_samples,
)

F = Fraction


def verdict(number, ok, detail):
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


def test_criterion_1_ggr_formal():
    start = time.perf_counter()
    samples = sample_parameters("ggr", 42, 5)
    reports = [verify_formal("ggr", p, 8, seed=42, sample_index=i) for i, p in enumerate(samples)]
    elapsed = time.perf_counter() - start
    sides = {d["sides"] for r in reports for d in r.differences}
    ok = all(r.verdict == PASS and not r.differences for r in reports) and elapsed <= 60
    verdict(1, ok, f"GGR0 = GGR1 = GGR2 to order 8 at 5 samples in {elapsed:.1f}s; mismatching pairs {sorted(sides)}")


def test_criterion_2_lemmas_exact():
    plan = [("vand", range(9)), ("pfaff", range(7)), ("qvand", range(7)), ("qpfaff", range(7))]
    checked, bad, bases = 0, [], set()
    for identity, orders in plan:
        samples = sample_parameters(identity, 2, 12)
        for p in samples:
            bases.add(p.get("q"))
            for N in orders:
                checked += 1
                if verify_formal(identity, p, N).verdict != PASS:
                    bad.append((identity, N))
    ok = not bad and {F(1, 2), F(1, 3), F(2, 5)} <= bases
    verdict(2, ok, f"{checked} exact lemma instances at 12 samples each, failures {bad[:3]}")


def test_criterion_3_formal_q_analogues():
    results = []
    for identity in ("ggrq", "ggrq1", "ggrq2"):
        for i, p in enumerate(sample_parameters(identity, 3, 3)):
            results.append((identity, verify_formal(identity, p, 6, seed=3, sample_index=i).verdict))
    ok = all(v == PASS for _, v in results)
    verdict(3, ok, f"ggrq, ggrq1, ggrq2 exact to total degree 6 at 3 samples each: {[v for _, v in results]}")


def test_criterion_4_analytic_q_analogues():
    worst, count, bad = 0.0, 0, []
    domain = get_identity("ggrq3").constraints[-1].check
    for identity in ("ggrq3", "ggrq4", "ggrq5"):
        for i, p in enumerate(sample_parameters(identity, 4, 10, mode="numeric")):
            if identity == "ggrq3":
                assert domain(p)
            r = verify_numeric(identity, p, 1e-9, seed=4, sample_index=i)
            count += 1
            worst = max(worst, float(r.measured.get("relative error", 1)))
            if r.verdict != PASS:
                bad.append(identity)
    ok = not bad and worst < 1e-9
    verdict(4, ok, f"{count} numeric points, worst relative error {worst:.2e}, failures {bad}")


def test_criterion_5_ggrq2_analytic_failure():
    reports = [falsify_analytic_ggrq2(p, 1e-10, seed=5, sample_index=i)
               for i, p in enumerate(sample_parameters("ggrq2", 5, 5, mode="numeric"))]
    defects = [float(r.measured["defect |L-T1|"]) for r in reports]
    corrected = [float(r.measured["relative |L-(T1+T2)|/|L|"]) for r in reports]
    ok = (all(r.verdict == EXPECTED_FAIL for r in reports) and min(defects) > 1e-8 and max(corrected) < 1e-10)
    verdict(5, ok, f"defect |L-T1| >= {min(defects):.2e}, corrected error <= {max(corrected):.2e}")


def test_criterion_6_1psi1_and_bailey():
    psi = [verify_numeric("1psi1", p, 1e-10) for p in sample_parameters("1psi1", 6, 10)]
    worst = max(float(r.measured["relative error"]) for r in psi)
    bailey_bad = []
    for p in sample_parameters("bailey", 6, 5):
        for N in range(7):
            lhs = get_identity("bailey").side("lhs").formal(p, N)
            rhs = get_identity("bailey").side("rhs").formal(p, N)
            if not (isinstance(lhs, Fraction) and lhs == rhs):
                bailey_bad.append(N)
    ok = all(r.verdict == PASS for r in psi) and worst < 1e-10 and not bailey_bad
    verdict(6, ok, f"1psi1 worst relative error {worst:.2e} at 10 points; Bailey N=0..6 exact at 5 samples, "
                   f"failures {bailey_bad}")


def test_criterion_7_proof_replay():
    failures, total = [], 0
    for p in sample_parameters("ggr", 7, 3):
        for variant in ("ggr1", "ggr2"):
            for X, Y, Z in product(range(4), repeat=3):
                total += 1
                if not replay_proof(variant, p, X, Y, Z).passed:
                    failures.append((variant, X, Y, Z))
    verdict(7, not failures, f"{total} traces with five equal stages, failures {failures[:3]}")


def test_criterion_8_q_limit():
    p = {"alpha": F(1, 3), "beta": F(2, 7), "gamma": F(5, 4)}
    bad, finals = [], []
    for X, Y, Z in monomials(3, 3):
        r = q_limit_check(p, X, Y, Z)
        errs = r.measured["relative errors"]
        finals.append(float(errs[-1]))
        strict = (X, Y, Z) == (0, 0, 0) or all(b < a for a, b in zip(errs, errs[1:]))
        if r.verdict != PASS or not strict:
            bad.append((X, Y, Z))
    ok = not bad and max(finals) < 1e-2
    verdict(8, ok, f"20 coefficients, errors strictly decreasing, largest final error {max(finals):.2e}, failures {bad}")


def _ring_axioms(rng):
    def rnd():
        idxs = list(monomials(3, 4))
        return TruncatedSeries(("x", "y", "z"), 4, {rng.choice(idxs): F(rng.randint(-9, 9), rng.randint(1, 9))
                                                    for _ in range(6)})

    for _ in range(20):
        a, b, c = rnd(), rnd(), rnd()
        if not ((a * b) * c == a * (b * c) and a * b == b * a and a * (b + c) == a * b + a * c):
            return False
    return True


def _poch_laws(rng):
    for _ in range(100):
        a = F(rng.randint(-50, 50), rng.randint(1, 50))
        q = rng.choice([F(1, 2), F(1, 3), F(2, 5)])
        k, m = rng.randint(0, 6), rng.randint(0, 6)
        if pochhammer(a, k + m) != pochhammer(a, k) * pochhammer(a + k, m):
            return False
        if q_pochhammer(a, q, k + m) != q_pochhammer(a, q, k) * q_pochhammer(a * q ** k, q, m):
            return False
    return True


def _fuzz(rng):
    from hypident.errors import DSLError

    alphabet = "param var mode where q a x ( ) , ; + - * / ^ == 1 2/3 sum qpoch hyp auto \n".split(" ")
    for _ in range(300):
        text = " ".join(rng.choice(alphabet) for _ in range(rng.randint(0, 30)))
        try:
            parse(text)
        except DSLError as exc:
            if exc.line < 1 or exc.column < 1:
                return False
    return True


def _mutations():
    for identity in ("ggr", "ggrq2", "qbin", "vand", "bailey"):
        desc = get_identity(identity)
        index = (1,) + (0,) * (len(desc.variables) - 1)
        mutated = with_perturbation(identity, desc.sides[-1].name, index, F(1, 3))
        for p in sample_parameters(identity, 9, 3, mode="formal"):
            if verify_formal(mutated, p, 3).verdict != FAIL:
                return False
    return True


def test_criterion_9_property_suites():
    rng = random.Random(9)
    checks = {
        "ring axioms": _ring_axioms(rng),
        "Pochhammer laws": _poch_laws(rng),
        "parser fuzz": _fuzz(rng),
        "round trip": all(parse(render(parse(e.text))) == parse(e.text) for e in CORPUS.values()),
        "determinism": reports_to_json(verify_samples("ggr", 1, 2, order=4), False)
        == reports_to_json(verify_samples("ggr", 1, 2, order=4), False),
        "mutations caught": _mutations(),
    }
    failed = [k for k, v in checks.items() if not v]
    verdict(9, not failed, f"{len(checks)} property groups, failed {failed}")


def test_criterion_10_andrews():
    assert andrews.ANDREWS_READING == "heine"
    results = []
    for n in (1, 2, 3):
        for p in sample_parameters("andrews", 10, 2, mode="formal", fixed={"n": n}):
            lhs, rhs = andrews.andrews_sides(n, p, 4)
            results.append(lhs == rhs)
    point = {"a": F(1, 3), "c": F(1, 5), "q": F(1, 2), "b1": F(2, 5), "b2": F(-1, 3), "b3": F(3, 7),
             "x1": F(1, 4), "x2": F(-1, 5), "x3": F(1, 6), "n": 3}
    with mpmath.workdps(20):
        screen = andrews.screen_readings(point)
    ok = all(results) and screen["heine"] < 1e-12
    verdict(10, ok, f"reading 'heine': {sum(results)}/{len(results)} exact order-4 matches for n=1,2,3; "
                    f"numeric screen defect {screen['heine']:.1e}")
