import random
from fractions import Fraction

import pytest

import oracles
from hypident.errors import ConstraintViolation, ModeViolation, PoleError, UnknownIdentity
from hypident.registry import build_side, catalogue, get_identity
from hypident.registry import andrews, qggr
from hypident.registry.core import REGISTRY
from hypident.registry.ggr import ggr1_multisum, ggr2_multisum, ggr_lhs_coefficient
from hypident.series import TruncatedSeries, coefficient, monomials

F = Fraction
IDS = {"ggr", "ggrq", "ggrq1", "ggrq2", "ggrq3", "ggrq4", "ggrq5", "vand", "pfaff", "qvand", "qpfaff",
       "qbin", "euler-2f1", "bailey", "1psi1", "andrews", "8phi7"}
QP = {"alpha": F(2), "beta": F(3), "gamma": F(5), "q": F(1, 2)}


def test_catalogue_lists_every_identity():
    entries = catalogue()
    assert {e["id"] for e in entries} == IDS
    for e in entries:
        assert e["anchor"] and e["sides"] and e["mode"] in ("formal", "numeric", "both")


def test_unknown_identity():
    with pytest.raises(UnknownIdentity):
        get_identity("nope")


def test_ggr_coefficient_examples():
    p = {"alpha": 1, "beta": 2, "gamma": 3}
    assert ggr_lhs_coefficient(p, 0, 0, 0) == 1
    assert ggr_lhs_coefficient(p, 1, 0, 0) == 1


def test_ggr_coefficient_against_oracle():
    rng = random.Random(3)
    for _ in range(20):
        a, b, g = (F(rng.randint(-30, 30), rng.randint(2, 11)) + F(1, 101) for _ in range(3))
        X, Y, Z = (rng.randint(0, 4) for _ in range(3))
        p = {"alpha": a, "beta": b, "gamma": g}
        assert ggr_lhs_coefficient(p, X, Y, Z) == oracles.ggr_triple_sum(a, b, g, X, Y, Z)


def test_ggr_sides_at_order_two():
    p = {"alpha": 1, "beta": 2, "gamma": 3}
    s0, s1, s2 = (build_side("ggr", s, p, order=2) for s in ("GGR0", "GGR1", "GGR2"))
    assert coefficient(s0, (1, 0, 0)) == 1
    # (1-gamma)_1 (gamma)_{-1} / (alpha+beta)_{-1} = (-2)(1/2)/(1/2)
    assert coefficient(s0, (0, 0, 1)) == -2
    assert s0 == s1 == s2


def test_ggr_multisums_match_closed_form():
    p = {"alpha": F(1, 3), "beta": F(-2, 7), "gamma": F(5, 4)}
    for X, Y, Z in monomials(3, 4):
        c = ggr_lhs_coefficient(p, X, Y, Z)
        assert ggr1_multisum(p, X, Y, Z) == c
        assert ggr2_multisum(p, X, Y, Z) == c


def test_ggr_right_sides_agree_directly():
    p = {"alpha": F(3, 5), "beta": F(-1, 3), "gamma": F(7, 9)}
    assert build_side("ggr", "GGR1", p, order=6) == build_side("ggr", "GGR2", p, order=6)


def test_ggr_constraint():
    with pytest.raises(ConstraintViolation):
        build_side("ggr", "GGR1", {"alpha": 1, "beta": -3, "gamma": F(1, 2)}, order=2)


@pytest.mark.parametrize("variant", ["ggrq", "ggrq1"])
def test_ggrq_bruteforce(variant):
    lhs = qggr.ggrq_lhs_coefficient if variant == "ggrq" else qggr.plain_lhs_coefficient
    assert qggr.ggrq_rhs_coefficient_bruteforce(variant, QP, 0, 0, 0) == 1
    for X, Y, Z in monomials(3, 6):
        assert qggr.ggrq_rhs_coefficient_bruteforce(variant, QP, X, Y, Z) == lhs(QP, X, Y, Z)


def test_ggrq_lhs_formula_by_hand():
    # the weighted closed coefficient written out from its definition
    a, b, g, q = QP["alpha"], QP["beta"], QP["gamma"], QP["q"]
    for X, Y, Z in monomials(3, 4):
        s = X + Y - Z
        if s >= 0:
            ratio = oracles.qrising(g, q, s) / oracles.qrising(a * b, q, s)
        else:
            ratio = oracles.qrising(a * b * q ** s, q, -s) / oracles.qrising(g * q ** s, q, -s)
        value = (q ** (-(Y * (Y - 1) // 2) - Z * (Z - 1) // 2) * a ** -Z * b ** (X - Z) * g ** (2 * Z - X - Y)
                 * oracles.qrising(a, q, X) * oracles.qrising(b, q, Y) * oracles.qrising(q / g, q, Z) * ratio
                 / (oracles.qrising(q, q, X) * oracles.qrising(q, q, Y) * oracles.qrising(q, q, Z)))
        assert qggr.ggrq_lhs_coefficient(QP, X, Y, Z) == value


@pytest.mark.parametrize("identity", ["ggrq2", "ggrq3", "ggrq4", "8phi7"])
def test_q_sides_agree_formally(identity):
    p = {"alpha": F(2, 7), "beta": F(-3, 5), "gamma": F(4, 9), "q": F(1, 3)}
    assert build_side(identity, "lhs", p, order=4) == build_side(identity, "rhs", p, order=4)


@pytest.mark.parametrize("identity", ["ggrq", "ggrq1"])
def test_formal_only_identities_refuse_numeric(identity):
    point = dict(QP, x=F(1, 10), y=F(1, 10), z=F(1, 10))
    with pytest.raises(ModeViolation):
        build_side(identity, "lhs", point, numeric=True)


def test_numeric_only_refuses_formal():
    with pytest.raises(ModeViolation):
        build_side("1psi1", "sum", {"a": 2, "b": F(1, 4), "q": F(1, 2)}, order=3)


def test_qbin_sides():
    p = {"a": F(1, 3), "q": F(1, 2)}
    assert build_side("qbin", "lhs", p, order=4) == build_side("qbin", "rhs", p, order=4)


def _evaluate(value, point):
    """Exact value of a polynomial-in-monomials parameter at a scalar point."""
    from hypident.hyper import MonomialRatio

    if isinstance(value, MonomialRatio):
        mono = 1
        for v, e in zip(("x", "y", "z"), value.denominator):
            mono *= point[v] ** e
        return _evaluate(value.numerator, point) / mono
    if isinstance(value, TruncatedSeries):
        total = F(0)
        for idx, c in value.items():
            term = c
            for v, e in zip(value.variables, idx):
                term *= point[v] ** e
            total += term
        return total
    return F(value)


def _capture(monkeypatch, name):
    seen = []
    original = getattr(qggr, name)

    def spy(spec):
        seen.append(spec)
        return original(spec)

    monkeypatch.setattr(qggr, name, spy)
    return seen


def test_ggrq2_right_side_is_balanced(monkeypatch):
    seen = _capture(monkeypatch, "basic_hyp_phi")
    rng = random.Random(11)
    for _ in range(5):
        p = {"alpha": F(rng.randint(1, 40), rng.randint(41, 50)), "beta": F(rng.randint(-9, -1), 7),
             "gamma": F(rng.randint(2, 30), 31), "q": F(1, 2)}
        qggr.ggrq2_rhs_series(p, 3)
        spec = seen[-1]
        assert len(spec.upper) == 4 and len(spec.lower) == 3
        point = {v: F(rng.randint(1, 20), 23) for v in "xyz"}
        up, low = F(1), F(1)
        for u in spec.upper:
            up *= _evaluate(u, point)
        for w in spec.lower:
            low *= _evaluate(w, point)
        assert low == spec.base * up


@pytest.mark.parametrize("builder", ["ggrq3_rhs_series", "ggrq4_rhs_series", "vwp_form_rhs_series"])
def test_vwp_argument_is_bailey_balanced(monkeypatch, builder):
    # each 8phi7 has argument a^2 q^2 / (b c d e f), the condition under which
    # Bailey's transformation links the forms
    seen = _capture(monkeypatch, "vwp_8phi7")
    p = {"alpha": F(2, 7), "beta": F(-3, 5), "gamma": F(4, 9), "q": F(1, 3)}
    getattr(qggr, builder)(p, 2)
    spec = seen[-1]
    point = {"x": F(3, 11), "y": F(5, 13), "z": F(7, 17)}
    a = _evaluate(spec.a, point)
    prod = F(1)
    for v in spec.lateral:
        prod *= _evaluate(v, point)
    assert _evaluate(spec.argument, point) == a * a * spec.base ** 2 / prod


def test_andrews_n1_is_q_binomial():
    # c = a collapses the left side to the q-binomial sum in b1
    p = {"a": F(1, 3), "c": F(1, 3), "q": F(1, 2), "b1": F(2, 5)}
    lhs, rhs = andrews.andrews_sides(1, p, 6)
    qbin = build_side("qbin", "rhs", {"a": F(2, 5), "q": F(1, 2)}, order=6)
    assert lhs.coefficients() == qbin.coefficients() == rhs.coefficients()


def test_andrews_all_b_equal_q():
    q = F(1, 3)
    p = {"a": F(2, 7), "c": F(2, 7) * q ** -2, "q": q, "b1": q, "b2": q, "b3": q}
    lhs, rhs = andrews.andrews_sides(3, p, 4)
    for idx in monomials(3, 4):
        s = sum(idx)
        assert coefficient(lhs, idx) == oracles.qrising(p["a"], q, s) / oracles.qrising(p["c"], q, s)
    assert lhs == rhs


def test_andrews_zero_point():
    p = {"a": F(1, 3), "c": F(1, 5), "q": F(1, 2), "b1": F(2, 5), "b2": F(-1, 3), "x1": 0, "x2": 0}
    lhs, rhs = andrews.andrews_sides(2, p, None, numeric=True)
    assert lhs == 1 and abs(rhs - 1) < 1e-14


def test_andrews_reading_screen():
    p = {"a": F(1, 3), "c": F(1, 5), "q": F(1, 2), "b1": F(2, 5), "b2": F(-1, 3),
         "x1": F(1, 4), "x2": F(-1, 5), "n": 2}
    result = andrews.screen_readings(p)
    assert andrews.ANDREWS_READING == "heine"
    assert result["heine"] < 1e-12
    for name, defect in result.items():
        if name != "heine":
            assert isinstance(defect, Exception) or defect > 1e-3


def test_andrews_needs_terminating_slice_formally():
    p = {"a": F(1, 3), "c": F(1, 5), "q": F(1, 2), "b1": F(2, 5), "n": 1}
    with pytest.raises(ConstraintViolation):
        build_side("andrews", "rhs", p, order=3)


def test_lemmas_exact():
    for N in range(5):
        assert build_side("vand", "lhs", {"a": F(1, 3), "c": F(5, 7)}, order=N) == \
            build_side("vand", "rhs", {"a": F(1, 3), "c": F(5, 7)}, order=N)


def test_pole_propagates():
    with pytest.raises(PoleError):
        ggr_lhs_coefficient({"alpha": F(1, 2), "beta": F(1, 2), "gamma": F(1, 3)}, 0, 0, 1)


def test_registry_is_complete():
    assert set(REGISTRY) == IDS
