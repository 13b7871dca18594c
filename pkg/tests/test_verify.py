import json
from fractions import Fraction

import mpmath
import pytest

from hypident import verify as V
from hypident.errors import ConstraintUnsatisfiable, ModeViolation, OutOfDomain
from hypident.registry import get_identity
from hypident.registry.core import with_perturbation
from hypident.registry.ggr import ggr_admissible
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
QP = {"alpha": F(2), "beta": F(3), "gamma": F(5), "q": F(1, 2)}
FORMAL_IDS = ["ggr", "ggrq", "ggrq1", "ggrq2", "ggrq3", "ggrq4", "8phi7", "vand", "pfaff", "qvand", "qpfaff",
              "qbin", "euler-2f1", "bailey", "andrews"]


def test_sampling_is_deterministic_and_admissible():
    a = sample_parameters("ggr", 42, 5)
    assert a == sample_parameters("ggr", 42, 5)
    assert a != sample_parameters("ggr", 43, 5)
    assert len({tuple(sorted(p.items())) for p in a}) == 5
    for p in a:
        assert ggr_admissible(p)
        assert all(abs(v.numerator) <= 50 and v.denominator <= 50 for v in p.values())


def test_1psi1_samples_in_annulus():
    for p in sample_parameters("1psi1", 3, 10):
        assert abs(p["b"] / p["a"]) < abs(p["z"]) < 1


def test_q_bases_rotate():
    qs = [p["q"] for p in sample_parameters("ggrq", 1, 4)]
    assert qs == [F(1, 2), F(1, 3), F(2, 5), F(3, 7)]
    assert {p["q"] for p in sample_parameters("qvand", 1, 6)} == {F(1, 2), F(1, 3), F(2, 5)}


def test_sampling_errors():
    with pytest.raises(ValueError):
        sample_parameters("ggr", 1, 0)
    with pytest.raises(ModeViolation):
        sample_parameters("ggrq", 1, 1, mode="numeric")
    with pytest.raises(ConstraintUnsatisfiable):
        sample_parameters("ggr", 1, 1, fixed={"alpha": 1, "beta": -1})


def test_verify_formal_examples():
    r = verify_formal("ggrq", QP, 6)
    assert r.verdict == PASS and r.differences == []
    assert verify_formal("qbin", {"a": F(1, 3), "q": F(1, 2)}, 8).verdict == PASS
    (p,) = sample_parameters("ggr", 42, 1)
    assert verify_formal("ggr", p, 8).verdict == PASS


def test_verify_formal_mode_violation():
    with pytest.raises(ModeViolation):
        verify_formal("1psi1", {"a": 2, "b": F(1, 4), "q": F(1, 2)}, 3)


def test_builder_error_is_not_a_failure():
    from dataclasses import replace

    from hypident.errors import PoleError

    def broken(params, order):
        raise PoleError("forced pole")

    desc = get_identity("vand")
    sides = (desc.sides[0], replace(desc.sides[1], formal=broken))
    r = verify_formal(replace(desc, sides=sides), {"a": F(1, 3), "c": F(5, 7)}, 3)
    assert r.verdict == V.ERROR and "PoleError" in r.error


@pytest.mark.parametrize("identity", FORMAL_IDS)
def test_mutation_is_detected(identity):
    desc = get_identity(identity)
    fixed = {"n": 2} if identity == "andrews" else None
    order = 2
    side = desc.sides[-1].name
    index = (1,) + (0,) * (len(desc.variables) - 1) if identity != "andrews" else (1, 0)
    mutated = with_perturbation(identity, side, index, F(1, 7))
    for i, p in enumerate(sample_parameters(identity, 5, 3, mode="formal", fixed=fixed)):
        assert verify_formal(identity, p, order).verdict == PASS
        assert verify_formal(mutated, p, order).verdict == FAIL


@pytest.mark.parametrize("identity", ["1psi1", "ggrq5"])
def test_numeric_mutation_is_detected(identity):
    mutated = with_perturbation(identity, get_identity(identity).sides[-1].name, None)
    for p in sample_parameters(identity, 5, 2, mode="numeric"):
        assert verify_numeric(identity, p).verdict == PASS
        assert verify_numeric(mutated, p).verdict == FAIL


def test_numeric_examples():
    (p,) = sample_parameters("ggrq3", 1, 1, mode="numeric")
    r = verify_numeric("ggrq3", p, 1e-10)
    assert r.verdict == PASS and r.measured["relative error"] < 1e-10
    (p,) = sample_parameters("ggrq4", 1, 1, mode="numeric")
    assert verify_numeric("ggrq4", p, 1e-9).verdict == PASS
    q = F(1, 2)
    assert verify_numeric("1psi1", {"a": F(3, 2), "b": q, "q": q, "z": F(2, 5)}).verdict == PASS


def test_numeric_out_of_domain():
    p = dict(QP, x=F(9, 10), y=F(1, 10), z=F(1, 10))
    with pytest.raises(OutOfDomain):
        verify_numeric("ggrq3", p)
    with pytest.raises(ModeViolation):
        verify_numeric("ggrq", dict(QP, x=F(1, 10), y=F(1, 10), z=F(1, 10)))


def test_falsify_ggrq2():
    point = {"alpha": F(3, 7), "beta": F(5, 4), "gamma": F(2, 3), "q": F(1, 2),
             "x": F(3, 10), "y": F(-1, 4), "z": F(1, 5)}
    r = falsify_analytic_ggrq2(point)
    assert r.verdict == EXPECTED_FAIL
    m = r.measured
    assert m["defect |L-T1|"] > 1e-8
    # the defect is exactly the correction term
    assert abs(m["L"] - m["T1"] - m["T2"]) < 1e-10 * abs(m["L"])
    # the same parameters pass formally
    params = {k: point[k] for k in ("alpha", "beta", "gamma", "q")}
    assert verify_formal("ggrq2", params, 6).verdict == PASS
    # verify_numeric on ggrq2 routes to the falsification
    assert verify_numeric("ggrq2", point).verdict == EXPECTED_FAIL


def test_falsify_refuses_origin():
    point = dict(QP, x=0, y=0, z=0)
    with pytest.raises(OutOfDomain):
        falsify_analytic_ggrq2(point)


def test_q_limit_examples():
    p = {"alpha": 1, "beta": 2, "gamma": 3}
    r = q_limit_check(p, 0, 0, 0)
    assert r.verdict == PASS and all(e == 0 for e in r.measured["relative errors"])
    r = q_limit_check(p, 1, 0, 0)
    assert r.measured["classical"] == 1
    assert r.verdict == PASS
    r = q_limit_check({"alpha": F(1, 3), "beta": F(2, 7), "gamma": F(5, 4)}, 1, 1, 1)
    errs = r.measured["relative errors"]
    assert r.verdict == PASS and errs[0] > errs[1] > errs[2] > 0 and errs[2] < 1e-2


def test_q_limit_non_monotone_fails(monkeypatch):
    values = iter([mpmath.mpf("1.5"), mpmath.mpf("1.2"), mpmath.mpf("1.3")])
    monkeypatch.setattr(V, "_q_coefficient", lambda *args: next(values))
    r = q_limit_check({"alpha": 1, "beta": 2, "gamma": 3}, 1, 0, 0)
    assert r.verdict == FAIL


def test_q_limit_bad_sequence():
    with pytest.raises(ValueError):
        q_limit_check({"alpha": 1, "beta": 2, "gamma": 3}, 1, 0, 0, q_sequence=(0.99, 0.9))


def test_reports_are_reproducible():
    a = verify_samples("ggr", seed=42, count=3, order=5)
    b = verify_samples("ggr", seed=42, count=3, order=5)
    assert reports_to_json(a, include_timing=False) == reports_to_json(b, include_timing=False)


def test_parallel_matches_serial():
    serial = verify_samples("qvand", seed=9, count=4, order=4)
    parallel = verify_samples("qvand", seed=9, count=4, order=4, jobs=2)
    assert reports_to_json(serial, False) == reports_to_json(parallel, False)


def test_json_schema():
    p = {"a": F(1, 3), "c": F(5, 7)}
    doc = json.loads(verify_formal("vand", p, 4, seed=1, sample_index=0).to_json())
    assert set(doc) >= {"identity", "mode", "params", "order", "tol", "differences", "verdict", "seed", "timing"}
    assert doc["params"] == {"a": "1/3", "c": "5/7"}
    mutated = with_perturbation("vand", "rhs", None, F(1, 2))
    doc = json.loads(verify_formal(mutated, p, 4).to_json())
    assert doc["verdict"] == "fail"
    assert doc["differences"][0]["actual"].endswith("/" + doc["differences"][0]["actual"].split("/")[1])
    (point,) = sample_parameters("qbin", 0, 1, mode="numeric")
    doc = json.loads(verify_numeric("qbin", point).to_json())
    value = doc["measured"]["lhs"]
    assert len(value.replace("-", "").replace(".", "").lstrip("0")) <= 17


def test_text_report():
    r = verify_formal("vand", {"a": F(1, 3), "c": F(5, 7)}, 3)
    assert "vand" in r.to_text() and "PASS" in r.to_text()
