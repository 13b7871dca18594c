from fractions import Fraction
from itertools import product

import pytest

from hypident.replay import STAGES, replay_proof
from hypident.registry.ggr import ggr_lhs_coefficient

F = Fraction
P = {"alpha": F(3, 7), "beta": F(-5, 11), "gamma": F(9, 13)}


@pytest.mark.parametrize("variant", ["ggr1", "ggr2"])
def test_origin(variant):
    t = replay_proof(variant, P, 0, 0, 0)
    assert t.passed and t.values == [1] * 5


@pytest.mark.parametrize("variant", ["ggr1", "ggr2"])
def test_all_small_coefficients(variant):
    for X, Y, Z in product(range(3), repeat=3):
        t = replay_proof(variant, P, X, Y, Z)
        assert t.passed, t.to_dict()
        assert [n for n, _ in t.stages] == list(STAGES)
        # stage 4 summed directly and by Pfaff-Saalschutz
        assert t.checks["stage 4 via Pfaff-Saalschutz"] == t.values[3]


def test_integer_parameters_record_poles():
    # alpha=1, beta=2, gamma=3: the closed form is fine, intermediate 2F1s hit poles
    p = {"alpha": 1, "beta": 2, "gamma": 3}
    t = replay_proof("ggr1", p, 1, 1, 1)
    assert t.values[0] == t.values[4] == ggr_lhs_coefficient(p, 1, 1, 1)
    if not t.passed:
        assert t.errors and all(k in range(1, 6) for k in t.errors)


def test_bounds_and_variant():
    with pytest.raises(ValueError):
        replay_proof("ggr3", P, 0, 0, 0)
    with pytest.raises(ValueError):
        replay_proof("ggr1", P, 6, 0, 0)
    assert replay_proof("GGR2", P, 4, 5, 3, bound=5).passed


def test_to_dict():
    d = replay_proof("ggr2", P, 1, 2, 1).to_dict()
    assert d["passed"] and len(d["stages"]) == 5 and all(s["equal"] for s in d["stages"])
