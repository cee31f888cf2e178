import time
from fractions import Fraction

import pytest

from fdga.hopf import (HopfError, epsilon_to_hopf, hopf_for_power_map, hopf_toy_check,
                       intersection_products, lifted_model_coefficient, uniqueness_of_epsilon)


@pytest.mark.parametrize("q", [1, 2, 3, 5])
def test_power_maps(q):
    t0 = time.perf_counter()
    res = hopf_for_power_map(q)
    assert res.verified
    assert res.hopf_invariant == q * q
    assert res.lifted_coefficient == res.model_coefficient == -q * q
    assert time.perf_counter() - t0 < 1


@pytest.mark.parametrize("eps", [-3, -1, 0, 2, 4])
@pytest.mark.parametrize("sign", [1, -1])
def test_epsilon_family(eps, sign):
    res = epsilon_to_hopf(eps, sign)
    assert res.hopf_invariant == eps * eps
    assert res.violations == []


def test_lift_agrees_with_witness_for_both_signs():
    for sign in (1, -1):
        assert lifted_model_coefficient(2, sign) == -4


def test_uniqueness_of_epsilon():
    # α ↦ c1 a + c2 b respects α² = 0 iff c1² = c2² (since b² = -a², ab = 0)
    assert uniqueness_of_epsilon(1, 1).accepted and uniqueness_of_epsilon(1, 1).sign == 1
    r = uniqueness_of_epsilon(2, -2)
    assert r.accepted and r.epsilon == 2 and r.sign == -1
    assert not uniqueness_of_epsilon(1, 0).accepted
    assert not uniqueness_of_epsilon(Fraction(1, 2), Fraction(1, 2)).accepted
    for c1 in range(-3, 4):
        for c2 in range(-3, 4):
            assert uniqueness_of_epsilon(c1, c2).accepted == (c1 * c1 == c2 * c2)


def test_intersection_data_matches_chern_classes():
    table = intersection_products()
    assert table[("u", "a")] == {"x": 1} and table[("v", "b")] == {"y": -1}
    assert table[("a", "a")] == {"pt": 1} and table[("b", "b")] == {"pt": -1}
    assert table[("u", "b")] == {} and table[("v", "a")] == {}


def test_toy_model_fixes_the_sign():
    # dθ·θ = σθ = θσ = -λ w₃ forces λ = -1 for w₃ = θσ
    assert hopf_toy_check(-1) == []
    assert hopf_toy_check(1)
    assert hopf_toy_check(2)


def test_invalid_inputs():
    with pytest.raises(ValueError):
        hopf_for_power_map(0)
    with pytest.raises(ValueError):
        epsilon_to_hopf(1, 2)
