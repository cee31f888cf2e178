import random

import pytest

from fdga.algebra import CDGA, FreeAlgebra, Generator, Morphism, TruncationError
from fdga.hopf import scenario_maps, sphere_models
from fdga.lifting import LiftError, lift, verify_lift
from fdga.paths import check_r_homotopy, evaluate

from randgen import random_lift_instance, tensor_contractible


def test_hopf_lift_reproduces_the_witness_pattern():
    maps = scenario_maps(1, -1)
    MS2 = maps["rho"].source
    f = maps["E1(g)"].compose(maps["rho"])
    res = lift(MS2, maps["rho'"], f, r=1)
    gamma = res.g.target.gen("gamma")
    assert res.g.images["alpha"] == res.g.target.zero()
    assert res.g.images["beta"] == -gamma
    assert str(res.h.images["alpha"]) == "t*(a - b) + dt*(u - v)"
    assert check_r_homotopy(res.h, maps["rho'"].compose(res.g), f, 1) == []


def test_lift_fails_at_wrong_r():
    maps = scenario_maps(1, -1)
    f = maps["E1(g)"].compose(maps["rho"])
    with pytest.raises(LiftError) as e:
        lift(maps["rho"].source, maps["rho'"], f, r=0)
    assert e.value.generator == "alpha"


def test_non_cofibrant_source_is_rejected():
    maps = scenario_maps(1, -1)
    flat = maps["rho"].source.with_weights({"beta": 0})
    f = Morphism(flat, maps["rho'"].target, maps["E1(g)"].compose(maps["rho"]).images)
    with pytest.raises(LiftError):
        lift(flat, maps["rho'"], f, r=1)


def test_truncation_guard():
    MS2 = sphere_models(truncation=3)[0]
    B = MS2
    A = tensor_contractible(B, 2, 0, 0)
    w = Morphism(A, B, {"alpha": B.gen("alpha"), "beta": B.gen("beta"),
                        "x": B.zero(), "y": B.zero()})
    with pytest.raises(TruncationError):
        lift(MS2, w, Morphism.identity(MS2), r=0)


def test_acyclic_extension_quotient():
    # M = M(S^2); A = M(S^2) ⊗ Λ(x, dx); w kills x; f = identity
    MS2 = sphere_models(truncation=6)[0]
    A = tensor_contractible(MS2, 2, 0, 0)
    w = Morphism(A, MS2, {"alpha": MS2.gen("alpha"), "beta": MS2.gen("beta"),
                          "x": MS2.zero(), "y": MS2.zero()})
    f = Morphism.identity(MS2)
    res = lift(MS2, w, f, r=0)
    assert verify_lift(res, w, f) == []
    for g in MS2.gens:
        assert evaluate(res.h.images[g.name], 1) == f.images[g.name]


@pytest.mark.parametrize("r", [0, 1])
@pytest.mark.parametrize("seed", range(5))
def test_random_instances(r, seed):
    rng = random.Random(500 + 17 * seed + r)
    M, w, f = random_lift_instance(rng, r)
    assert w.check() == [] and f.check() == []
    res = lift(M, w, f, r=r)
    assert check_r_homotopy(res.h, w.compose(res.g), f, r) == []
