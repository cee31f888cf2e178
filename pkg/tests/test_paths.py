import random
from fractions import Fraction

import pytest

from fdga.algebra import Morphism
from fdga.filtration import FilteredComplex
from fdga.hopf import build_e1_u, homotopy_witness, scenario_maps
from fdga.linalg import kernel_basis, image_basis
from fdga.paths import (PathElement, PathMorphism, check_r_homotopy, constant_homotopy, evaluate,
                        integrate_0_1, integrate_0_t, path_carrier, r_cone)


@pytest.fixture(scope="module")
def E1U():
    return build_e1_u()


def rand_path(rng, A, n, K=3):
    """A random element of P(A) of degree n, t-degree <= K."""
    def rnd(m):
        if m < 0 or m > A.truncation:
            return A.zero()
        out = A.zero()
        for e in A.basis_elements(m):
            out = out + e * Fraction(rng.randint(-2, 2), rng.choice([1, 2]))
        return out
    return PathElement(A, {k: rnd(n) for k in range(K + 1)}, {k: rnd(n - 1) for k in range(K)})


def test_sign_rules(E1U):
    u, a = E1U.gen("u"), E1U.gen("a")
    t, dt = PathElement.t_power(E1U), PathElement.dt_form(E1U)
    U = PathElement.constant(E1U, u)
    # u · dt = -dt · u  (both odd)
    assert U * dt == -(dt * U)
    assert (dt * dt) == PathElement(E1U)
    A_ = PathElement.constant(E1U, a)
    assert A_ * dt == dt * A_
    assert (t * U).d() == dt * U + t * PathElement.constant(E1U, a)


def test_stokes_and_homotopy_formula(E1U):
    rng = random.Random(11)
    for _ in range(20):
        n = rng.randint(1, 4)
        eta = rand_path(rng, E1U, n)
        # ∫_0^1 dη + d ∫_0^1 η = η(1) - η(0)
        lhs = integrate_0_1(eta.d()) + E1U.d(integrate_0_1(eta))
        assert E1U.equal(lhs, evaluate(eta, 1) - evaluate(eta, 0))
        # d ∫_0^t η + ∫_0^t dη = η - η(0)
        lhs2 = integrate_0_t(eta).d() + integrate_0_t(eta.d())
        assert lhs2 == eta - PathElement.constant(E1U, evaluate(eta, 0))


def test_leibniz_in_path_algebra(E1U):
    rng = random.Random(5)
    for _ in range(15):
        p, q = rng.randint(0, 2), rng.randint(0, 2)
        x, y = rand_path(rng, E1U, p, 2), rand_path(rng, E1U, q, 2)
        if p + q + 1 > E1U.truncation:
            continue
        assert (x * y).d() == x.d() * y + x * y.d() * (-1) ** p
        assert x.d().d() == PathElement(E1U)


def test_weights_of_path_elements(E1U):
    u, a = E1U.gen("u"), E1U.gen("a")
    h = PathElement(E1U, {1: a}, {0: u})
    # a has weight 0, dt⊗u has weight 1 - r
    assert h.weight(0) == 1 and h.weight(1) == 0 and h.weight(2) == 0


def test_paper_witness_passes_and_literal_sign_fails():
    maps = scenario_maps(1, -1)
    lhs = maps["rho'"].compose(maps["f~"])
    rhs = maps["E1(g)"].compose(maps["rho"])
    h = homotopy_witness(1, -1)
    assert check_r_homotopy(h, lhs, rhs, 1) == []
    # as a 0-homotopy the dt-part sits in the wrong weight
    assert {v.kind for v in check_r_homotopy(h, lhs, rhs, 0)} == {"weight-window"}
    # flipping h(β) breaks the endpoint and d-compatibility conditions
    flipped = PathMorphism(h.source, h.target, {"alpha": h.images["alpha"],
                                                "beta": -h.images["beta"]}, 1)
    kinds = {v.kind for v in check_r_homotopy(flipped, lhs, rhs, 1)}
    assert "multiplicativity" in kinds and "endpoint" in kinds


def test_constant_homotopy_and_degree_error(E1U):
    maps = scenario_maps(1, -1)
    f = maps["rho'"]
    assert check_r_homotopy(constant_homotopy(f), f, f, 0) == []
    bad = PathMorphism(f.source, f.target, {"gamma": PathElement.dt_form(E1U)}, 0)
    assert [v.kind for v in check_r_homotopy(bad, f, f, 0)] == ["degree"]


def test_cone_of_quasi_iso_is_acyclic():
    maps = scenario_maps(1, -1)
    rho_p = maps["rho'"]
    C = r_cone(rho_p, 1)
    assert C.check() == []
    for n in range(-1, 4):
        Z = kernel_basis(C.d(n))
        B = image_basis(C.d(n - 1)) if n - 1 >= C.bottom else None
        assert Z.dim == (B.dim if B else 0)


def test_path_carrier_is_a_complex(E1U):
    for r in (0, 1):
        P = path_carrier(E1U, r, 3)
        assert P.check() == []
        # evaluation-independent sanity: the carrier has the cohomology of A
        for n in range(0, 4):
            Z = kernel_basis(P.d(n)).dim
            B = image_basis(P.d(n - 1)).dim if n >= 1 else 0
            assert Z - B == E1U.betti(4)[n]
