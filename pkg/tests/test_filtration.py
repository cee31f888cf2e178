import random

import pytest

from fdga.algebra import CDGA, FreeAlgebra, Generator, TruncationError
from fdga.filtration import (ExplicitFiltration, FilteredComplex, WeightFiltration,
                             check_er_cofibrant, check_filtered_morphism, decalage, shifted)
from fdga.hopf import build_e1_u, sphere_models
from fdga.linalg import Subspace
from fdga.paths import path_carrier

from randgen import random_cofibrant


def test_weight_filtration_of_e1u():
    A = build_e1_u()
    W = WeightFiltration(A)
    # degree 1 is u, v (weight 1); degree 2 is a, b (weight 0)
    assert W.slice(0, 1).dim == 0 and W.slice(1, 1).dim == 2
    assert W.slice(0, 2).dim == 2
    # degree 3: u*a, v*b of weight 1
    assert W.slice(0, 3).dim == 0 and W.slice(1, 3).dim == 2
    assert W.bounds(5) == (1, 0)


def test_explicit_filtration_validation():
    S = Subspace(2, [(1, 0)])
    with pytest.raises(ValueError):
        ExplicitFiltration({0: {0: Subspace.full(2), 1: S}}, {0: 2})
    with pytest.raises(ValueError):
        ExplicitFiltration({0: {0: S}}, {0: 2})


def test_cofibrancy_checks():
    MS2 = sphere_models()[0]
    assert check_er_cofibrant(MS2, 1) == []
    assert [v.kind for v in check_er_cofibrant(MS2, 2)] == ["weight-drop"]
    flat = MS2.with_weights({"beta": 0})
    assert check_er_cofibrant(flat, 0) == []
    assert check_er_cofibrant(flat, 1)
    assert "freeness" in {v.kind for v in check_er_cofibrant(build_e1_u(), 0)}
    g = [Generator("a", 2, 0), Generator("b", 3, 1)]
    F = FreeAlgebra(g)
    A = CDGA(g, [], {"b": F.gen("a") ** 2})
    assert [v.kind for v in check_er_cofibrant(A, 0, order=["b", "a"])] == ["order"]


def test_decalage_of_cofibrant_is_a_shift():
    # Dec W_p A^n = W_{p-n} A^n when d lowers weight by at least one
    rng = random.Random(3)
    for r in (1, 2):
        for _ in range(4):
            M = random_cofibrant(rng, r, 4, 6)
            D = decalage(M)
            assert D == shifted(WeightFiltration(M), D.degrees(), M.dim)


def test_decalage_differs_without_weight_drop():
    flat = sphere_models()[0].with_weights({"beta": 0})
    D = decalage(flat)
    assert D != shifted(WeightFiltration(flat), D.degrees(), flat.dim)
    # β is not in Dec W_3 (that would need dβ = α² in W_{-1})
    assert D.slice(3, 3).dim == 0 and D.slice(4, 3).dim == 1


def test_decalage_drops_uncomputable_degree():
    A = build_e1_u(truncation=5)
    D = decalage(A)
    assert D.dropped_degrees == (5,)
    with pytest.raises(TruncationError):
        D.slice(0, 5)


@pytest.mark.parametrize("r", [0, 1, 2])
def test_decalage_commutes_with_paths(r):
    # Dec(P_{r+1} A) = P_r(Dec A), slice by slice
    for A in (build_e1_u(6), sphere_models(6)[0]):
        C = FilteredComplex.from_algebra(A)
        for K in (1, 2):
            lhs = decalage(path_carrier(C, r + 1, K))
            rhs = path_carrier(C.with_filtration(decalage(C)), r, K)
            checked = 0
            for n in lhs.degrees():
                if n > rhs.max_d_degree():
                    continue
                lo, hi = lhs.bounds(n)
                lo2, hi2 = rhs.bounds(n)
                for p in range(min(lo, lo2) - 1, max(hi, hi2) + 2):
                    assert lhs.slice(p, n) == rhs.slice(p, n), (A.name, K, p, n)
                    checked += 1
            assert checked > 10


def test_filtered_morphism_check():
    from fdga.hopf import scenario_maps
    maps = scenario_maps(1, -1)
    assert check_filtered_morphism(maps["rho'"]) == []
    # γ of weight 0 would need ua + vb in W_0
    MS3 = maps["rho'"].source.with_weights({"gamma": 0})
    from fdga.algebra import Morphism
    bad = Morphism(MS3, maps["rho'"].target, maps["rho'"].images)
    assert [v.kind for v in check_filtered_morphism(bad)] == ["filtration"]


def test_filtered_complex_check_catches_bad_filtration():
    A = build_e1_u()
    C = FilteredComplex.from_algebra(A)
    assert C.check() == []
    # d(u) = a leaves W_{-1}: use weights a:1, u:0
    B = A.with_weights({"u": 0, "v": 0, "a": 1, "b": 1})
    assert FilteredComplex.from_algebra(B).check()
