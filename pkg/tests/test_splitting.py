from fractions import Fraction

import pytest

from fdga.algebra import Morphism
from fdga.hopf import build_e1_u, scenario_maps, sphere_models
from fdga.linalg import Subspace
from fdga.splitting import (SplittingError, SplittingFailure, bigrading_automorphism,
                            bigrading_from_weights, check_morphism_splitting, grading_factor,
                            grading_morphism, splitting_from_automorphism, splitting_to_page_iso,
                            verify_r_splitting)
from fdga.spectral import page


@pytest.fixture(scope="module")
def E1U():
    return build_e1_u()


def same_bigrading(G, H, A):
    for n in set(G) | set(H):
        for p in set(G.get(n, {})) | set(H.get(n, {})):
            z = Subspace.zero(A.dim(n))
            if G.get(n, {}).get(p, z) != H.get(n, {}).get(p, z):
                return False
    return True


def test_weight_bigrading_is_a_1_splitting(E1U):
    G = bigrading_from_weights(E1U)
    assert verify_r_splitting(E1U, G, 1) == []
    # d lowers weight by one, so it is not a 0-splitting
    assert {v.kind for v in verify_r_splitting(E1U, G, 0)} == {"differential"}


def test_broken_bigradings_are_reported(E1U):
    G = bigrading_from_weights(E1U)
    # drop a summand
    H = {n: dict(d) for n, d in G.items()}
    del H[2][0]
    assert "spanning" in {v.kind for v in verify_r_splitting(E1U, H, 1)}
    # put u*a + v*b into the wrong weight
    K = {n: dict(d) for n, d in G.items()}
    K[3] = {0: K[3][1]}
    kinds = {v.kind for v in verify_r_splitting(E1U, K, 1)}
    assert kinds & {"product", "differential", "filtration"}


def test_page_iso_is_bijective(E1U):
    iso = splitting_to_page_iso(E1U, bigrading_from_weights(E1U), 1)
    P = page(E1U, 1)
    for (p, n), M in iso.matrices.items():
        assert M.is_invertible() and M.rows == P.dim(p, n)
    assert sum(M.rows for M in iso.matrices.values()) == sum(E1U.dim(n) for n in range(5))


def test_grading_automorphism_recovers_splitting(E1U):
    # φ_2 scales by 2^(nr+p): u ↦ 4u, a ↦ 4a for r = 1
    assert grading_factor(2, 1, 1, 1) == 4 and grading_factor(2, 0, 2, 1) == 4
    Phi = grading_morphism(E1U, 2, 1)
    assert Phi.check() == []
    G = splitting_from_automorphism(E1U, Phi, 2, 1)
    assert same_bigrading(G, bigrading_from_weights(E1U), E1U)
    ph = bigrading_automorphism(page(E1U, 1), 2, range(4))
    assert ph[(1, 1)] == ph[(1, 1)].identity(2).scaled(4)


def test_wrong_automorphisms(E1U):
    with pytest.raises(ValueError):
        grading_morphism(E1U, 1, 1)
    ident = Morphism.identity(E1U)
    with pytest.raises(SplittingError):
        splitting_from_automorphism(E1U, ident, 2, 1)


def test_morphism_compatibility():
    maps = scenario_maps(1, -1)
    f = maps["E1(g)"]
    GA = bigrading_from_weights(f.source)
    GB = bigrading_from_weights(f.target)
    assert check_morphism_splitting(f, GA, GB, 1) == []


def test_trivially_filtered_model_has_no_1_splitting():
    flat = sphere_models()[0].with_weights({"beta": 0})
    G = bigrading_from_weights(flat)
    assert verify_r_splitting(flat, G, 1)
