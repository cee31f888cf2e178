import pytest

from fdga.algebra import CDGA, FreeAlgebra, Generator, PresentationError, TruncationError
from fdga.filtration import check_er_cofibrant
from fdga.hopf import build_e1_u, sphere_models
from fdga.minimal import ExtensionError, extend, minimal_model, verify_minimal_model


def test_extend_builds_m_s2():
    L = CDGA([Generator("alpha", 2, 0)], name="L")
    al = L.gen("alpha")
    M = extend(L, 3, 1, {"beta": al * al}, r=1).result
    assert [(g.name, g.degree, g.weight) for g in M.gens] == [("alpha", 2, 0), ("beta", 3, 1)]
    assert M.betti(4) == [1, 0, 1, 0, 0]
    assert check_er_cofibrant(M, 1) == []


def test_extend_checks_inputs():
    L = CDGA([Generator("alpha", 2, 0)], name="L")
    al = L.gen("alpha")
    with pytest.raises(ExtensionError):
        extend(L, 3, 0, {"beta": al * al}, r=1)  # weight would not drop
    with pytest.raises(ExtensionError):
        extend(L, 2, 1, {"beta": al * al}, r=1)  # wrong degree


def test_minimal_model_of_s2():
    HS2 = sphere_models()[2]
    res = minimal_model(HS2, 4)
    assert res.generator_counts() == {(2, 0): 1, (3, 1): 1}
    assert res.is_minimal()
    M = res.M
    beta, alpha = M.gens[1].name, M.gens[0].name
    assert M.differential[beta] == M.gen(alpha) ** 2 or M.differential[beta] == -(M.gen(alpha) ** 2)
    assert verify_minimal_model(res) == []


def test_minimal_model_of_s3():
    res = minimal_model(sphere_models()[3], 4)
    assert res.generator_counts() == {(3, 0): 1}
    assert all(not d for d in res.M.differential.values())


def test_minimal_model_of_e1u_is_m_s3():
    E1U = build_e1_u()
    res = minimal_model(E1U, 4)
    assert res.generator_counts() == {(3, 1): 1}
    (g,) = res.M.gens
    u, v, a, b = (E1U.gen(k) for k in "uvab")
    assert E1U.equal(res.rho.images[g.name], u * a + v * b)


def test_minimal_model_of_cp2():
    # Λ(x)/(x^3): generators x (2), y (5) with dy = x^3
    g = [Generator("x", 2, 0)]
    F = FreeAlgebra(g)
    A = CDGA(g, [F.gen("x") ** 3], {}, truncation=8, name="CP2")
    res = minimal_model(A, 5)
    assert res.generator_counts() == {(2, 0): 1, (5, 1): 1}


def test_minimal_model_guards():
    g = [Generator("x", 1, 0)]
    with pytest.raises(PresentationError):
        minimal_model(CDGA(g, name="S1"), 3)
    with pytest.raises(TruncationError):
        minimal_model(sphere_models(truncation=3)[2], 4)
