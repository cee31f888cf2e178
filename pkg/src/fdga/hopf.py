"""The Hopf invariant of algebraic maps C^2 - {0} -> P^1 through weight spectral sequences.

Sign convention. With the Koszul conventions used throughout (P_r(A) is the
graded-commutative tensor product A ⊗ Λ(t, dt)), the homotopy
h(α) = ε(a±b)t - ε(u±v)dt forces h(β) = λ(ua+vb)(1-t²) with λ = -ε².
So the normalized model coefficient is λ = -ε² for ρ'(γ) = ua+vb, and the
Hopf invariant H = ∫θ dθ equals -λ = ε² (the same sign appears in the
characterization dθ·θ = -λ w₃ on the toy model below).
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from .algebra import CDGA, Element, FreeAlgebra, Generator, Morphism, Violation
from .linalg import RatMatrix, Subspace, as_fraction, kernel_basis
from .paths import PathElement, PathMorphism, check_r_homotopy


class HopfError(ArithmeticError):
    pass


def _free(gens):
    F = FreeAlgebra(gens)
    return F, [F.gen(g.name) for g in gens]


def build_e1_u(truncation: int = 8) -> CDGA:
    """E_1(U) = Λ(u, v, a, b)/(uv, ub, va, a²+b², ab), du = a, dv = b.

    u, v have degree 1 and weight 1 (bidegree (-1, 2)); a, b have degree 2
    and weight 0 (bidegree (0, 2)).
    """
    gens = [Generator("u", 1, 1), Generator("v", 1, 1), Generator("a", 2, 0), Generator("b", 2, 0)]
    F, (u, v, a, b) = _free(gens)
    return CDGA(gens, [u * v, u * b, v * a, a * a + b * b, a * b], {"u": a, "v": b},
                truncation=truncation, name="E1U")


def build_e1_p1(truncation: int = 8) -> CDGA:
    """E_1(P^1) = Λ(α)/(α²) with d = 0, α of degree 2 and weight 0."""
    gens = [Generator("alpha", 2, 0)]
    F, (al,) = _free(gens)
    return CDGA(gens, [al * al], {}, truncation=truncation, name="E1P1")


def sphere_models(truncation: int = 8):
    """M(S²) = Λ(α, β), dβ = α², and M(S³) = Λ(γ), d = 0.

    Weights make both E_1-cofibrant and the maps of the scenario filtered:
    α has weight 0, β and γ weight 1. Also returned: the cohomology algebras
    of S² and S³ (trivially filtered) that ρ₂ and ρ₃ model.
    """
    g2 = [Generator("alpha", 2, 0), Generator("beta", 3, 1)]
    F, (al, be) = _free(g2)
    MS2 = CDGA(g2, [], {"beta": al * al}, truncation=truncation, name="MS2")
    MS3 = CDGA([Generator("gamma", 3, 1)], truncation=truncation, name="MS3")
    hs2 = build_e1_p1(truncation)
    hs2.name = "HS2"
    HS3 = CDGA([Generator("gamma", 3, 0)], truncation=truncation, name="HS3")
    return MS2, MS3, hs2, HS3


# -- the blow-up data --------------------------------------------------------

# E_1(U) as a vector space: H(blown-up plane) in column 0 and H(D)[-2] in column -1.
# x, y are the point classes of the two lines of D; pt is the point class of the plane.
_BASIS = {"1": 0, "u": 1, "v": 1, "a": 2, "b": 2, "x": 3, "y": 3, "pt": 4}


def intersection_products() -> Dict[tuple, Dict[str, Fraction]]:
    """Products of basis classes from the Chern class data of the two divisors.

    1_∞·a = i*a = c_1(N_∞) = x, 1_E·b = j*b = c_1(N_E) = -y, the cross terms
    vanish since the lines are disjoint, a² = pt, b² = -pt, ab = 0, and
    products of two classes from D land in column -2, which is zero.
    """
    return {("u", "a"): {"x": Fraction(1)}, ("v", "b"): {"y": Fraction(-1)},
            ("u", "b"): {}, ("v", "a"): {}, ("a", "a"): {"pt": Fraction(1)},
            ("b", "b"): {"pt": Fraction(-1)}, ("a", "b"): {}}


def _mult_basis(x: str, y: str, table) -> Dict[str, Fraction]:
    if x == "1":
        return {y: Fraction(1)}
    if y == "1":
        return {x: Fraction(1)}
    if (x, y) in table:
        return dict(table[(x, y)])
    if (y, x) in table:
        sign = -1 if (_BASIS[x] % 2 and _BASIS[y] % 2) else 1
        return {k: c * sign for k, c in table[(y, x)].items()}
    return {}


def derive_e1_u_relations(max_degree: int = 5) -> Dict[int, Subspace]:
    """Kernel of Λ(u, v, a, b) -> E_1(U) per degree, computed from the product table."""
    A = build_e1_u()
    F = A.free
    table = intersection_products()
    names = [g.name for g in F.gens]
    out = {}
    for n in range(max_degree + 1):
        monos = F.monomials(n)
        targets = sorted(k for k, d in _BASIS.items() if d == n)
        images = []
        for m in monos:
            val = {"1": Fraction(1)}
            for i, e in enumerate(m):
                for _ in range(e):
                    new = {}
                    for k, c in val.items():
                        for k2, c2 in _mult_basis(k, names[i], table).items():
                            new[k2] = new.get(k2, 0) + c * c2
                    val = new
            images.append([val.get(t, Fraction(0)) for t in targets])
        # kernel of the evaluation map, in free-monomial coordinates
        M = RatMatrix.from_columns(images, len(targets)) if targets else RatMatrix(0, len(monos))
        out[n] = kernel_basis(M)
    return out


def gysin_differential() -> Dict[str, str]:
    """d_1 on the column -1 generators: the Gysin maps i_* 1_∞ = a and j_* 1_E = b."""
    return {"u": "a", "v": "b"}


# -- the ε classification ---------------------------------------------------

@dataclass
class EpsilonResult:
    accepted: bool
    epsilon: Optional[Fraction] = None
    sign: int = 1
    reason: str = ""

    def __bool__(self):
        return self.accepted


def uniqueness_of_epsilon(c1, c2) -> EpsilonResult:
    """Is α -> c1 a + c2 b compatible with α² = 0, and if so what is ε?"""
    c1, c2 = as_fraction(c1), as_fraction(c2)
    A = build_e1_u()
    x = A.gen("a") * c1 + A.gen("b") * c2
    sq = A.multiply(x, x)
    if sq:
        return EpsilonResult(False, reason=f"({x})^2 = {sq} is not zero modulo the relations")
    sign = 1 if c1 == c2 else -1
    if c1 == 0:
        sign = 1
    if c1.denominator != 1:
        return EpsilonResult(False, c1, sign, reason=f"epsilon = {c1} is not an integer")
    return EpsilonResult(True, c1, sign)


# -- the scenario --------------------------------------------------------------

@dataclass
class HopfScenario:
    epsilon: int
    sign: int = -1
    q: Optional[int] = None

    @property
    def model_coefficient(self) -> Fraction:
        """λ with f̃(β) = λγ for ρ'(γ) = ua + vb."""
        return -Fraction(self.epsilon) ** 2

    @property
    def hopf_invariant(self) -> Fraction:
        return -self.model_coefficient


@dataclass
class HopfResult:
    scenario: HopfScenario
    model_coefficient: Fraction
    hopf_invariant: Fraction
    homotopy: PathMorphism
    maps: Dict[str, Morphism]
    violations: List[Violation] = field(default_factory=list)
    lifted_coefficient: Optional[Fraction] = None

    @property
    def verified(self) -> bool:
        return not self.violations


def scenario_maps(eps, sign: int):
    E1U, E1P1 = build_e1_u(), build_e1_p1()
    MS2, MS3, _, _ = sphere_models()
    u, v, a, b = (E1U.gen(k) for k in "uvab")
    lam = -Fraction(eps) ** 2
    rho = Morphism(MS2, E1P1, {"alpha": E1P1.gen("alpha"), "beta": E1P1.zero()}, name="rho")
    rho_p = Morphism(MS3, E1U, {"gamma": u * a + v * b}, name="rho'")
    f_tilde = Morphism(MS2, MS3, {"alpha": MS3.zero(), "beta": MS3.gen("gamma") * lam},
                       name="f~")
    e1g = Morphism(E1P1, E1U, {"alpha": (a + b * sign) * eps}, name="E1(g)")
    return {"rho": rho, "rho'": rho_p, "f~": f_tilde, "E1(g)": e1g}


def homotopy_witness(eps, sign: int) -> PathMorphism:
    """h(α) = ε(a±b)t - ε(u±v)dt and h(β) = λ(ua+vb)(1-t²), λ = -ε²."""
    E1U = build_e1_u()
    MS2 = sphere_models()[0]
    u, v, a, b = (E1U.gen(k) for k in "uvab")
    lam = -Fraction(eps) ** 2
    X = (a + b * sign) * eps
    Y = (u + v * sign) * eps
    # -ε(u±v)dt = +ε dt(u±v), stored forms-left
    h_alpha = PathElement(E1U, {1: X}, {0: Y})
    w3 = u * a + v * b
    h_beta = PathElement(E1U, {0: w3 * lam, 2: w3 * (-lam)})
    return PathMorphism(MS2, E1U, {"alpha": h_alpha, "beta": h_beta}, r=1, name="h")


def epsilon_to_hopf(eps: int, sign: int = -1, q: Optional[int] = None,
                    with_lift: bool = False) -> HopfResult:
    """Build the scenario maps and the witness, verify, and return λ and H."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    sc = HopfScenario(int(eps), sign, q)
    maps = scenario_maps(eps, sign)
    h = homotopy_witness(eps, sign)
    lhs = maps["rho'"].compose(maps["f~"], name="rho'.f~")
    rhs = maps["E1(g)"].compose(maps["rho"], name="E1(g).rho")
    violations = check_r_homotopy(h, lhs, rhs, 1)
    if violations:
        raise HopfError("homotopy witness failed: " + "; ".join(map(str, violations)))
    res = HopfResult(sc, sc.model_coefficient, sc.hopf_invariant, h,
                     dict(maps, **{"rho'.f~": lhs, "E1(g).rho": rhs}), violations)
    if with_lift:
        res.lifted_coefficient = lifted_model_coefficient(eps, sign)
        if res.lifted_coefficient != sc.model_coefficient:
            raise HopfError(f"lifting gives λ = {res.lifted_coefficient}, "
                            f"expected {sc.model_coefficient}")
    return res


def lifted_model_coefficient(eps, sign: int) -> Fraction:
    """λ obtained independently by lifting E_1(g)∘ρ through ρ' (r = 1)."""
    from .lifting import lift
    maps = scenario_maps(eps, sign)
    MS2 = maps["rho"].source
    f = maps["E1(g)"].compose(maps["rho"])
    res = lift(MS2, maps["rho'"], f, r=1)
    g_beta = res.g.images["beta"]
    gamma = res.g.target.gen("gamma")
    if not g_beta:
        return Fraction(0)
    (m, c), = g_beta.terms.items()
    if g_beta != gamma * c:
        raise HopfError(f"unexpected lift g(beta) = {g_beta}")
    return c


def hopf_for_power_map(q: int, with_lift: bool = True) -> HopfResult:
    """(x0, x1) -> [x0^q : x1^q]: E_1(g) is α -> q(a - b)."""
    if q < 1:
        raise ValueError("q must be a positive integer")
    return epsilon_to_hopf(q, -1, q=q, with_lift=with_lift)


# -- the toy model behind the characterization of the Hopf invariant ---------

def hopf_toy_model(truncation: int = 6):
    """T = Λ(θ, σ)/(σ²), dθ = σ, with volume form w₃ = θσ."""
    gens = [Generator("theta", 1, 0), Generator("sigma", 2, 0)]
    F, (th, si) = _free(gens)
    T = CDGA(gens, [si * si], {"theta": si}, truncation=truncation, name="T")
    return T


def hopf_toy_check(lam) -> List[Violation]:
    """Is h(α) = d(θt), h(β) = λ w₃ (1 - t²) a homotopy from ρ₃f̃_λ to f*ρ₂?"""
    lam = as_fraction(lam)
    T = hopf_toy_model()
    g2 = [Generator("alpha", 2, 0), Generator("beta", 3, 0)]
    F, (al, _) = _free(g2)
    MS2 = CDGA(g2, [], {"beta": al * al}, name="MS2")
    th, si = T.gen("theta"), T.gen("sigma")
    w3 = th * si
    f0 = Morphism(MS2, T, {"alpha": T.zero(), "beta": w3 * lam}, name="rho3.f")
    f1 = Morphism(MS2, T, {"alpha": si, "beta": T.zero()}, name="f*.rho2")
    h_alpha = PathElement(T, {1: th}).d()
    h_beta = PathElement(T, {0: w3 * lam, 2: w3 * (-lam)})
    return check_r_homotopy({"alpha": h_alpha, "beta": h_beta}, f0, f1, 0)
