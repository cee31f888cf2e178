"""Homotopy lifting for E_r-cofibrant algebras, r in {0, 1}.

Given a free M built by E_r-cofibrant extensions, an E_r-quasi-isomorphism
w: A -> B and a filtered f: M -> B, we build g: M -> A and an r-homotopy
h: M -> P_r(B) from w∘g to f, generator by generator. For a generator v
of degree n and weight p, with g and h already known on the generators
of dv, put a0 = g(dv) and z = h(dv). We solve in the cone of w

    (-da, w(a) + db) = (-a0, f(v) - ∫_0^1 z)

for a ∈ W_p A^n, b ∈ W_p B^(n-1), then set g(v) = a and
h(v) = w(a) + ∫_0^t z + d(t ⊗ b). For r = 1 the same solve is done in the
décalage filtrations, where v has weight p + n.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .algebra import CDGA, Morphism, TruncationError, Violation, check_morphism
from .filtration import (FilteredComplex, WeightFiltration, check_er_cofibrant,
                         check_filtered_morphism, decalage)
from .linalg import RatMatrix, solve_in_subspace
from .paths import (PathElement, PathMorphism, check_r_homotopy, integrate_0_1,
                    integrate_0_t)


class LiftError(ArithmeticError):
    def __init__(self, message, generator=None, violations=()):
        super().__init__(message)
        self.generator = generator
        self.violations = list(violations)


@dataclass
class LiftResult:
    g: Morphism
    h: PathMorphism
    r: int
    log: List[str] = field(default_factory=list)


def _filtrations(A: CDGA, r: int):
    if r == 0:
        return WeightFiltration(A), lambda p, n: p
    return decalage(FilteredComplex.from_algebra(A)), lambda p, n: p + n


def lift(M: CDGA, w: Morphism, f: Morphism, r: int = 0, order=None,
         verify: bool = True) -> LiftResult:
    """Lift f through w up to r-homotopy. Raises LiftError if a solve fails."""
    if r not in (0, 1):
        raise ValueError("lifting is implemented for r = 0 and r = 1")
    A, B = w.source, w.target
    if f.source.gens != M.gens or f.target.gens != B.gens:
        raise ValueError("f must go from M to the target of w")
    problems = check_er_cofibrant(M, r, order)
    if problems:
        raise LiftError("source is not E_%d-cofibrant: %s" % (r, "; ".join(map(str, problems))),
                        violations=problems)
    if order is None:
        order = [g.name for g in sorted(M.gens, key=lambda g: g.degree)]
    top = max((M.generator(v).degree for v in order), default=0)
    for X in (A, B):
        if top + 1 > X.truncation:
            raise TruncationError(
                f"generator degree {top} needs degree {top + 1} of {X.name} (truncation {X.truncation})")
    WA, idx = _filtrations(A, r)
    WB, _ = _filtrations(B, r)
    g_images = {v.name: A.zero() for v in M.gens}
    h_images = {v.name: PathElement(B) for v in M.gens}
    log = []
    for name in order:
        gen = M.generator(name)
        n, p = gen.degree, gen.weight
        dv = M.differential[name]
        g_part = Morphism(M, A, g_images)
        h_part = PathMorphism(M, B, h_images, r)
        a0 = g_part(dv)
        z = h_part(dv)
        target_b = B.reduce(f.images[name] - integrate_0_1(z))
        dA = A.d_matrix(n)
        dB = B.d_matrix(n - 1)
        wn = w.matrix(n)
        rows = [A.dim(n + 1), B.dim(n)]
        cols = [A.dim(n), B.dim(n - 1)]
        D = RatMatrix.block([[dA.scaled(-1), None], [wn, dB]], rows, cols)
        rhs = tuple(-x for x in A.vector(a0, n + 1)) + B.vector(target_b, n)
        q = idx(p, n)
        S = WA.slice(q, n).direct_sum(WB.slice(q, n - 1))
        sol = solve_in_subspace(D, rhs, S)
        if sol is None:
            raise LiftError(
                f"no preimage for generator {name} (degree {n}, weight {p}); "
                f"w is not an E_{r}-quasi-isomorphism in this range", generator=name)
        a = A.element(n, sol[:cols[0]])
        b = B.element(n - 1, sol[cols[0]:])
        g_images[name] = a
        tb = PathElement(B, {1: b})
        h_images[name] = (PathElement.constant(B, w(a)) + integrate_0_t(z) + tb.d())
        log.append(f"{name}: degree {n}, weight {p}, g = {a}, h = {h_images[name]}")
    g = Morphism(M, A, g_images, name="g")
    h = PathMorphism(M, B, h_images, r, name="h")
    result = LiftResult(g, h, r, log)
    if verify:
        problems = verify_lift(result, w, f)
        if problems:
            raise LiftError("lift failed verification: " + "; ".join(map(str, problems)),
                            violations=problems)
    return result


def verify_lift(result: LiftResult, w: Morphism, f: Morphism) -> List[Violation]:
    g, h = result.g, result.h
    out = check_morphism(g)
    out += check_filtered_morphism(g)
    out += check_r_homotopy(h, w.compose(g, name="w.g"), f, result.r)
    return out
