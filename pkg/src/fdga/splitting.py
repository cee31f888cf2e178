"""r-splittings: verification, the page isomorphism, and splittings from automorphisms.

A bigrading is stored as ``G[n][p]``: the summand A^{-p, n+p} of weight p
in total degree n, a Subspace of the degree-n coordinates. An r-splitting
satisfies d(G[n][p]) ⊆ G[n+1][p-r], G[n][p]·G[m][q] ⊆ G[n+m][p+q], and
W_k A^n = ⊕_{p<=k} G[n][p].
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from .algebra import CDGA, Morphism, Violation
from .filtration import FilteredComplex, WeightFiltration, check_filtered_morphism
from .linalg import RatMatrix, Subspace, as_fraction, kernel_basis
from .spectral import DirectPage, SpectralPage, induced_map

Bigrading = Dict[int, Dict[int, Subspace]]


class SplittingError(ValueError):
    pass


@dataclass
class SplittingFailure:
    """Returned when the expected eigenspaces do not exhaust a degree."""
    degree: int
    residual_dim: int
    detail: str = ""

    def __bool__(self):
        return False

    def __str__(self):
        return (f"no splitting: degree {self.degree} has a residual complement of "
                f"dimension {self.residual_dim}" + (f" ({self.detail})" if self.detail else ""))


def _degrees(A: CDGA):
    return range(0, A.truncation + 1)


def bigrading_from_weights(A: CDGA) -> Bigrading:
    """G[n][p] spanned by the normal forms of monomials of weight exactly p."""
    G: Bigrading = {}
    for n in _degrees(A):
        dim = A.dim(n)
        pieces: Dict[int, list] = {}
        for m in A.free.monomials(n):
            v = A.vector(A.free.monomial(m), n)
            pieces.setdefault(A.free.mono_weight(m), []).append(v)
        G[n] = {p: Subspace(dim, vs) for p, vs in sorted(pieces.items())}
        G[n] = {p: S for p, S in G[n].items() if S.dim}
    return G


def _summand(G: Bigrading, n: int, p: int, dim: int) -> Subspace:
    return G.get(n, {}).get(p) or Subspace.zero(dim)


def verify_r_splitting(A: CDGA, G: Bigrading, r: int, W=None) -> List[Violation]:
    W = W or WeightFiltration(A)
    out = []
    top = A.truncation
    for n in _degrees(A):
        dim = A.dim(n)
        if n not in G:
            if dim:
                out.append(Violation("coverage", f"degree {n}", "no summands given"))
            continue
        total = sum(S.dim for S in G[n].values())
        join = Subspace.zero(dim)
        for S in G[n].values():
            if S.ambient_dim != dim:
                out.append(Violation("coverage", f"degree {n}", "summand has the wrong ambient dimension"))
                return out
            join = join + S
        if join.dim != dim:
            out.append(Violation("spanning", f"degree {n}",
                                 f"summands span {join.dim} of {dim} dimensions"))
        if total != join.dim:
            out.append(Violation("independence", f"degree {n}", "summands are not independent"))
    if out:
        return out
    for n in _degrees(A):
        if n + 1 > top:
            break
        D = A.d_matrix(n)
        for p, S in G[n].items():
            T = _summand(G, n + 1, p - r, A.dim(n + 1))
            for v in S.basis:
                if not T.contains(D.apply(v)):
                    out.append(Violation("differential", f"A^{{{-p},{n + p}}}",
                                         f"d leaves A^{{{-p + r},{n + p - r + 1}}}"))
                    break
    for n in _degrees(A):
        for m in _degrees(A):
            if n + m > top or m < n:
                continue
            for p, S in G[n].items():
                for q, T in G[m].items():
                    target = _summand(G, n + m, p + q, A.dim(n + m))
                    bad = False
                    for x in S.basis:
                        ex = A.element(n, x)
                        for y in T.basis:
                            prod = A.vector(A.multiply(ex, A.element(m, y)), n + m)
                            if not target.contains(prod):
                                bad = True
                                break
                        if bad:
                            break
                    if bad:
                        out.append(Violation("product", f"A^{{{-p},{n + p}}} * A^{{{-q},{m + q}}}",
                                             f"product leaves A^{{{-p - q},{n + m + p + q}}}"))
    for n in _degrees(A):
        lo, hi = W.bounds(n)
        ps = sorted(G[n])
        lo = min([lo] + ps)
        hi = max([hi] + ps)
        for k in range(lo, hi + 1):
            acc = Subspace.zero(A.dim(n))
            for p in ps:
                if p <= k:
                    acc = acc + G[n][p]
            if acc != W.slice(k, n):
                out.append(Violation("filtration", f"W_{k} in degree {n}",
                                     "W_k is not the sum of the summands of weight <= k"))
    return out


@dataclass
class PageIsomorphism:
    """π: A -> E_r(A), one matrix per (weight p, degree n)."""
    A: CDGA
    r: int
    page: SpectralPage
    matrices: Dict[tuple, RatMatrix] = field(default_factory=dict)

    def __call__(self, p: int, n: int, v):
        return self.matrices[(p, n)].apply(v)


def splitting_to_page_iso(A: CDGA, G: Bigrading, r: int, W=None) -> PageIsomorphism:
    """Send each summand A^{-p,n+p} to E_r^{-p,n+p} and check it is a filtered iso."""
    problems = verify_r_splitting(A, G, r, W)
    if problems:
        raise SplittingError("not an r-splitting: " + "; ".join(map(str, problems)))
    C = FilteredComplex.from_algebra(A, W)
    C.algebra = A
    P = DirectPage(C, r)
    iso = PageIsomorphism(A, r, P)
    top = C.max_d_degree()
    for n in range(0, top + 1):
        for p in sorted(set(G[n]) | set(P.weights(n))):
            S = _summand(G, n, p, A.dim(n))
            k = P.dim(p, n)
            if S.dim != k:
                raise SplittingError(f"dimension mismatch at A^{{{-p},{n + p}}}: "
                                     f"summand {S.dim}, page {k}")
            if not k:
                continue
            M = RatMatrix.from_columns([P.coords(p, n, v) for v in S.basis], k)
            if not M.is_invertible():
                raise SplittingError(f"summand A^{{{-p},{n + p}}} does not map isomorphically")
            iso.matrices[(p, n)] = M
    for (p, n), M in iso.matrices.items():
        if n + 1 > top:
            continue
        S = G[n][p]
        T = _summand(G, n + 1, p - r, A.dim(n + 1))
        if not T.dim:
            if not P.differential(p, n).is_zero():
                raise SplittingError(f"d_r does not vanish on E^{{{-p},{n + p}}}")
            continue
        D = A.d_matrix(n)
        lhs = P.differential(p, n) @ M
        # π(dx) in page coordinates, with dx expressed in the basis of T
        cols = [P.coords(p - r, n + 1, D.apply(v)) for v in S.basis]
        rhs = RatMatrix.from_columns(cols, P.dim(p - r, n + 1))
        if lhs != rhs:
            raise SplittingError(f"π does not commute with d at A^{{{-p},{n + p}}}")
    return iso


def grading_factor(alpha, p: int, n: int, r: int) -> Fraction:
    return as_fraction(alpha) ** (n * r + p)


def _check_alpha(alpha):
    alpha = as_fraction(alpha)
    if alpha in (0, 1, -1):
        raise ValueError("alpha must be a nonzero rational other than 1 and -1")
    return alpha


def bigrading_automorphism(P: SpectralPage, alpha, degrees) -> Dict[tuple, RatMatrix]:
    """φ_α on a page: multiplication by α^(nr+p) on E_r^{-p,n+p}."""
    alpha = _check_alpha(alpha)
    out = {}
    for n in degrees:
        for p in P.weights(n):
            k = P.dim(p, n)
            out[(p, n)] = RatMatrix.identity(k).scaled(grading_factor(alpha, p, n, P.r))
    return out


def grading_morphism(A: CDGA, alpha, r: int, name: str = "phi") -> Morphism:
    """The automorphism v -> α^(|v| r + w(v)) v of a weight-graded presentation."""
    alpha = _check_alpha(alpha)
    return Morphism(A, A, {g.name: A.gen(g.name) * grading_factor(alpha, g.weight, g.degree, r)
                           for g in A.gens}, name=name)


def _generalized_eigenspace(M: RatMatrix, lam) -> Subspace:
    n = M.rows
    if n == 0:
        return Subspace.zero(0)
    N = M - RatMatrix.identity(n).scaled(lam)
    return kernel_basis(N.power(n))


def splitting_from_automorphism(A: CDGA, Phi: Morphism, alpha, r: int, W=None):
    """Bigrading by generalized eigenspaces of Φ for the eigenvalues α^(nr+p).

    Raises SplittingError when Φ is not a filtered automorphism inducing φ_α
    on E_r; returns a SplittingFailure when a residual complement is left.
    """
    alpha = _check_alpha(alpha)
    W = W or WeightFiltration(A)
    if Phi.source.gens != A.gens or Phi.target.gens != A.gens:
        raise SplittingError("Φ must be an endomorphism of A")
    problems = Phi.check() + check_filtered_morphism(Phi, W, W)
    if problems:
        raise SplittingError("Φ is not a filtered morphism: " + "; ".join(map(str, problems)))
    for n in _degrees(A):
        if not Phi.matrix(n).is_invertible():
            raise SplittingError(f"Φ is not invertible in degree {n}")
    C = FilteredComplex.from_algebra(A, W)
    P = DirectPage(C, r)
    for n in range(0, C.max_d_degree() + 1):
        for p in P.weights(n):
            k = P.dim(p, n)
            if not k:
                continue
            E = induced_map(Phi.matrix, P, P, p, n)
            if E != RatMatrix.identity(k).scaled(grading_factor(alpha, p, n, r)):
                raise SplittingError(f"E_{r}(Φ) differs from φ_α on E^{{{-p},{n + p}}}")
    G: Bigrading = {}
    for n in _degrees(A):
        dim = A.dim(n)
        M = Phi.matrix(n)
        lo, hi = W.bounds(n)
        G[n] = {}
        total = Subspace.zero(dim)
        for p in range(lo, hi + 1):
            K = _generalized_eigenspace(M, grading_factor(alpha, p, n, r))
            if K.dim:
                G[n][p] = K
                total = total + K
        if total.dim != dim:
            return SplittingFailure(n, dim - total.dim,
                                    "Φ has eigenvalues outside α^(nr+p)")
    problems = verify_r_splitting(A, G, r, W)
    if problems:
        raise SplittingError("eigenspace bigrading is not an r-splitting: "
                             + "; ".join(map(str, problems)))
    return G


def check_morphism_splitting(f: Morphism, GA: Bigrading, GB: Bigrading, r: int,
                             WA=None, WB=None) -> List[Violation]:
    """Both ends r-split and f(A^{p,q}) ⊆ B^{p,q}."""
    out = verify_r_splitting(f.source, GA, r, WA) + verify_r_splitting(f.target, GB, r, WB)
    top = min(f.source.truncation, f.target.truncation)
    for n in range(0, top + 1):
        F = f.matrix(n)
        for p, S in GA.get(n, {}).items():
            T = _summand(GB, n, p, f.target.dim(n))
            if any(not T.contains(F.apply(v)) for v in S.basis):
                out.append(Violation("compatibility", f"A^{{{-p},{n + p}}}",
                                     f"{f.name} leaves the matching summand"))
    return out


def splittings_from_automorphisms(f: Morphism, PhiA: Morphism, PhiB: Morphism, alpha, r: int,
                                  WA=None, WB=None):
    """Pairwise version: split both ends and check f is compatible."""
    A, B = f.source, f.target
    for g in A.gens:
        lhs = f(PhiA.images[g.name])
        rhs = PhiB(f.images[g.name])
        if not B.equal(lhs, rhs):
            raise SplittingError(f"f∘Φ_A and Φ_B∘f differ on {g.name}")
    GA = splitting_from_automorphism(A, PhiA, alpha, r, WA)
    if isinstance(GA, SplittingFailure):
        return GA
    GB = splitting_from_automorphism(B, PhiB, alpha, r, WB)
    if isinstance(GB, SplittingFailure):
        return GB
    problems = check_morphism_splitting(f, GA, GB, r, WA, WB)
    if problems:
        raise SplittingError("; ".join(map(str, problems)))
    return GA, GB
