"""E_r-cofibrant extensions and minimal models of simply connected filtered dgas.

The model is built one degree at a time. In degree n we take the cohomology
H^n of the 1-cone of the current ρ: M -> A, with cone filtration
W_p C^n = W_{p-1} M^(n+1) ⊕ W_p A^n, choose representatives (m, a) adapted
to that filtration, and attach a generator v of weight p with dv = m and
ρ(v) = -a for each one. One extension per degree is enough here since the
cone cohomology is finite dimensional.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import (CDGA, Element, FreeAlgebra, Generator, Morphism, PresentationError,
                      TruncationError, Violation)
from .filtration import FilteredComplex, WeightFiltration, check_filtered_morphism
from .linalg import Subspace, image_basis, kernel_basis, quotient_representatives
from .paths import element_weight, r_cone


class ExtensionError(ValueError):
    pass


@dataclass
class CofibrantExtension:
    base: CDGA
    degree: int
    weight: int
    attaching: Dict[str, Element]
    r: int
    result: CDGA


def _embed(x: Element, F: FreeAlgebra) -> Element:
    """Carry an element into a free algebra with more generators (appended)."""
    pad = len(F.gens) - len(x.parent.gens)
    return type(x)(F, {m + (0,) * pad: c for m, c in x.terms.items()})


def extend(A: CDGA, n: int, p: int, xi: Dict[str, Element], r: int = 0,
           name: Optional[str] = None) -> CofibrantExtension:
    """Attach generators of degree n and weight p with d(v) = xi[v] ∈ W_{p-r} A."""
    for v, x in xi.items():
        x = A.reduce(x)
        if x and x.degree != n + 1:
            raise ExtensionError(f"attaching element for {v} has degree {x.degree}, expected {n + 1}")
        if x and A.d(x):
            raise ExtensionError(f"attaching element {x} for {v} is not a cocycle")
        w = element_weight(A, x)
        if w is not None and w > p - r:
            raise ExtensionError(f"attaching element {x} for {v} has weight {w} > {p - r}")
    gens = list(A.gens) + [Generator(v, n, p) for v in xi]
    F = FreeAlgebra(gens)
    d = {k: _embed(x, F) for k, x in A.differential.items()}
    d.update({v: _embed(x, F) for v, x in xi.items()})
    B = CDGA(gens, [_embed(x, F) for x in A.relations], d, truncation=A.truncation,
             name=name or A.name)
    return CofibrantExtension(A, n, p, dict(xi), r, B)


@dataclass
class MinimalModelResult:
    M: CDGA
    rho: Morphism
    max_degree: int
    log: List[dict] = field(default_factory=list)

    def generator_counts(self) -> Dict[Tuple[int, int], int]:
        out: Dict[Tuple[int, int], int] = {}
        for g in self.M.gens:
            out[(g.degree, g.weight)] = out.get((g.degree, g.weight), 0) + 1
        return out

    def is_minimal(self) -> bool:
        return all(self.M.differential[g.name].is_decomposable() for g in self.M.gens)

    def format_log(self) -> str:
        lines = []
        for e in self.log:
            dims = ", ".join(f"W{p}:{k}" for p, k in e["cone_dims"])
            gens = ", ".join(e["generators"]) or "none"
            lines.append(f"degree {e['degree']}: cone H^{e['degree']} by weight [{dims}] -> {gens}")
        return "\n".join(lines)


def _cohomology_dim(C: FilteredComplex, n: int) -> int:
    Z = kernel_basis(C.d(n))
    B = image_basis(C.d(n - 1)) if n - 1 >= C.bottom else Subspace.zero(C.dim(n))
    return Z.dim - B.dim


def _adapted_classes(C: FilteredComplex, n: int):
    """(weight, cocycle) pairs projecting to a W-adapted basis of H^n(C)."""
    Z = kernel_basis(C.d(n))
    B = image_basis(C.d(n - 1)) if n - 1 >= C.bottom else Subspace.zero(C.dim(n))
    out = []
    lo, hi = C.bounds(n)
    acc = B
    for p in range(lo, hi + 1):
        Zp = Z & C.slice(p, n)
        target = acc + Zp
        for v in quotient_representatives(acc, target):
            out.append((p, v))
        acc = target
    return out


def minimal_model(A: CDGA, max_degree: int, W=None, names=None) -> MinimalModelResult:
    """Minimal E_1-cofibrant model ρ: M -> A through degree max_degree.

    A must be connected and simply connected (H^1 = 0); generators of M are
    named v<degree>_<index> unless ``names`` supplies a list per degree.
    """
    N = max_degree
    if A.truncation < N + 1:
        raise TruncationError(f"minimal model through degree {N} needs truncation >= {N + 1}")
    if A.dim(0) != 1:
        raise PresentationError("algebra is not connected in degree 0")
    if N >= 1 and A.cohomology(1)[0] != 0:
        raise PresentationError("H^1 is nonzero; only simply connected algebras are supported")
    W = W or WeightFiltration(A)
    trunc = max(A.truncation, N + 2)
    M = CDGA([], name="M", truncation=trunc)
    rho = Morphism(M, A, {}, name="rho")
    log = []
    for n in range(2, N + 1):
        CA = FilteredComplex.from_algebra(A, W)
        C = r_cone(rho, 1, FilteredComplex.from_algebra(M), CA)
        classes = _adapted_classes(C, n)
        cone_dims: Dict[int, int] = {}
        for p, _ in classes:
            cone_dims[p] = cone_dims.get(p, 0) + 1
        mdim = M.dim(n + 1)
        new_names = []
        xi, images, weights = {}, {}, {}
        for i, (p, vec) in enumerate(classes, start=1):
            m = M.element(n + 1, vec[:mdim])
            a = A.element(n, vec[mdim:])
            if not m:
                a = -a
            name = (names[n][i - 1] if names and n in names else f"v{n}_{i}")
            new_names.append(name)
            xi[name] = m
            images[name] = -a
            weights[name] = p
        for p in sorted(set(weights.values())):
            group = {k: xi[k] for k in new_names if weights[k] == p}
            M = extend(M, n, p, group, r=1, name="M").result
        F = M.free
        rho_images = {k: v for k, v in rho.images.items()}
        rho_images.update(images)
        rho = Morphism(M, A, rho_images, name="rho")
        log.append({"degree": n, "cone_dims": sorted(cone_dims.items()),
                    "generators": [f"{k} (weight {weights[k]}): d = {xi[k]}, rho = {images[k]}"
                                   for k in new_names]})
    result = MinimalModelResult(M, rho, N, log)
    problems = verify_minimal_model(result, W)
    if problems:
        raise ArithmeticError("minimal model failed verification: " + "; ".join(map(str, problems)))
    return result


def verify_minimal_model(res: MinimalModelResult, W=None) -> List[Violation]:
    M, A, rho, N = res.M, res.rho.target, res.rho, res.max_degree
    out = rho.check()
    out += check_filtered_morphism(rho, None, W)
    if not res.is_minimal():
        out.append(Violation("minimality", M.name, "some differential is not decomposable"))
    C = r_cone(rho, 1, FilteredComplex.from_algebra(M), FilteredComplex.from_algebra(A, W))
    for n in range(0, N + 1):
        k = _cohomology_dim(C, n)
        if k:
            out.append(Violation("cone", f"degree {n}", f"cone cohomology has dimension {k}"))
    return out


def check_er_cofibrant(A: CDGA, r: int, order=None):
    from .filtration import check_er_cofibrant as _check
    return _check(A, r, order)
