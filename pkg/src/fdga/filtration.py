"""Increasing filtrations on degreewise finite complexes, and décalage.

A filtration object answers ``slice(p, n)`` (the subspace W_p in degree n,
as a Subspace of the degree-n coordinates) and ``bounds(n)``, a pair
(lo, hi) with W_{lo-1} = 0 and W_hi everything. Weights follow the
increasing convention: a class of E_r^{-p,q} lives in W_p, so d(W_p) ⊆ W_{p-r}
for an E_r-cofibrant algebra. In the classical decreasing convention
F^s = W_{-s}, and E_r^{-p,q} here is E_r^{s,t} there with s = -p, t = q.
"""
from typing import Callable, Dict, List, Optional, Tuple

from .algebra import CDGA, Morphism, TruncationError, Violation
from .linalg import RatMatrix, Subspace, preimage


class WeightFiltration:
    """Multiplicative filtration of a presented algebra from generator weights.

    W_p in degree n is spanned by the normal forms of free monomials of
    weight <= p.
    """

    def __init__(self, A: CDGA):
        self.algebra = A
        self._chains: Dict[int, Dict[int, Subspace]] = {}
        self._bounds: Dict[int, Tuple[int, int]] = {}

    def _build(self, n: int):
        if n in self._chains:
            return
        A = self.algebra
        dim = A.dim(n)
        by_weight: Dict[int, list] = {}
        for m in A.free.monomials(n):
            by_weight.setdefault(A.free.mono_weight(m), []).append(A.vector(A.free.monomial(m), n))
        chain = {}
        acc = Subspace.zero(dim)
        weights = sorted(by_weight)
        for p in weights:
            acc = acc + Subspace(dim, by_weight[p])
            chain[p] = acc
        if weights:
            lo = weights[0]
            while lo in chain and chain[lo].dim == 0 and lo < weights[-1]:
                lo += 1
            hi = weights[-1]
        else:
            lo = hi = 0
        if dim == 0:
            lo, hi = 1, 0
        self._chains[n] = chain
        self._bounds[n] = (lo, hi)

    def bounds(self, n: int) -> Tuple[int, int]:
        if n < 0:
            return (1, 0)
        self._build(n)
        return self._bounds[n]

    def slice(self, p: int, n: int) -> Subspace:
        if n < 0:
            return Subspace.zero(0)
        self._build(n)
        chain = self._chains[n]
        dim = self.algebra.dim(n)
        best = None
        for q in chain:
            if q <= p and (best is None or q > best):
                best = q
        return chain[best] if best is not None else Subspace.zero(dim)


def weight_slice(A: CDGA, p: int, n: int) -> Subspace:
    return WeightFiltration(A).slice(p, n)


class ExplicitFiltration:
    """Per-degree chains of subspaces, given on a finite range of weights.

    ``chains[n]`` maps weights to subspaces; below the smallest key the slice
    is zero and from the largest key on it is the last subspace, which must
    be the whole space.
    """

    def __init__(self, chains: Dict[int, Dict[int, Subspace]], dims: Dict[int, int],
                 dropped_degrees=()):
        self.chains = {n: dict(sorted(c.items())) for n, c in chains.items()}
        self.dims = dict(dims)
        self.dropped_degrees = tuple(dropped_degrees)
        for n, chain in self.chains.items():
            prev = None
            for p, S in chain.items():
                if S.ambient_dim != self.dims[n]:
                    raise ValueError(f"slice W_{p} in degree {n} has the wrong ambient dimension")
                if prev is not None and not prev <= S:
                    raise ValueError(f"filtration is not nested at W_{p} in degree {n}")
                prev = S
            if chain and prev.dim != self.dims[n]:
                raise ValueError(f"filtration is not exhaustive in degree {n}")

    @classmethod
    def from_filtration(cls, W, degrees, dim: Callable[[int], int]) -> "ExplicitFiltration":
        chains, dims = {}, {}
        for n in degrees:
            dims[n] = dim(n)
            lo, hi = W.bounds(n)
            chains[n] = {p: W.slice(p, n) for p in range(lo, hi + 1)}
        return cls(chains, dims)

    def degrees(self):
        return sorted(self.chains)

    def bounds(self, n: int) -> Tuple[int, int]:
        chain = self.chains.get(n)
        if n not in self.dims:
            if n in self.dropped_degrees:
                raise TruncationError(f"degree {n} was dropped from this filtration")
            return (1, 0)
        if not chain or self.dims[n] == 0:
            return (1, 0)
        ps = [p for p, S in chain.items() if S.dim > 0]
        return (ps[0], max(chain))

    def slice(self, p: int, n: int) -> Subspace:
        if n not in self.dims:
            if n in self.dropped_degrees:
                raise TruncationError(f"degree {n} was dropped from this filtration")
            return Subspace.zero(0)
        chain = self.chains[n]
        if not chain:
            return Subspace.full(self.dims[n])
        keys = list(chain)
        if p < keys[0]:
            return Subspace.zero(self.dims[n])
        if p >= keys[-1]:
            return chain[keys[-1]]
        best = keys[0]
        for q in keys:
            if q <= p:
                best = q
        return chain[best]

    def __eq__(self, other):
        if not isinstance(other, ExplicitFiltration):
            return NotImplemented
        if self.degrees() != other.degrees():
            return False
        for n in self.degrees():
            lo = min(self.bounds(n)[0], other.bounds(n)[0])
            hi = max(self.bounds(n)[1], other.bounds(n)[1])
            for p in range(lo - 1, hi + 1):
                if self.slice(p, n) != other.slice(p, n):
                    return False
        return True

    def table(self) -> List[Tuple[int, int, int]]:
        """(degree, weight, dimension) rows."""
        out = []
        for n in self.degrees():
            lo, hi = self.bounds(n)
            for p in range(lo, hi + 1):
                out.append((n, p, self.slice(p, n).dim))
        return out


class FilteredComplex:
    """A cochain complex of finite-dimensional Q-spaces with a filtration.

    Degrees lie in ``[0, top]``. When ``closed`` is true every degree above
    ``top`` is zero; otherwise the complex is only known through ``top`` and
    asking for d in degree ``top`` raises TruncationError.
    """

    def __init__(self, dims: Dict[int, int], diffs: Dict[int, RatMatrix], filtration,
                 closed: bool = True, name: str = "C"):
        self._dims = dict(dims)
        self._diffs = dict(diffs)
        self.filtration = filtration
        self.closed = closed
        self.name = name
        self.top = max(self._dims) if self._dims else -1
        self.bottom = min(self._dims) if self._dims else 0

    def dim(self, n: int) -> int:
        if n > self.top and not self.closed:
            raise TruncationError(f"degree {n} is beyond the known range of {self.name}")
        return self._dims.get(n, 0)

    def d(self, n: int) -> RatMatrix:
        if n >= self.top and not self.closed:
            raise TruncationError(f"d in degree {n} needs degree {n + 1}, beyond {self.name}")
        M = self._diffs.get(n)
        if M is None:
            return RatMatrix(self.dim(n + 1), self.dim(n))
        return M

    def max_d_degree(self) -> int:
        """Largest n for which d(n) is available."""
        return self.top if self.closed else self.top - 1

    def slice(self, p: int, n: int) -> Subspace:
        if self.dim(n) == 0:
            return Subspace.zero(0)
        return self.filtration.slice(p, n)

    def bounds(self, n: int) -> Tuple[int, int]:
        if self.dim(n) == 0:
            return (1, 0)
        return self.filtration.bounds(n)

    def with_filtration(self, filtration, name=None) -> "FilteredComplex":
        return FilteredComplex(self._dims, self._diffs, filtration, self.closed,
                               name or self.name)

    def check(self) -> List[Violation]:
        """d∘d = 0, nested slices, and d(W_p) ⊆ W_p."""
        out = []
        for n in range(self.bottom, self.max_d_degree()):
            if not (self.d(n + 1) @ self.d(n)).is_zero():
                out.append(Violation("d^2", f"degree {n}"))
        for n in range(self.bottom, self.max_d_degree() + 1):
            lo, hi = self.bounds(n)
            for p in range(lo - 1, hi + 1):
                if not self.slice(p - 1, n) <= self.slice(p, n):
                    out.append(Violation("nested", f"W_{p} degree {n}"))
                img = Subspace(self.dim(n + 1), [self.d(n).apply(v) for v in self.slice(p, n).basis])
                if not img <= self.slice(p, n + 1):
                    out.append(Violation("d-compatibility", f"W_{p} degree {n}"))
        return out

    @classmethod
    def from_algebra(cls, A: CDGA, W=None, top: Optional[int] = None) -> "FilteredComplex":
        """The underlying complex of A through its truncation degree."""
        top = A.truncation if top is None else min(top, A.truncation)
        dims = {n: A.dim(n) for n in range(top + 1)}
        diffs = {n: A.d_matrix(n) for n in range(top)}
        return cls(dims, diffs, W if W is not None else WeightFiltration(A), closed=False,
                   name=A.name)


def _as_complex(A, W=None) -> FilteredComplex:
    if isinstance(A, FilteredComplex):
        return A if W is None else A.with_filtration(W)
    return FilteredComplex.from_algebra(A, W)


def decalage(A, W=None) -> ExplicitFiltration:
    """(Dec W)_p in degree n = W_{p-n} ∩ d^{-1}(W_{p-n-1} in degree n+1).

    Degrees whose differential is not computable (n+1 beyond the truncation)
    are dropped and listed in ``dropped_degrees``.
    """
    C = _as_complex(A, W)
    chains, dims, dropped = {}, {}, []
    top = C.top
    for n in range(C.bottom, top + 1):
        if n > C.max_d_degree():
            dropped.append(n)
            continue
        dims[n] = C.dim(n)
        if dims[n] == 0:
            chains[n] = {}
            continue
        lo, hi = C.bounds(n)
        lo1, hi1 = C.bounds(n + 1)
        dhi = max(hi + n, hi1 + n + 1)
        dlo = lo + n
        D = C.d(n)
        chain = {}
        for p in range(dlo, dhi + 1):
            chain[p] = C.slice(p - n, n) & preimage(D, C.slice(p - n - 1, n + 1))
        chains[n] = chain
    return ExplicitFiltration(chains, dims, dropped_degrees=dropped)


def shifted(W, degrees, dim, shift: Callable[[int], int] = lambda n: n) -> ExplicitFiltration:
    """The filtration p -> W_{p - shift(n)} in degree n."""
    chains, dims = {}, {}
    for n in degrees:
        dims[n] = dim(n)
        lo, hi = W.bounds(n)
        s = shift(n)
        chains[n] = {p + s: W.slice(p, n) for p in range(lo, hi + 1)} if dims[n] else {}
    return ExplicitFiltration(chains, dims)


def check_filtered_map(matrix: Callable[[int], RatMatrix], W_src, W_tgt, degrees,
                       shift: int = 0, label: str = "f") -> List[Violation]:
    """f(W_p) ⊆ W_{p+shift} degreewise."""
    out = []
    for n in degrees:
        M = matrix(n)
        if M.cols == 0:
            continue
        lo, hi = W_src.bounds(n)
        for p in range(lo, hi + 1):
            S = W_src.slice(p, n)
            T = W_tgt.slice(p + shift, n)
            for v in S.basis:
                if not T.contains(M.apply(v)):
                    out.append(Violation("filtration", f"{label} on W_{p} in degree {n}",
                                         f"image leaves W_{p + shift}"))
                    break
    return out


def check_filtered_morphism(f: Morphism, W_src=None, W_tgt=None) -> List[Violation]:
    """f(W_p) ⊆ W_p in every degree up to the common truncation."""
    W_src = W_src or WeightFiltration(f.source)
    W_tgt = W_tgt or WeightFiltration(f.target)
    top = min(f.source.truncation, f.target.truncation)
    return check_filtered_map(f.matrix, W_src, W_tgt, range(top + 1), label=f.name)


def check_er_cofibrant(A: CDGA, r: int, order=None) -> List[Violation]:
    """Freeness over the extension order and d(W_p) ⊆ W_{p-r} degreewise.

    ``order`` is a list of generator names; each generator's differential may
    only involve generators earlier in the order. Defaults to declaration
    order sorted stably by degree.
    """
    out = []
    if A.relations:
        out.append(Violation("freeness", A.name, "presentation has relations"))
    names = [g.name for g in A.gens]
    if order is None:
        order = [g.name for g in sorted(A.gens, key=lambda g: g.degree)]
    if sorted(order) != sorted(names):
        out.append(Violation("order", A.name, "extension order must list every generator once"))
        return out
    pos = {name: i for i, name in enumerate(order)}
    for name in order:
        g = A.generator(name)
        dg = A.differential[name]
        for m in dg.terms:
            used = [A.gens[i].name for i, e in enumerate(m) if e]
            late = [u for u in used if pos[u] >= pos[name]]
            if late:
                out.append(Violation("order", name,
                                     f"d({name}) involves {', '.join(late)} not attached earlier"))
                break
        if dg and dg.weight > g.weight - r:
            out.append(Violation("weight-drop", name,
                                 f"d({name}) = {dg} has weight {dg.weight} > {g.weight - r}"))
    return out
