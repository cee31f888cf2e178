"""The r-path object P_r(A) = A ⊗ Λ(t, dt), r-homotopies and r-cones.

Path elements are stored with the forms on the left: a sum of terms
t^k ⊗ x and t^k dt ⊗ y with x, y in A. With t of degree 0 and dt of
degree 1 the graded-commutative product and differential are

    (t^i ⊗ x)(t^j dt ⊗ y) = (-1)^|x| t^(i+j) dt ⊗ xy
    (t^i dt ⊗ x)(t^j ⊗ y) = t^(i+j) dt ⊗ xy
    d(t^k ⊗ x)    = k t^(k-1) dt ⊗ x + t^k ⊗ dx
    d(t^k dt ⊗ y) = -t^k dt ⊗ dy

The filtration of P_r(A) gives dt weight -r:
W_p P_r(A) = W_p A ⊗ Λ(t) ⊕ W_{p+r} A ⊗ Λ(t) dt.
"""
from fractions import Fraction
from typing import Dict, List, Optional

from .algebra import CDGA, Element, Morphism, Violation
from .filtration import ExplicitFiltration, FilteredComplex, WeightFiltration
from .linalg import RatMatrix, Subspace, as_fraction


def element_weight(A: CDGA, x: Element, W=None) -> Optional[int]:
    """Smallest p with x in W_p; None for zero."""
    x = A.reduce(x)
    if not x:
        return None
    n = x.degree
    if W is None and not A.relations:
        return x.weight
    W = W or weights_of(A)
    v = A.vector(x, n)
    lo, hi = W.bounds(n)
    for p in range(lo, hi + 1):
        if W.slice(p, n).contains(v):
            return p
    return hi


def weights_of(A: CDGA) -> WeightFiltration:
    W = getattr(A, "_weight_filtration", None)
    if W is None:
        W = WeightFiltration(A)
        A._weight_filtration = W
    return W


class PathElement:
    """An element of A ⊗ Λ(t, dt): {k: x_k} for t^k ⊗ x_k, {k: y_k} for t^k dt ⊗ y_k."""

    __slots__ = ("algebra", "t", "dt")

    def __init__(self, A: CDGA, t: Optional[Dict[int, Element]] = None,
                 dt: Optional[Dict[int, Element]] = None):
        self.algebra = A
        self.t = {k: A.reduce(x) for k, x in (t or {}).items()}
        self.t = {k: x for k, x in self.t.items() if x}
        self.dt = {k: A.reduce(y) for k, y in (dt or {}).items()}
        self.dt = {k: y for k, y in self.dt.items() if y}

    @classmethod
    def constant(cls, A: CDGA, x: Element) -> "PathElement":
        return cls(A, {0: x})

    @classmethod
    def t_power(cls, A: CDGA, k: int = 1) -> "PathElement":
        return cls(A, {k: A.one()})

    @classmethod
    def dt_form(cls, A: CDGA, k: int = 0) -> "PathElement":
        return cls(A, dt={k: A.one()})

    @property
    def degree(self) -> Optional[int]:
        ds = {x.degree for x in self.t.values()} | {y.degree + 1 for y in self.dt.values()}
        if not ds:
            return None
        if len(ds) > 1:
            raise ValueError(f"path element {self} is not homogeneous")
        return ds.pop()

    def __bool__(self):
        return bool(self.t or self.dt)

    def _lift(self, other) -> "PathElement":
        if isinstance(other, PathElement):
            return other
        if isinstance(other, Element):
            return PathElement.constant(self.algebra, other)
        return PathElement.constant(self.algebra, self.algebra.one() * as_fraction(other))

    def __add__(self, other):
        other = self._lift(other)
        t = dict(self.t)
        for k, x in other.t.items():
            t[k] = t[k] + x if k in t else x
        dt = dict(self.dt)
        for k, y in other.dt.items():
            dt[k] = dt[k] + y if k in dt else y
        return PathElement(self.algebra, t, dt)

    __radd__ = __add__

    def __neg__(self):
        return PathElement(self.algebra, {k: -x for k, x in self.t.items()},
                           {k: -y for k, y in self.dt.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, (PathElement, Element)):
            c = as_fraction(other)
            return PathElement(self.algebra, {k: x * c for k, x in self.t.items()},
                               {k: y * c for k, y in self.dt.items()})
        other = self._lift(other)
        A = self.algebra
        t: Dict[int, Element] = {}
        dt: Dict[int, Element] = {}

        def acc(d, k, x):
            if x:
                d[k] = d[k] + x if k in d else x

        for i, x in self.t.items():
            for j, y in other.t.items():
                acc(t, i + j, A.multiply(x, y))
            for j, y in other.dt.items():
                sign = -1 if x.degree % 2 else 1
                acc(dt, i + j, A.multiply(x, y) * sign)
        for i, x in self.dt.items():
            for j, y in other.t.items():
                acc(dt, i + j, A.multiply(x, y))
        return PathElement(A, t, dt)

    def __rmul__(self, other):
        if isinstance(other, Element):
            return self._lift(other) * self
        return self * other

    def __pow__(self, k: int):
        out = PathElement.constant(self.algebra, self.algebra.one())
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, PathElement):
            return NotImplemented
        diff = self - other
        return not diff

    def __hash__(self):
        return hash((frozenset(self.t.items()), frozenset(self.dt.items())))

    def d(self) -> "PathElement":
        A = self.algebra
        t, dt = {}, {}
        for k, x in self.t.items():
            if k:
                dt[k - 1] = dt.get(k - 1, A.zero()) + x * k
            dx = A.d(x)
            t[k] = t.get(k, A.zero()) + dx
        for k, y in self.dt.items():
            dt[k] = dt.get(k, A.zero()) - A.d(y)
        return PathElement(A, t, dt)

    def evaluate(self, lam) -> Element:
        return evaluate(self, lam)

    def weight(self, r: int, W=None) -> Optional[int]:
        """Smallest p with self in W_p P_r(A)."""
        A = self.algebra
        ws = [element_weight(A, x, W) for x in self.t.values()]
        ws += [element_weight(A, y, W) - r for y in self.dt.values()]
        ws = [w for w in ws if w is not None]
        return max(ws) if ws else None

    def __str__(self):
        parts = []
        for k in sorted(self.t):
            parts.append(_term(_tpow(k), self.t[k]))
        for k in sorted(self.dt):
            parts.append(_term(_tpow(k, "dt"), self.dt[k]))
        if not parts:
            return "0"
        s = parts[0]
        for p in parts[1:]:
            s += " - " + p[1:] if p.startswith("-") else " + " + p
        return s

    def __repr__(self):
        return f"PathElement({self})"


def _tpow(k, suffix=None):
    base = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
    if suffix:
        return f"{base}*{suffix}" if base else suffix
    return base


def _term(prefix: str, x: Element) -> str:
    if not prefix:
        return f"({x})" if len(x.terms) > 1 else str(x)
    if len(x.terms) == 1:
        (m, c), = x.terms.items()
        if not any(m):
            if c == 1:
                return prefix
            if c == -1:
                return "-" + prefix
            return f"{c}*{prefix}"
    return f"{prefix}*({x})"


def evaluate(h: PathElement, lam) -> Element:
    """δ^λ: t -> λ, dt -> 0."""
    lam = as_fraction(lam)
    A = h.algebra
    out = A.zero()
    for k, x in h.t.items():
        out = out + x * (lam ** k)
    return A.reduce(out)


def integrate_0_1(h: PathElement) -> Element:
    """t^k dt ⊗ y -> y/(k+1); t^k ⊗ x -> 0."""
    A = h.algebra
    out = A.zero()
    for k, y in h.dt.items():
        out = out + y * Fraction(1, k + 1)
    return A.reduce(out)


def integrate_0_t(h: PathElement) -> PathElement:
    """t^k dt ⊗ y -> t^(k+1)/(k+1) ⊗ y; satisfies d∫ + ∫d = id - δ^0."""
    A = h.algebra
    return PathElement(A, {k + 1: y * Fraction(1, k + 1) for k, y in h.dt.items()})


class PathMorphism:
    """A dga map M -> P_r(A) given on generators, extended multiplicatively."""

    def __init__(self, source: CDGA, target: CDGA, images: Dict[str, PathElement],
                 r: int = 0, name: str = "h"):
        self.source = source
        self.target = target
        self.r = r
        self.name = name
        self.images = {g.name: images.get(g.name, PathElement(target)) for g in source.gens}
        extra = [k for k in images if k not in source.free.index]
        if extra:
            raise ValueError(f"homotopy given on undeclared generator(s): {', '.join(extra)}")
        self._mono = {}

    def _apply_monomial(self, m) -> PathElement:
        v = self._mono.get(m)
        if v is None:
            v = PathElement.constant(self.target, self.target.one())
            for i, e in enumerate(m):
                for _ in range(e):
                    v = v * self.images[self.source.gens[i].name]
            self._mono[m] = v
        return v

    def __call__(self, x: Element) -> PathElement:
        out = PathElement(self.target)
        for m, c in x.terms.items():
            out = out + self._apply_monomial(m) * c
        return out

    def endpoint(self, lam, name=None) -> Morphism:
        return Morphism(self.source, self.target,
                        {k: evaluate(h, lam) for k, h in self.images.items()},
                        name=name or f"{self.name}@{lam}")


def constant_homotopy(f: Morphism, r: int = 0) -> PathMorphism:
    return PathMorphism(f.source, f.target,
                        {k: PathElement.constant(f.target, x) for k, x in f.images.items()}, r)


def check_r_homotopy(h, f: Morphism, g: Morphism, r: int, W_src=None,
                     W_tgt=None) -> List[Violation]:
    """Is h an r-homotopy from f to g? Empty list means it is.

    Checks degrees, the endpoints δ^0 h = f and δ^1 h = g, the weight window
    h(W_p) ⊆ W_p P_r, d∘h = h∘d on generators, and that h kills relations.
    """
    if not isinstance(h, PathMorphism):
        h = PathMorphism(f.source, f.target, h, r)
    M, A = f.source, f.target
    if g.source.gens != M.gens or g.target.gens != A.gens:
        return [Violation("signature", "f, g", "f and g must share source and target")]
    out = []
    top = min(M.truncation, A.truncation)
    for gen in M.gens:
        hv = h.images[gen.name]
        try:
            deg = hv.degree
        except ValueError as e:
            out.append(Violation("degree", gen.name, str(e)))
            continue
        if deg is not None and deg != gen.degree:
            out.append(Violation("degree", gen.name,
                                 f"h({gen.name}) has degree {deg}, expected {gen.degree}"))
    if out:
        return out
    for gen in M.gens:
        hv = h.images[gen.name]
        e0, e1 = evaluate(hv, 0), evaluate(hv, 1)
        if not A.equal(e0, f.images[gen.name]):
            out.append(Violation("endpoint", f"t=0 on {gen.name}",
                                 f"h = {e0} but {f.name} = {f.images[gen.name]}"))
        if not A.equal(e1, g.images[gen.name]):
            out.append(Violation("endpoint", f"t=1 on {gen.name}",
                                 f"h = {e1} but {g.name} = {g.images[gen.name]}"))
    for gen in M.gens:
        hv = h.images[gen.name]
        w = hv.weight(r, W_tgt)
        limit = gen.weight if W_src is None else element_weight(M, M.gen(gen.name), W_src)
        if w is not None and w > limit:
            out.append(Violation("weight-window", gen.name,
                                 f"h({gen.name}) = {hv} lies in W_{w} P_{r}, not W_{limit}"))
    for gen in M.gens:
        if gen.degree + 1 > top:
            continue
        lhs = h.images[gen.name].d()
        rhs = h(M.differential[gen.name])
        if lhs != rhs:
            out.append(Violation("multiplicativity", f"d on {gen.name}",
                                 f"d h({gen.name}) = {lhs} but h(d {gen.name}) = {rhs}"))
    for rel in M.relations:
        if rel and rel.degree <= top:
            img = h(rel)
            if img:
                out.append(Violation("multiplicativity", f"relation {rel}", f"maps to {img} != 0"))
    return out


# -- cones and path carriers as filtered complexes -----------------------------

class _SumFiltration:
    """Filtration of a degreewise direct sum of filtered pieces.

    ``parts(n)`` lists (filtration, degree, weight offset, dim) so the slice
    W_p in degree n is the direct sum of piece slices W_{p+offset}.
    """

    def __init__(self, parts):
        self.parts = parts

    def slice(self, p, n):
        S = Subspace.zero(0)
        for W, m, off, dim in self.parts(n):
            piece = W.slice(p + off, m) if dim else Subspace.zero(0)
            S = S.direct_sum(piece)
        return S

    def bounds(self, n):
        los, his = [], []
        for W, m, off, dim in self.parts(n):
            if dim:
                lo, hi = W.bounds(m)
                los.append(lo - off)
                his.append(hi - off)
        if not los:
            return (1, 0)
        return (min(los), max(his))


def _complex(X) -> FilteredComplex:
    if isinstance(X, FilteredComplex):
        return X
    return FilteredComplex.from_algebra(X)


def r_cone(f, r: int, A=None, B=None) -> FilteredComplex:
    """C_r(f)^n = A^{n+1} ⊕ B^n with d(a, b) = (-da, f(a) + db).

    W_p C_r(f)^n = W_{p-r} A^{n+1} ⊕ W_p B^n. ``f`` is a Morphism, or a
    callable n -> matrix together with filtered complexes A and B.
    """
    if isinstance(f, Morphism):
        A = A or _complex(f.source)
        B = B or _complex(f.target)
        F = f.matrix
    else:
        F = f
    A, B = _complex(A), _complex(B)
    inf = 10 ** 9
    closed = A.closed and B.closed
    if closed:
        top = max(A.top - 1, B.top)
    else:
        top = min(inf if A.closed else A.top - 1, inf if B.closed else B.top)
    dims = {n: A.dim(n + 1) + B.dim(n) for n in range(-1, top + 1)}
    diffs = {}
    for n in range(-1, top + 1 if closed else top):
        a0, b0 = A.dim(n + 1), B.dim(n)
        a1, b1 = A.dim(n + 2), B.dim(n + 1)
        dA = A.d(n + 1).scaled(-1) if a0 and a1 else None
        Fm = F(n + 1) if a0 and b1 else None
        dB = B.d(n) if b0 and b1 else None
        diffs[n] = RatMatrix.block([[dA, None], [Fm, dB]], [a1, b1], [a0, b0])

    def parts(n):
        return [(A, n + 1, -r, A.dim(n + 1)), (B, n, 0, B.dim(n))]

    C = FilteredComplex(dims, diffs, _SumFiltration(parts), closed=closed, name="cone")
    return C


def path_carrier(A, r: int, K: int) -> FilteredComplex:
    """P_r(A) restricted to polynomials of degree <= K in t, as a filtered complex.

    Degree n has blocks t^0..t^K ⊗ A^n followed by t^0 dt..t^(K-1) dt ⊗ A^(n-1).
    """
    A = _complex(A)
    top = A.max_d_degree()
    dims, diffs = {}, {}
    for n in range(A.bottom, top + 1):
        dims[n] = (K + 1) * A.dim(n) + K * A.dim(n - 1)

    def offsets(n):
        return (K + 1) * A.dim(n)

    for n in range(A.bottom, top):
        an, an1 = A.dim(n), A.dim(n + 1)
        am = A.dim(n - 1)
        rows, cols = dims[n + 1], dims[n]
        M = [[Fraction(0)] * cols for _ in range(rows)]
        dA = A.d(n)
        dAm = A.d(n - 1) if am else None
        for k in range(K + 1):
            # t^k ⊗ x -> t^k ⊗ dx + k t^(k-1) dt ⊗ x
            for j in range(an):
                for i in range(an1):
                    M[k * an1 + i][k * an + j] = dA[i, j]
                if k:
                    M[offsets(n + 1) + (k - 1) * an + j][k * an + j] += k
        for k in range(K):
            for j in range(am):
                for i in range(an):
                    M[offsets(n + 1) + k * an + i][offsets(n) + k * am + j] = -dAm[i, j]
        diffs[n] = RatMatrix(rows, cols, M)

    def parts(n):
        out = [(A, n, 0, A.dim(n))] * (K + 1)
        out += [(A, n - 1, r, A.dim(n - 1))] * K
        return out

    return FilteredComplex(dims, diffs, _SumFiltration(parts), closed=False,
                           name=f"P_{r}(K={K})")
