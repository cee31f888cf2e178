"""Finitely presented graded-commutative dgas over Q.

An algebra is the free graded-commutative algebra on a list of generators,
modulo an ideal of relations, with a differential given on generators.
Everything is computed degreewise up to an explicit truncation degree: in
degree n the relation ideal is spanned by the products ``relation * monomial``
and the quotient is taken by exact linear algebra.

Monomials are exponent tuples in generator declaration order. Within a
degree, free monomials are listed in ascending lexicographic order of their
exponent tuples; echelon pivots therefore eliminate the lex-smallest
monomials and the surviving (standard) monomials form the basis.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .linalg import (Coordinates, QuotientCoordinates, RatMatrix, Subspace,
                     as_fraction, image_basis, kernel_basis,
                     quotient_representatives)

Monomial = Tuple[int, ...]

DEFAULT_TRUNCATION = 8


class PresentationError(ValueError):
    pass


class TruncationError(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    weight: int = 0

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1


@dataclass(frozen=True)
class Violation:
    """A failed check: what kind, where, and a human-readable detail."""
    kind: str
    where: str
    detail: str = ""

    def __str__(self):
        return f"{self.kind} at {self.where}" + (f": {self.detail}" if self.detail else "")


class FreeAlgebra:
    """The free graded-commutative algebra on a tuple of generators."""

    def __init__(self, generators: Sequence[Generator]):
        self.gens = tuple(generators)
        self.index = {g.name: i for i, g in enumerate(self.gens)}
        if len(self.index) != len(self.gens):
            raise PresentationError("generator names must be unique")
        self._odd = tuple(g.odd for g in self.gens)
        self._monomials: Dict[int, List[Monomial]] = {}

    def __eq__(self, other):
        return isinstance(other, FreeAlgebra) and self.gens == other.gens

    def __hash__(self):
        return hash(self.gens)

    @property
    def ngens(self) -> int:
        return len(self.gens)

    def one(self) -> "Element":
        return Element(self, {self.unit: Fraction(1)})

    def zero(self) -> "Element":
        return Element(self)

    def scalar(self, c) -> "Element":
        return Element(self, {self.unit: as_fraction(c)})

    @property
    def unit(self) -> Monomial:
        return (0,) * len(self.gens)

    def gen(self, name: str) -> "Element":
        m = [0] * len(self.gens)
        m[self.index[name]] = 1
        return Element(self, {tuple(m): Fraction(1)})

    def monomial(self, m: Monomial) -> "Element":
        return Element(self, {tuple(m): Fraction(1)})

    def mono_degree(self, m: Monomial) -> int:
        return sum(e * g.degree for e, g in zip(m, self.gens))

    def mono_weight(self, m: Monomial) -> int:
        return sum(e * g.weight for e, g in zip(m, self.gens))

    def mono_mul(self, m1: Monomial, m2: Monomial):
        """(sign, m1*m2) with the Koszul sign; sign 0 if the product vanishes."""
        odd = self._odd
        sign = 1
        counts = [0] * len(m1)
        acc = 0
        for i in range(len(m1) - 1, -1, -1):
            counts[i] = acc
            if odd[i] and m1[i]:
                acc += 1
        for j, e in enumerate(m2):
            if e and odd[j]:
                if m1[j]:
                    return 0, None
                if counts[j] % 2:
                    sign = -sign
        return sign, tuple(a + b for a, b in zip(m1, m2))

    def monomials(self, n: int) -> List[Monomial]:
        """All free monomials of degree n, ascending lexicographic order."""
        if n in self._monomials:
            return self._monomials[n]
        if n < 0:
            return []
        gens = self.gens
        for g in gens:
            if g.degree <= 0:
                raise PresentationError(
                    f"generator {g.name} has degree {g.degree}; degrees must be positive")
        out = []

        def rec(i, remaining, prefix):
            if i == len(gens):
                if remaining == 0:
                    out.append(tuple(prefix))
                return
            g = gens[i]
            emax = remaining // g.degree
            if g.odd:
                emax = min(emax, 1)
            for e in range(emax + 1):
                prefix.append(e)
                rec(i + 1, remaining - e * g.degree, prefix)
                prefix.pop()

        rec(0, n, [])
        out.sort()
        self._monomials[n] = out
        return out

    def format_monomial(self, m: Monomial) -> str:
        parts = []
        for e, g in zip(m, self.gens):
            if e == 1:
                parts.append(g.name)
            elif e > 1:
                parts.append(f"{g.name}^{e}")
        return "*".join(parts) if parts else "1"


def _format_coeff_term(c: Fraction, mono: str, first: bool) -> str:
    neg = c < 0
    a = -c if neg else c
    if mono == "1":
        body = str(a)
    elif a == 1:
        body = mono
    else:
        body = f"{a}*{mono}"
    if first:
        return ("-" if neg else "") + body
    return (" - " if neg else " + ") + body


class Element:
    """A rational linear combination of free monomials."""

    __slots__ = ("parent", "terms")

    def __init__(self, parent: FreeAlgebra, terms: Optional[Dict[Monomial, Fraction]] = None):
        self.parent = parent
        self.terms = {m: as_fraction(c) for m, c in (terms or {}).items() if c}

    @property
    def degrees(self):
        return {self.parent.mono_degree(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    @property
    def degree(self) -> Optional[int]:
        """Degree of a homogeneous element; None for zero."""
        ds = self.degrees
        if not ds:
            return None
        if len(ds) > 1:
            raise PresentationError(f"element {self} is not homogeneous")
        return next(iter(ds))

    @property
    def weight(self) -> Optional[int]:
        """Largest monomial weight; None for zero."""
        if not self.terms:
            return None
        return max(self.parent.mono_weight(m) for m in self.terms)

    def is_decomposable(self) -> bool:
        """Every monomial is a product of at least two generators."""
        return all(sum(m) >= 2 for m in self.terms)

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            if other.parent != self.parent:
                raise ValueError("elements of different algebras")
            return other
        return self.parent.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return Element(self.parent, terms)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.parent, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Element):
            c = as_fraction(other)
            return Element(self.parent, {m: c * a for m, a in self.terms.items()})
        other = self._coerce(other)
        terms: Dict[Monomial, Fraction] = {}
        mul = self.parent.mono_mul
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                s, m = mul(m1, m2)
                if s:
                    terms[m] = terms.get(m, 0) + s * c1 * c2
        return Element(self.parent, terms)

    def __rmul__(self, other):
        if isinstance(other, Element):
            return other.__mul__(self)
        return self.__mul__(other)

    def __truediv__(self, c):
        return self * (1 / as_fraction(c))

    def __pow__(self, k: int):
        out = self.parent.one()
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.parent == other.parent and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        P = self.parent
        return sorted(self.terms.items(), key=lambda mc: (P.mono_degree(mc[0]), mc[0]),
                      reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            out.append(_format_coeff_term(c, self.parent.format_monomial(m), i == 0))
        return "".join(out)

    def __repr__(self):
        return f"Element({self})"


class _Slice:
    __slots__ = ("monomials", "index", "relations", "standard", "basis")


class CDGA:
    """A graded-commutative dga presented by generators, relations and d.

    ``relations`` and the values of ``differential`` are free elements (or
    strings parsed on the fly is left to the DSL). Generators missing from
    ``differential`` are closed.
    """

    def __init__(self, generators: Sequence[Generator], relations: Iterable[Element] = (),
                 differential: Optional[Dict[str, Element]] = None,
                 truncation: int = DEFAULT_TRUNCATION, name: str = "A",
                 validate: bool = True):
        self.name = name
        self.free = FreeAlgebra(generators)
        self.gens = self.free.gens
        self.truncation = truncation
        self.relations = tuple(relations)
        differential = dict(differential or {})
        self.differential = {}
        for g in self.gens:
            x = differential.pop(g.name, None)
            self.differential[g.name] = x if x is not None else self.free.zero()
        if differential:
            raise PresentationError(
                f"differential given for undeclared generator(s): {', '.join(sorted(differential))}")
        self._slices: Dict[int, _Slice] = {}
        self._dmono: Dict[Monomial, Element] = {}
        self._reduced: Dict[Monomial, Element] = {}
        self._dmat: Dict[int, RatMatrix] = {}
        if validate:
            problems = self.validate()
            if problems:
                raise PresentationError("; ".join(str(p) for p in problems))

    # -- construction helpers -------------------------------------------------

    @classmethod
    def free_on(cls, generators, differential=None, **kw) -> "CDGA":
        return cls(generators, (), differential, **kw)

    def gen(self, name: str) -> Element:
        return self.free.gen(name)

    def one(self) -> Element:
        return self.free.one()

    def zero(self) -> Element:
        return self.free.zero()

    def generator(self, name: str) -> Generator:
        return self.gens[self.free.index[name]]

    def __repr__(self):
        return f"CDGA({self.name}: {', '.join(g.name for g in self.gens)}; trunc {self.truncation})"

    def __eq__(self, other):
        return (isinstance(other, CDGA) and self.gens == other.gens
                and self.truncation == other.truncation
                and self.relations == other.relations
                and self.differential == other.differential)

    def __hash__(self):
        return hash((self.gens, self.truncation))

    def with_weights(self, weights: Dict[str, int], name: Optional[str] = None) -> "CDGA":
        """Same presentation with generator weights replaced."""
        gens = [Generator(g.name, g.degree, weights.get(g.name, g.weight)) for g in self.gens]
        return self._rebuild(gens, name=name)

    def with_truncation(self, truncation: int) -> "CDGA":
        return self._rebuild(list(self.gens), truncation=truncation)

    def _rebuild(self, gens, name=None, truncation=None) -> "CDGA":
        F = FreeAlgebra(gens)
        conv = lambda x: Element(F, x.terms)
        return CDGA(gens, [conv(r) for r in self.relations],
                    {k: conv(v) for k, v in self.differential.items()},
                    truncation=self.truncation if truncation is None else truncation,
                    name=name or self.name, validate=False)

    # -- degreewise structure -------------------------------------------------

    def _check_degree(self, n: int):
        if n > self.truncation:
            raise TruncationError(
                f"degree {n} exceeds truncation degree {self.truncation} of {self.name}")

    def _slice(self, n: int) -> _Slice:
        s = self._slices.get(n)
        if s is not None:
            return s
        self._check_degree(n)
        s = _Slice()
        s.monomials = self.free.monomials(n)
        s.index = {m: i for i, m in enumerate(s.monomials)}
        N = len(s.monomials)
        rows = []
        for r in self.relations:
            if not r:
                continue
            dr = r.degree
            if dr > n:
                continue
            for m in self.free.monomials(n - dr):
                row = [Fraction(0)] * N
                for rm, c in r.terms.items():
                    sign, p = self.free.mono_mul(rm, m)
                    if sign:
                        row[s.index[p]] += sign * c
                rows.append(row)
        s.relations = Subspace(N, rows)
        piv = set(s.relations.pivots)
        s.standard = [i for i in range(N) if i not in piv]
        s.basis = [s.monomials[i] for i in s.standard]
        self._slices[n] = s
        return s

    def dim(self, n: int) -> int:
        if n < 0:
            return 0
        return len(self._slice(n).standard)

    def degree_basis(self, n: int) -> List[Monomial]:
        """Standard monomials spanning the degree-n slice of the quotient."""
        if n < 0:
            return []
        return list(self._slice(n).basis)

    def basis_elements(self, n: int) -> List[Element]:
        return [self.free.monomial(m) for m in self.degree_basis(n)]

    def relation_ideal(self, n: int) -> Subspace:
        """The degree-n part of the relation ideal, in free-monomial coordinates."""
        return self._slice(n).relations

    def free_vector(self, x: Element, n: int):
        s = self._slice(n)
        v = [Fraction(0)] * len(s.monomials)
        for m, c in x.terms.items():
            v[s.index[m]] = c
        return tuple(v)

    def vector(self, x: Element, n: Optional[int] = None):
        """Coordinates of x (reduced) in the degree-n basis."""
        if n is None:
            n = x.degree
            if n is None:
                raise ValueError("degree of the zero element must be given")
        if x and x.degree != n:
            raise ValueError(f"element {x} does not have degree {n}")
        s = self._slice(n)
        if not x:
            return (Fraction(0),) * len(s.standard)
        red = s.relations.reduce(self.free_vector(x, n))
        return tuple(red[i] for i in s.standard)

    def element(self, n: int, v: Sequence) -> Element:
        s = self._slice(n)
        return Element(self.free, {m: c for m, c in zip(s.basis, v) if c})

    def reduce(self, x: Element) -> Element:
        """Normal form modulo the relations."""
        if not x:
            return x
        if not x.is_homogeneous():
            out = self.zero()
            by_deg: Dict[int, Dict] = {}
            for m, c in x.terms.items():
                by_deg.setdefault(self.free.mono_degree(m), {})[m] = c
            for terms in by_deg.values():
                out = out + self.reduce(Element(self.free, terms))
            return out
        n = x.degree
        if not self.relations:
            self._check_degree(n)
            return x
        return self.element(n, self.vector(x, n))

    def is_zero(self, x: Element) -> bool:
        return not self.reduce(x)

    def equal(self, x: Element, y: Element) -> bool:
        return self.is_zero(x - y)

    def multiply(self, x: Element, y: Element) -> Element:
        """Product in normal form; raises if the degree exceeds the truncation."""
        if x and y:
            self._check_degree(x.degree + y.degree)
        return self.reduce(x * y)

    # -- differential ---------------------------------------------------------

    def _free_d_monomial(self, m: Monomial) -> Element:
        cached = self._dmono.get(m)
        if cached is not None:
            return cached
        F = self.free
        out = F.zero()
        prefix_deg = 0
        for i, e in enumerate(m):
            if not e:
                continue
            g = self.gens[i]
            pre = tuple(m[j] if j < i else 0 for j in range(len(m)))
            post = tuple(m[j] if j > i else 0 for j in range(len(m)))
            mid = [0] * len(m)
            mid[i] = e - 1
            block = F.monomial(tuple(mid)) * self.differential[g.name] * e
            term = F.monomial(pre) * block * F.monomial(post)
            if prefix_deg % 2:
                term = -term
            out = out + term
            prefix_deg += e * g.degree
        self._dmono[m] = out
        return out

    def free_differential(self, x: Element) -> Element:
        """Leibniz extension of d on the free algebra (no reduction)."""
        out = self.free.zero()
        for m, c in x.terms.items():
            out = out + self._free_d_monomial(m) * c
        return out

    def differential_of(self, x: Element) -> Element:
        """d(x) in normal form."""
        if not x:
            return x
        self._check_degree(x.degree + 1)
        return self.reduce(self.free_differential(x))

    d = differential_of

    def d_matrix(self, n: int) -> RatMatrix:
        """Matrix of d: A^n -> A^(n+1) in the degree bases."""
        M = self._dmat.get(n)
        if M is not None:
            return M
        rows = self.dim(n + 1) if n + 1 >= 0 else 0
        if n < 0:
            M = RatMatrix(rows, 0)
        else:
            cols = [self.vector(self.d(b), n + 1) for b in self.basis_elements(n)]
            M = RatMatrix.from_columns(cols, rows)
        self._dmat[n] = M
        return M

    # -- validation -----------------------------------------------------------

    def validate(self) -> List[Violation]:
        out = []
        for g in self.gens:
            if g.degree <= 0:
                out.append(Violation("degree", g.name, "generator degrees must be positive"))
        if out:
            return out
        for r in self.relations:
            if r.parent != self.free:
                out.append(Violation("relation", str(r), "element of a different algebra"))
            elif not r.is_homogeneous():
                out.append(Violation("homogeneity", str(r), "relation is not homogeneous"))
            elif r and r.degree == 0:
                out.append(Violation("relation", str(r), "constant relation"))
        for g in self.gens:
            x = self.differential[g.name]
            if x and (not x.is_homogeneous() or x.degree != g.degree + 1):
                out.append(Violation("differential", g.name,
                                     f"d({g.name}) = {x} must be homogeneous of degree {g.degree + 1}"))
        if out:
            return out
        top = self.truncation
        for r in self.relations:
            if r and r.degree + 1 <= top:
                dr = self.free_differential(r)
                if dr and not self.relation_ideal(r.degree + 1).contains(self.free_vector(dr, r.degree + 1)):
                    out.append(Violation("relation", str(r), "d(relation) is not in the relation ideal"))
        for g in self.gens:
            if g.degree + 2 <= top:
                x = self.d(self.differential[g.name])
                if x:
                    out.append(Violation("d^2", g.name, f"d(d({g.name})) = {x} != 0"))
        return out

    # -- cohomology -----------------------------------------------------------

    def cocycles(self, n: int) -> Subspace:
        return kernel_basis(self.d_matrix(n))

    def coboundaries(self, n: int) -> Subspace:
        return image_basis(self.d_matrix(n - 1)) if n > 0 else Subspace.zero(self.dim(n))

    def cohomology(self, n: int):
        """(dimension, representative cocycles) of H^n."""
        if n + 1 > self.truncation:
            raise TruncationError(
                f"H^{n} needs degree {n + 1}, beyond truncation {self.truncation}")
        reps = quotient_representatives(self.coboundaries(n), self.cocycles(n))
        return len(reps), [self.element(n, r) for r in reps]

    def betti(self, up_to: int) -> List[int]:
        return [self.cohomology(n)[0] for n in range(up_to + 1)]

    def cohomology_class(self, x: Element, n: int):
        """Coordinates of the class of a cocycle x in the basis of cohomology()."""
        B = self.coboundaries(n)
        reps = quotient_representatives(B, self.cocycles(n))
        return QuotientCoordinates(reps, B)(self.vector(x, n))


def _apply_multiplicative(x: Element, images: Dict[str, object], one, mul, scale):
    """Evaluate a free element under a multiplicative map given on generators."""
    gens = x.parent.gens
    out = None
    for m, c in x.terms.items():
        val = one
        for i, e in enumerate(m):
            for _ in range(e):
                val = mul(val, images[gens[i].name])
        term = scale(val, c)
        out = term if out is None else out + term
    return out


class Morphism:
    """A dga morphism given by the images of the source generators."""

    def __init__(self, source: CDGA, target: CDGA, images: Dict[str, Element],
                 name: str = "f"):
        self.source = source
        self.target = target
        self.name = name
        missing = [g.name for g in source.gens if g.name not in images]
        extra = [k for k in images if k not in source.free.index]
        if extra:
            raise PresentationError(f"images given for undeclared generator(s): {', '.join(extra)}")
        self.images = {g.name: (images[g.name] if g.name not in missing else target.zero())
                       for g in source.gens}
        self._mono: Dict[Monomial, Element] = {}
        self._mats: Dict[int, RatMatrix] = {}

    def __repr__(self):
        return f"Morphism({self.name}: {self.source.name} -> {self.target.name})"

    def __eq__(self, other):
        return (isinstance(other, Morphism) and self.source == other.source
                and self.target == other.target and self.images == other.images)

    def _apply_monomial(self, m: Monomial) -> Element:
        v = self._mono.get(m)
        if v is None:
            T = self.target
            v = T.one()
            for i, e in enumerate(m):
                for _ in range(e):
                    v = T.multiply(v, self.images[self.source.gens[i].name])
            self._mono[m] = v
        return v

    def __call__(self, x: Element) -> Element:
        out = self.target.zero()
        for m, c in x.terms.items():
            out = out + self._apply_monomial(m) * c
        return self.target.reduce(out)

    def matrix(self, n: int) -> RatMatrix:
        M = self._mats.get(n)
        if M is None:
            cols = [self.target.vector(self(b), n) for b in self.source.basis_elements(n)]
            M = RatMatrix.from_columns(cols, self.target.dim(n))
            self._mats[n] = M
        return M

    def compose(self, inner: "Morphism", name: Optional[str] = None) -> "Morphism":
        """self ∘ inner."""
        if inner.target.gens != self.source.gens:
            raise ValueError("morphisms are not composable")
        return Morphism(inner.source, self.target,
                        {k: self(v) for k, v in inner.images.items()},
                        name=name or f"{self.name}.{inner.name}")

    @classmethod
    def identity(cls, A: CDGA) -> "Morphism":
        return cls(A, A, {g.name: A.gen(g.name) for g in A.gens}, name=f"id_{A.name}")

    def check(self) -> List[Violation]:
        return check_morphism(self)


def check_morphism(f: Morphism) -> List[Violation]:
    """Relation preservation and d-commutation up to the common truncation."""
    S, T = f.source, f.target
    top = min(S.truncation, T.truncation)
    out = []
    for g in S.gens:
        img = f.images[g.name]
        if img and (not img.is_homogeneous() or img.degree != g.degree):
            out.append(Violation("degree", g.name,
                                 f"image {img} does not have degree {g.degree}"))
    if out:
        return out
    for r in S.relations:
        if r and r.degree <= top:
            img = f(r)
            if img:
                out.append(Violation("relation", str(r), f"maps to {img} != 0"))
    for g in S.gens:
        if g.degree + 1 <= top:
            lhs = T.d(f.images[g.name])
            rhs = f(S.differential[g.name])
            if not T.equal(lhs, rhs):
                out.append(Violation("differential", g.name,
                                     f"d(f({g.name})) = {lhs} but f(d({g.name})) = {rhs}"))
    return out


def degree_basis(A: CDGA, n: int) -> List[Monomial]:
    return A.degree_basis(n)


def multiply(x: Element, y: Element, A: CDGA) -> Element:
    return A.multiply(x, y)


def differential(x: Element, A: CDGA) -> Element:
    return A.d(x)


def cohomology(A: CDGA, n: int):
    return A.cohomology(n)
