"""Pages of the spectral sequence of an increasingly filtered complex.

For weight p and total degree n,

    Z_r^p = W_p ∩ d^{-1} W_{p-r}
    B_s^p = W_p ∩ d(W_{p+s})
    E_r^p = Z_r^p / (Z_{r-1}^{p-1} + B_{r-1}^p)

and d_r: E_r^{p,n} -> E_r^{p-r,n+1} is induced by d. In the bidegree
notation E_r^{-p,q} the total degree is n = q - p. (For a decreasing
filtration F^i = W_{-i} the same page is the classical E_r^{i, n-i}.)
"""
import json
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from .algebra import CDGA, Morphism, TruncationError
from .filtration import FilteredComplex, WeightFiltration
from .linalg import (QuotientCoordinates, RatMatrix, Subspace, combine, image_basis,
                     kernel_basis, preimage, quotient_representatives, scale, solve_in_subspace,
                     sub)


class _Entry:
    __slots__ = ("reps", "coords")

    def __init__(self, reps, coords):
        self.reps = reps
        self.coords = coords


class SpectralPage:
    """Common interface: dim, reps, coords and d_r per (weight p, degree n)."""

    r: int
    complex: FilteredComplex

    def __init__(self):
        self._entries: Dict[Tuple[int, int], _Entry] = {}
        self._diffs: Dict[Tuple[int, int], RatMatrix] = {}

    def _compute(self, p: int, n: int) -> _Entry:
        raise NotImplementedError

    def _entry(self, p: int, n: int) -> _Entry:
        e = self._entries.get((p, n))
        if e is None:
            e = self._compute(p, n)
            self._entries[(p, n)] = e
        return e

    def dim(self, p: int, n: int) -> int:
        return len(self._entry(p, n).reps)

    def reps(self, p: int, n: int):
        """Ambient representatives of a basis of the (p, n) entry."""
        return list(self._entry(p, n).reps)

    def coords(self, p: int, n: int, v) -> tuple:
        """Coordinates of the class of an ambient vector v ∈ Z_r^p."""
        return self._entry(p, n).coords(v)

    def weights(self, n: int) -> range:
        lo, hi = self.complex.bounds(n)
        return range(lo, hi + 1)

    def differential(self, p: int, n: int) -> RatMatrix:
        """Matrix of d_r: E^{p,n} -> E^{p-r,n+1}."""
        key = (p, n)
        M = self._diffs.get(key)
        if M is None:
            src = self._entry(p, n)
            tgt = self._entry(p - self.r, n + 1)
            D = self.complex.d(n)
            cols = [tgt.coords(D.apply(x)) for x in src.reps]
            M = RatMatrix.from_columns(cols, len(tgt.reps))
            self._diffs[key] = M
        return M

    def bidegree(self, p: int, n: int) -> Tuple[int, int]:
        return (-p, n + p)

    def total_dims(self, degrees: Iterable[int]) -> List[int]:
        return [sum(self.dim(p, n) for p in self.weights(n)) for n in degrees]

    def table(self, pmin: int, pmax: int, qmin: int, qmax: int):
        """Entries with weight p in [pmin, pmax] and q in [qmin, qmax]."""
        out = []
        for p in range(pmin, pmax + 1):
            for q in range(qmin, qmax + 1):
                n = q - p
                if n < 0:
                    continue
                out.append((p, n, self.dim(p, n)))
        return out

    def format_vector(self, n: int, v) -> str:
        A = getattr(self.complex, "algebra", None)
        if A is not None:
            return str(A.element(n, v))
        return "(" + ", ".join(str(x) for x in v) + ")"

    def report(self, pmin, pmax, qmin, qmax) -> dict:
        entries, diffs = [], []
        for p, n, dim in self.table(pmin, pmax, qmin, qmax):
            s, q = self.bidegree(p, n)
            entries.append({"bidegree": [s, q], "weight": p, "degree": n, "dim": dim,
                            "basis": [self.format_vector(n, x) for x in self.reps(p, n)]})
        for p, n, dim in self.table(pmin, pmax, qmin, qmax):
            if not dim:
                continue
            try:
                M = self.differential(p, n)
            except TruncationError:
                continue
            if M.rows == 0 or M.is_zero():
                continue
            diffs.append({"source": list(self.bidegree(p, n)),
                          "target": list(self.bidegree(p - self.r, n + 1)),
                          "matrix": [[str(x) for x in row] for row in M.tolist()]})
        return {"r": self.r, "entries": entries, "differentials": diffs}

    def format_table(self, pmin, pmax, qmin, qmax) -> str:
        rep = self.report(pmin, pmax, qmin, qmax)
        lines = [f"E_{self.r} page, weights {pmin}..{pmax}, q {qmin}..{qmax}"]
        for e in rep["entries"]:
            s, q = e["bidegree"]
            basis = ", ".join(e["basis"])
            lines.append(f"E^{{{s},{q}}}  dim {e['dim']}" + (f"  [{basis}]" if basis else ""))
        for d in rep["differentials"]:
            (s, q), (s2, q2) = d["source"], d["target"]
            rows = "; ".join(" ".join(row) for row in d["matrix"])
            lines.append(f"d_{self.r}: E^{{{s},{q}}} -> E^{{{s2},{q2}}}  [{rows}]")
        return "\n".join(lines)


class DirectPage(SpectralPage):
    """E_r computed directly as a subquotient of the filtered complex."""

    def __init__(self, C: FilteredComplex, r: int):
        super().__init__()
        if r < 0:
            raise ValueError("page index must be non-negative")
        self.complex = C
        self.r = r

    def Z(self, s: int, p: int, n: int) -> Subspace:
        C = self.complex
        return C.slice(p, n) & preimage(C.d(n), C.slice(p - s, n + 1))

    def B(self, s: int, p: int, n: int) -> Subspace:
        C = self.complex
        if n - 1 < C.bottom:
            return Subspace.zero(C.dim(n))
        return C.slice(p, n) & image_basis(C.d(n - 1), C.slice(p + s, n - 1))

    def _compute(self, p, n):
        C = self.complex
        if C.dim(n) == 0:
            return _Entry([], lambda v: ())
        r = self.r
        Z = self.Z(r, p, n)
        den = self.Z(r - 1, p - 1, n) + self.B(r - 1, p, n)
        den = den & Z
        reps = quotient_representatives(den, Z)
        return _Entry(reps, QuotientCoordinates(reps, den))


class HomologyPage(SpectralPage):
    """E_{r+1} computed as the homology of (E_r, d_r).

    Dimensions come from ranks of the d_r matrices alone. Ambient
    representatives are lifted so that d_{r+1} and further pages can be
    computed from this page as well.
    """

    def __init__(self, P: SpectralPage):
        super().__init__()
        self.inner = P
        self.complex = P.complex
        self.r = P.r + 1

    def _compute(self, p, n):
        P = self.inner
        C = self.complex
        k = P.dim(p, n)
        if k == 0:
            return _Entry([], lambda v: ())
        out_m = P.differential(p, n)
        ker = kernel_basis(out_m) if out_m.rows else Subspace.full(k)
        if n - 1 >= C.bottom:
            in_m = P.differential(p + P.r, n - 1)
            im = image_basis(in_m) if in_m.cols else Subspace.zero(k)
        else:
            im = Subspace.zero(k)
        classes = quotient_representatives(im, ker)
        reps = [self._lift(p, n, c) for c in classes]
        qc = QuotientCoordinates(classes, im)
        return _Entry(reps, lambda v, P=P, p=p, n=n, qc=qc: qc(P.coords(p, n, v)))

    def _lift(self, p, n, c):
        """An ambient vector of Z_{r+1}^p whose E_r class has coordinates c."""
        P = self.inner
        C = self.complex
        s = P.r
        x0 = combine(c, P.reps(p, n), C.dim(n))
        D = C.d(n)
        dx0 = D.apply(x0)
        lower = C.slice(p - s - 1, n + 1)
        if lower.contains(dx0):
            return x0
        # find y in W_{p-1} and w in W_{p-s-1} with dy - w = dx0
        m, N = C.dim(n), C.dim(n + 1)
        M = RatMatrix.block([[D, RatMatrix.identity(N).scaled(-1)]], [N], [m, N])
        S = C.slice(p - 1, n).direct_sum(lower)
        sol = solve_in_subspace(M, dx0, S)
        if sol is None:
            raise ArithmeticError(f"class at weight {p}, degree {n} does not lift to the next page")
        return sub(x0, sol[:m])


def _complex_of(A, W=None) -> FilteredComplex:
    if isinstance(A, FilteredComplex):
        return A if W is None else A.with_filtration(W)
    C = FilteredComplex.from_algebra(A, W)
    C.algebra = A
    return C


def page(A, r: int, W=None) -> DirectPage:
    """The E_r page of an algebra (with W, default generator weights) or complex."""
    return DirectPage(_complex_of(A, W), r)


def next_page_oracle(P: SpectralPage) -> HomologyPage:
    return HomologyPage(P)


def check_window(C: FilteredComplex, r: int, degrees: Iterable[int]):
    top = C.max_d_degree()
    for n in degrees:
        if n > top and not C.closed:
            raise TruncationError(
                f"degree {n} needs differentials beyond degree {top} of {C.name}")


def induced_map(f_matrix: Callable[[int], RatMatrix], P: SpectralPage, Q: SpectralPage,
                p: int, n: int) -> RatMatrix:
    """Matrix of the map E(P)^{p,n} -> E(Q)^{p,n} induced by a filtered chain map."""
    F = f_matrix(n)
    cols = [Q.coords(p, n, F.apply(x)) for x in P.reps(p, n)]
    return RatMatrix.from_columns(cols, Q.dim(p, n))


def is_er_quasi_iso(f: Morphism, r: int, degrees: Iterable[int], W_src=None, W_tgt=None,
                    detail: bool = False):
    """Whether f induces an isomorphism on E_{r+1} in the given degrees."""
    Cs = _complex_of(f.source, W_src)
    Ct = _complex_of(f.target, W_tgt)
    degrees = list(degrees)
    check_window(Cs, r + 1, degrees)
    check_window(Ct, r + 1, degrees)
    P, Q = DirectPage(Cs, r + 1), DirectPage(Ct, r + 1)
    bad = []
    for n in degrees:
        weights = set(P.weights(n)) | set(Q.weights(n))
        for p in sorted(weights):
            if P.dim(p, n) != Q.dim(p, n):
                bad.append((p, n))
                continue
            if P.dim(p, n) and not induced_map(f.matrix, P, Q, p, n).is_invertible():
                bad.append((p, n))
    return (not bad, bad) if detail else not bad


def page_json(P: SpectralPage, window) -> str:
    return json.dumps(P.report(*window), sort_keys=True)
