"""Exact rational matrices and subspaces.

Vectors are tuples of ``Fraction``. Subspaces keep their basis in reduced
row echelon form, so two subspaces are equal iff their stored bases are
identical.
"""
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Vector = tuple


def as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def vec(entries) -> Vector:
    return tuple(as_fraction(x) for x in entries)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def is_zero(v: Sequence) -> bool:
    return not any(v)


def add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Sequence) -> Vector:
    c = as_fraction(c)
    return tuple(c * a for a in v)


def combine(coeffs: Sequence, vectors: Sequence[Sequence], n: int) -> Vector:
    """Linear combination sum(c_i v_i) in dimension n."""
    out = [Fraction(0)] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for i, a in enumerate(v):
                if a:
                    out[i] += c * a
    return tuple(out)


def rref(rows: Iterable[Sequence], ncols: int):
    """Reduced row echelon form.

    Returns ``(rows, pivots)`` where the zero rows have been dropped and
    ``pivots[i]`` is the pivot column of ``rows[i]``.
    """
    m = [list(vec(r)) for r in rows]
    pivots = []
    lead = 0
    for col in range(ncols):
        piv = None
        for i in range(lead, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[lead], m[piv] = m[piv], m[lead]
        prow = m[lead]
        inv = 1 / prow[col]
        if inv != 1:
            prow = [a * inv for a in prow]
            m[lead] = prow
        for i in range(len(m)):
            if i != lead and m[i][col]:
                c = m[i][col]
                row = m[i]
                m[i] = [a - c * b for a, b in zip(row, prow)]
        pivots.append(col)
        lead += 1
        if lead == len(m):
            break
    return [tuple(r) for r in m[:lead]], pivots


class RatMatrix:
    """Immutable dense matrix over Q."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries=None):
        self.rows = rows
        self.cols = cols
        if entries is None:
            data = tuple((Fraction(0),) * cols for _ in range(rows))
        else:
            entries = list(entries)
            if entries and isinstance(entries[0], (list, tuple)):
                data = tuple(vec(r) for r in entries)
            else:
                if len(entries) != rows * cols:
                    raise ValueError(
                        f"expected {rows * cols} entries, got {len(entries)}")
                flat = vec(entries)
                data = tuple(flat[i * cols:(i + 1) * cols] for i in range(rows))
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("entry count does not match shape")
        self._data = data

    @classmethod
    def from_rows(cls, rows, cols: Optional[int] = None) -> "RatMatrix":
        rows = [vec(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cannot infer column count of an empty matrix")
            cols = len(rows[0])
        return cls(len(rows), cols, rows if rows else None)

    @classmethod
    def from_columns(cls, columns, rows: int) -> "RatMatrix":
        columns = [vec(c) for c in columns]
        data = [tuple(c[i] for c in columns) for i in range(rows)]
        return cls(rows, len(columns), data if rows else None)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        one, zero = Fraction(1), Fraction(0)
        return cls(n, n, [[one if i == j else zero for j in range(n)]
                          for i in range(n)] if n else None)

    @classmethod
    def block(cls, blocks, row_sizes, col_sizes) -> "RatMatrix":
        """Assemble from a grid of blocks; ``None`` stands for a zero block."""
        data = []
        for bi, brow in enumerate(blocks):
            for i in range(row_sizes[bi]):
                row = []
                for bj, b in enumerate(brow):
                    if b is None:
                        row.extend([Fraction(0)] * col_sizes[bj])
                    else:
                        row.extend(b.row(i))
                data.append(row)
        return cls(sum(row_sizes), sum(col_sizes), data or None)

    def row(self, i: int) -> Vector:
        return self._data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._data)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    @property
    def entries(self) -> Vector:
        return tuple(a for r in self._data for a in r)

    def tolist(self):
        return [list(r) for r in self._data]

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} for {self.rows}x{self.cols} matrix")
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), Fraction(0))
                     for r in self._data)

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch in matrix product")
            cols = other.columns()
            return RatMatrix.from_columns([self.apply(c) for c in cols], self.rows)
        return self.apply(other)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        self._same_shape(other)
        return RatMatrix(self.rows, self.cols,
                         [add(a, b) for a, b in zip(self._data, other._data)] or None)

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        self._same_shape(other)
        return RatMatrix(self.rows, self.cols,
                         [sub(a, b) for a, b in zip(self._data, other._data)] or None)

    def __neg__(self) -> "RatMatrix":
        return self.scaled(-1)

    def scaled(self, c) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, [scale(c, r) for r in self._data] or None)

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def transpose(self) -> "RatMatrix":
        return RatMatrix.from_columns(self._data, self.cols) if self.rows else RatMatrix(self.cols, 0)

    def rank(self) -> int:
        return len(rref(self._data, self.cols)[1])

    def is_zero(self) -> bool:
        return all(is_zero(r) for r in self._data)

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self) -> "RatMatrix":
        if self.rows != self.cols:
            raise ValueError("non-square matrix")
        n = self.rows
        aug = [r + RatMatrix.identity(n).row(i) for i, r in enumerate(self._data)]
        red, piv = rref(aug, 2 * n)
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise ZeroDivisionError("singular matrix")
        return RatMatrix(n, n, [r[n:] for r in red] or None)

    def power(self, k: int) -> "RatMatrix":
        out = RatMatrix.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    def __eq__(self, other):
        return (isinstance(other, RatMatrix) and self.rows == other.rows
                and self.cols == other.cols and self._data == other._data)

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def __repr__(self):
        body = "; ".join(" ".join(str(a) for a in r) for r in self._data)
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"


class Subspace:
    """A subspace of Q^n with a canonical (RREF) basis."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        vectors = [vec(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        self.ambient_dim = ambient_dim
        basis, pivots = rref(vectors, ambient_dim)
        self.basis = tuple(basis)
        self.pivots = tuple(pivots)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, RatMatrix.identity(n).tolist() if n else ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def reduce(self, v: Sequence) -> Vector:
        """Residual of v after eliminating the pivot coordinates."""
        v = list(vec(v))
        for b, p in zip(self.basis, self.pivots):
            c = v[p]
            if c:
                for i, a in enumerate(b):
                    if a:
                        v[i] -= c * a
        return tuple(v)

    def contains(self, v: Sequence) -> bool:
        return is_zero(self.reduce(v))

    __contains__ = contains

    def coordinates(self, v: Sequence) -> Vector:
        """Coefficients of v in the stored basis; raises if v is not in the span."""
        v = vec(v)
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(v[p] for p in self.pivots)

    def issubspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(b) for b in self.basis)

    __le__ = issubspace

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def __and__(self, other: "Subspace") -> "Subspace":
        return meet_join(self, other)[0]

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def _check(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(
                f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}")

    def matrix(self) -> RatMatrix:
        """Basis vectors as columns."""
        return RatMatrix.from_columns(self.basis, self.ambient_dim)

    def annihilator(self) -> RatMatrix:
        """A matrix whose kernel is exactly this subspace."""
        n = self.ambient_dim
        if not self.basis:
            return RatMatrix.identity(n)
        ann = kernel_basis(RatMatrix.from_rows(self.basis, n))
        return RatMatrix(ann.dim, n, list(ann.basis) or None)

    def direct_sum(self, other: "Subspace") -> "Subspace":
        """The subspace self ⊕ other of Q^(n+m)."""
        n, m = self.ambient_dim, other.ambient_dim
        zn, zm = zero_vector(n), zero_vector(m)
        return Subspace(n + m, [b + zm for b in self.basis] + [zn + b for b in other.basis])

    def __repr__(self):
        return f"Subspace(dim={self.dim} in Q^{self.ambient_dim})"


def kernel_basis(M: RatMatrix) -> Subspace:
    red, pivots = rref(M._data, M.cols)
    free = [j for j in range(M.cols) if j not in set(pivots)]
    vectors = []
    for j in free:
        x = [Fraction(0)] * M.cols
        x[j] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[j]
        vectors.append(x)
    return Subspace(M.cols, vectors)


def image_basis(M: RatMatrix, S: Optional[Subspace] = None) -> Subspace:
    """Column space of M, or M(S) when a source subspace is given."""
    if S is None:
        return Subspace(M.rows, M.columns())
    return Subspace(M.rows, [M.apply(b) for b in S.basis])


def solve(M: RatMatrix, b: Sequence) -> Optional[Vector]:
    """Some x with Mx = b, or None."""
    b = vec(b)
    if len(b) != M.rows:
        raise ValueError(f"right-hand side of length {len(b)} for {M.rows} rows")
    aug = [r + (c,) for r, c in zip(M._data, b)]
    red, pivots = rref(aug, M.cols + 1)
    if pivots and pivots[-1] == M.cols:
        return None
    x = [Fraction(0)] * M.cols
    for row, p in zip(red, pivots):
        x[p] = row[M.cols]
    return tuple(x)


def solve_in_subspace(M: RatMatrix, b: Sequence, S: Subspace) -> Optional[Vector]:
    """Some x in S with Mx = b, or None."""
    if S.ambient_dim != M.cols:
        raise ValueError(f"subspace lives in Q^{S.ambient_dim}, matrix has {M.cols} columns")
    b = vec(b)
    if len(b) != M.rows:
        raise ValueError(f"right-hand side of length {len(b)} for {M.rows} rows")
    if not S.basis:
        return zero_vector(M.cols) if is_zero(b) else None
    B = S.matrix()
    c = solve(M @ B, b)
    if c is None:
        return None
    return B.apply(c)


def preimage(M: RatMatrix, S: Subspace) -> Subspace:
    """{x : Mx in S}."""
    if S.ambient_dim != M.rows:
        raise ValueError("target subspace has the wrong ambient dimension")
    ann = S.annihilator()
    if ann.rows == 0:
        return Subspace.full(M.cols)
    return kernel_basis(ann @ M)


def meet_join(U: Subspace, V: Subspace):
    """(U ∩ V, U + V)."""
    U._check(V)
    join = U + V
    if not U.basis or not V.basis:
        return Subspace.zero(U.ambient_dim), join
    # sum a_i u_i - sum b_j v_j = 0
    cols = list(U.basis) + [scale(-1, v) for v in V.basis]
    K = kernel_basis(RatMatrix.from_columns(cols, U.ambient_dim))
    k = U.dim
    meet = Subspace(U.ambient_dim,
                    [combine(x[:k], U.basis, U.ambient_dim) for x in K.basis])
    return meet, join


def quotient_representatives(U: Subspace, V: Subspace):
    """Vectors of V projecting to a basis of V/U, in basis order of V."""
    U._check(V)
    if not U.issubspace(V):
        raise ValueError("first subspace is not contained in the second")
    reps = []
    current = U
    for b in V.basis:
        if not current.contains(b):
            reps.append(b)
            current = Subspace(U.ambient_dim, current.basis + (b,))
    return reps


class Coordinates:
    """Coordinates with respect to a list of independent vectors.

    ``coords(v)`` returns the coefficients c with v = sum c_i basis_i and
    raises ``ValueError`` if v is outside the span.
    """

    def __init__(self, basis: Sequence[Sequence], ambient_dim: int):
        self.basis = [vec(b) for b in basis]
        self.ambient_dim = ambient_dim
        k = len(self.basis)
        self._span = Subspace(ambient_dim, self.basis)
        if self._span.dim != k:
            raise ValueError("basis vectors are linearly dependent")
        if k:
            # k rows of the basis matrix forming an invertible block
            _, rows = rref(self.basis, ambient_dim)
            self._rows = rows
            sq = RatMatrix(k, k, [[b[r] for b in self.basis] for r in rows])
            self._inv = sq.inverse()
        else:
            self._rows = []
            self._inv = RatMatrix(0, 0)

    def __call__(self, v: Sequence) -> Vector:
        v = vec(v)
        if not self._span.contains(v):
            raise ValueError("vector is not in the span")
        return self._inv.apply(tuple(v[r] for r in self._rows))


class QuotientCoordinates:
    """Coordinates in V/U with respect to chosen representatives."""

    def __init__(self, reps: Sequence[Sequence], U: Subspace):
        self.reps = [vec(r) for r in reps]
        self.k = len(self.reps)
        self._coords = Coordinates(self.reps + list(U.basis), U.ambient_dim)

    def __call__(self, v: Sequence) -> Vector:
        return self._coords(v)[:self.k]
