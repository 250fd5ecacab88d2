"""Exact dense linear algebra over Q.

Scalars are :class:`fractions.Fraction`. Matrices are immutable and basis
matrices use the column convention: a subspace of Q^m is given by an m x k
matrix whose columns span it.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import UsageError

Rational = Fraction


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and exact strings like ``"-3/2"`` to a Fraction.

    Floats are refused: every value in this package is exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise UsageError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        num, sep, den = text.partition("/")
        try:
            n = int(num)
            d = int(den) if sep else 1
        except ValueError:
            raise UsageError(f"not an exact rational: {value!r}") from None
        if d == 0:
            raise UsageError(f"zero denominator: {value!r}")
        return Fraction(n, d)
    raise UsageError(f"not a rational: {value!r}")


def rational_str(q: Fraction) -> str:
    return str(q)


class RatMatrix:
    """Immutable rows x cols matrix of Fractions, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable = ()):
        entries = tuple(to_rational(e) for e in entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise UsageError(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("RatMatrix is immutable")

    # -- construction -------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> RatMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise UsageError("ragged rows")
        return cls(len(rows), cols, (e for r in rows for e in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> RatMatrix:
        columns = [list(c) for c in columns]
        if rows is None:
            if not columns:
                raise UsageError("row count needed for a matrix with no columns")
            rows = len(columns[0])
        if any(len(c) != rows for c in columns):
            raise UsageError("columns of unequal length")
        return cls(rows, len(columns), (columns[j][i] for i in range(rows) for j in range(len(columns))))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RatMatrix:
        return cls(rows, cols, [Fraction(0)] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> RatMatrix:
        return cls(n, n, (Fraction(int(i == j)) for i in range(n) for j in range(n)))

    @classmethod
    def column(cls, values: Sequence) -> RatMatrix:
        return cls(len(values), 1, values)

    # -- access -------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.rows else ()

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.cols)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_square(self) -> bool:
        return self.rows == self.cols

    # -- arithmetic ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __add__(self, other: RatMatrix) -> RatMatrix:
        _same_shape(self, other)
        return RatMatrix(self.rows, self.cols, (x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: RatMatrix) -> RatMatrix:
        _same_shape(self, other)
        return RatMatrix(self.rows, self.cols, (x - y for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> RatMatrix:
        return RatMatrix(self.rows, self.cols, (-x for x in self.entries))

    def scale(self, c) -> RatMatrix:
        c = to_rational(c)
        return RatMatrix(self.rows, self.cols, (c * x for x in self.entries))

    def __matmul__(self, other: RatMatrix) -> RatMatrix:
        if self.cols != other.rows:
            raise UsageError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = other.columns()
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for c in ocols:
                out.append(sum((x * y for x, y in zip(r, c) if x and y), Fraction(0)))
        return RatMatrix(self.rows, other.cols, out)

    def transpose(self) -> RatMatrix:
        return RatMatrix(self.cols, self.rows, (self[i, j] for j in range(self.cols) for i in range(self.rows)))

    @property
    def T(self) -> RatMatrix:
        return self.transpose()

    def trace(self) -> Fraction:
        if not self.is_square():
            raise UsageError("trace of a non-square matrix")
        return sum((self[i, i] for i in range(self.rows)), Fraction(0))

    def hstack(self, *others: RatMatrix) -> RatMatrix:
        mats = (self,) + others
        if any(m.rows != self.rows for m in mats):
            raise UsageError("hstack needs equal row counts")
        cols = [c for m in mats for c in m.columns()]
        return RatMatrix.from_columns(cols, rows=self.rows)

    def vstack(self, *others: RatMatrix) -> RatMatrix:
        mats = (self,) + others
        if any(m.cols != self.cols for m in mats):
            raise UsageError("vstack needs equal column counts")
        return RatMatrix(sum(m.rows for m in mats), self.cols, (e for m in mats for e in m.entries))

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"RatMatrix({self.rows}x{self.cols}: [{body}])"


def _same_shape(a: RatMatrix, b: RatMatrix) -> None:
    if a.shape != b.shape:
        raise UsageError(f"shape mismatch {a.shape} vs {b.shape}")


def _bits(q: Fraction) -> int:
    return q.numerator.bit_length() + q.denominator.bit_length()


def rref(M: RatMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns.

    Among the candidate pivots in a column the entry with the smallest
    combined bit length is chosen.
    """
    A = M.to_rows()
    rows, cols = M.rows, M.cols
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        best = None
        for i in range(r, rows):
            if A[i][c] and (best is None or _bits(A[i][c]) < _bits(A[best][c])):
                best = i
        if best is None:
            continue
        A[r], A[best] = A[best], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        pivot_row = A[r]
        for i in range(rows):
            f = A[i][c]
            if i != r and f:
                A[i] = [x - f * y for x, y in zip(A[i], pivot_row)]
        pivots.append(c)
        r += 1
    return A, pivots


def rank(M: RatMatrix) -> int:
    return len(rref(M)[1])


def kernel(M: RatMatrix) -> RatMatrix:
    """Basis of the null space of ``M`` as columns (zero columns if ``M`` is injective).

    One basis vector per free column, in increasing column order; the free
    coordinate of each vector is 1.
    """
    R, pivots = rref(M)
    free = [j for j in range(M.cols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for row, p in enumerate(pivots):
            v[p] = -R[row][f]
        basis.append(v)
    return RatMatrix.from_columns(basis, rows=M.cols)


def solve(M: RatMatrix, rhs: RatMatrix) -> RatMatrix | None:
    """A solution X of ``M @ X == rhs``, or ``None`` if the system is inconsistent."""
    if M.rows != rhs.rows:
        raise UsageError(f"solve: {M.shape} system with {rhs.shape} right-hand side")
    aug = M.hstack(rhs)
    R, pivots = rref(aug)
    if any(p >= M.cols for p in pivots):
        return None
    X = [[Fraction(0)] * rhs.cols for _ in range(M.cols)]
    for row, p in enumerate(pivots):
        X[p] = list(R[row][M.cols:])
    return RatMatrix.from_rows(X, cols=rhs.cols)


def det(M: RatMatrix) -> Fraction:
    if not M.is_square():
        raise UsageError(f"det of non-square {M.shape} matrix")
    A = M.to_rows()
    n = M.rows
    result = Fraction(1)
    for c in range(n):
        best = None
        for i in range(c, n):
            if A[i][c] and (best is None or _bits(A[i][c]) < _bits(A[best][c])):
                best = i
        if best is None:
            return Fraction(0)
        if best != c:
            A[c], A[best] = A[best], A[c]
            result = -result
        piv = A[c][c]
        result *= piv
        for i in range(c + 1, n):
            f = A[i][c] / piv
            if f:
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return result


def invert(M: RatMatrix) -> RatMatrix | None:
    if not M.is_square():
        raise UsageError(f"invert of non-square {M.shape} matrix")
    n = M.rows
    R, pivots = rref(M.hstack(RatMatrix.identity(n)))
    if pivots[:n] != list(range(n)):
        return None
    return RatMatrix.from_rows([r[n:] for r in R], cols=n)


def column_basis(M: RatMatrix) -> RatMatrix:
    """The pivot columns of ``M``: a basis of its column space drawn from its own columns."""
    _, pivots = rref(M)
    return RatMatrix.from_columns([M.col(j) for j in pivots], rows=M.rows)


def in_span(A: RatMatrix, v: Sequence) -> bool:
    return solve(A, RatMatrix.column(list(v))) is not None


def same_span(A: RatMatrix, B: RatMatrix) -> bool:
    if A.rows != B.rows:
        raise UsageError("subspaces of different ambient dimension")
    ra = rank(A)
    return ra == rank(B) and rank(A.hstack(B)) == ra


def intersect_subspaces(A: RatMatrix, B: RatMatrix) -> RatMatrix:
    """Basis of span(A) ∩ span(B).

    Solves A·s = B·t through the kernel of [A | -B] and maps the ``s`` part
    through ``A``.
    """
    if A.rows != B.rows:
        raise UsageError(f"ambient dimensions differ: {A.rows} vs {B.rows}")
    A = column_basis(A)
    B = column_basis(B)
    K = kernel(A.hstack(-B))
    vectors = []
    for col in K.columns():
        s = RatMatrix.column(col[:A.cols])
        vectors.append((A @ s).col(0))
    if not vectors:
        return RatMatrix.zeros(A.rows, 0)
    return column_basis(RatMatrix.from_columns(vectors, rows=A.rows))


def integral_primitive(v: Sequence[Fraction]) -> list[Fraction]:
    """Scale ``v`` by a positive rational to integer entries with gcd 1."""
    v = [to_rational(x) for x in v]
    if not any(v):
        return v
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for k in ints:
        g = gcd(g, k)
    return [Fraction(k // g) for k in ints]
