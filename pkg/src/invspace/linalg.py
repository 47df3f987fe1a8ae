"""Exact dense linear algebra over the Gaussian rationals.

Vectors are plain tuples of :class:`GaussianRational`.  Matrices are small
(dimension at most a few dozen), so straightforward Gauss-Jordan
elimination is used throughout.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .errors import DimensionMismatchError
from .poly import Poly, lcm
from .scalar import ONE, ZERO, GaussianRational, as_scalar

__all__ = [
    "Matrix",
    "rref",
    "rank",
    "row_reducer",
    "solve",
    "kernel_basis",
    "in_span",
    "minimal_polynomial_matrix",
    "poly_of_matrix",
]

Vector = tuple


class Matrix:
    """Row-major ``rows x cols`` matrix with exact entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(as_scalar(e) for e in entries)
        if len(entries) != rows * cols:
            raise DimensionMismatchError(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> Matrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatchError("ragged rows")
        return cls(len(rows), ncols, [e for r in rows for e in r])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int | None = None) -> Matrix:
        columns = [tuple(c) for c in columns]
        if not columns:
            return cls(nrows or 0, 0, [])
        m = len(columns[0])
        if any(len(c) != m for c in columns):
            raise DimensionMismatchError("columns differ in length")
        return cls(m, len(columns), [columns[j][i] for i in range(m) for j in range(len(columns))])

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls(n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls(rows, cols, [ZERO] * (rows * cols))

    @classmethod
    def diagonal(cls, values: Sequence) -> Matrix:
        n = len(values)
        return cls(n, n, [values[i] if i == j else ZERO for i in range(n) for j in range(n)])

    def __getitem__(self, index):
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[GaussianRational]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(str(e) for e in self.row(i)) for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise DimensionMismatchError(f"cannot add {self.shape} and {other.shape}")
        return Matrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise DimensionMismatchError(f"cannot subtract {other.shape} from {self.shape}")
        return Matrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def scale(self, c) -> Matrix:
        c = as_scalar(c)
        return Matrix(self.rows, self.cols, [c * e for e in self.entries])

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise DimensionMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        ocols = other.columns()
        for i in range(self.rows):
            r = self.row(i)
            for c in ocols:
                acc = ZERO
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                out.append(acc)
        return Matrix(self.rows, other.cols, out)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise DimensionMismatchError(f"vector of length {len(v)} for {self.shape} matrix")
        out = []
        for i in range(self.rows):
            acc = ZERO
            for a, b in zip(self.row(i), v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def transpose(self) -> Matrix:
        return Matrix.from_columns([self.row(i) for i in range(self.rows)], nrows=self.cols)


def _rref_rows(rows: list[list[GaussianRational]], ncols: int):
    """In-place Gauss-Jordan on a list of rows; returns pivot columns."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv_inv = rows[r][c].inverse()
        rows[r] = [e * piv_inv if e else e for e in rows[r]]
        pivot_row = rows[r]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b if b else a for a, b in zip(rows[i], pivot_row)]
        pivots.append(c)
        r += 1
    return pivots


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form and the (increasing) pivot columns."""
    rows = M.to_rows()
    pivots = _rref_rows(rows, M.cols)
    return Matrix(M.rows, M.cols, [e for r in rows for e in r]), pivots


def row_reducer(M: Matrix) -> Matrix | None:
    """Invertible ``E`` with ``E @ M == [I; 0]``, or ``None`` if the columns are dependent.

    Membership of ``v`` in the column space is then ``(E v)[cols:] == 0``
    with coordinates ``(E v)[:cols]``.
    """
    n, d = M.rows, M.cols
    rows = [list(M.row(i)) + [ONE if j == i else ZERO for j in range(n)] for i in range(n)]
    pivots = _rref_rows(rows, d + n)
    if pivots[:d] != list(range(d)):
        return None
    return Matrix(n, n, [e for r in rows for e in r[d:]])


def rank(M: Matrix) -> int:
    return len(rref(M)[1])


def solve(A: Matrix, b: Sequence) -> Vector | None:
    """One exact solution of ``A x = b``, or ``None`` if inconsistent.

    Free variables are set to zero.
    """
    b = tuple(as_scalar(x) for x in b)
    if len(b) != A.rows:
        raise DimensionMismatchError(f"right-hand side has length {len(b)}, expected {A.rows}")
    rows = [list(A.row(i)) + [b[i]] for i in range(A.rows)]
    pivots = _rref_rows(rows, A.cols + 1)
    if pivots and pivots[-1] == A.cols:
        return None
    x = [ZERO] * A.cols
    for r, c in enumerate(pivots):
        x[c] = rows[r][A.cols]
    return tuple(x)


def kernel_basis(M: Matrix) -> list[Vector]:
    """Basis of the null space, one vector per free column."""
    R, pivots = rref(M)
    pivot_set = set(pivots)
    basis = []
    for free in range(M.cols):
        if free in pivot_set:
            continue
        v = [ZERO] * M.cols
        v[free] = ONE
        for r, c in enumerate(pivots):
            v[c] = -R[r, free]
        basis.append(tuple(v))
    return basis


def in_span(v: Sequence, basis: Sequence[Sequence]) -> tuple[bool, Vector | None]:
    """Membership test; returns ``(True, coordinates)`` or ``(False, None)``."""
    v = tuple(as_scalar(x) for x in v)
    if not basis:
        return (not any(v), () if not any(v) else None)
    A = Matrix.from_columns(basis)
    if A.rows != len(v):
        raise DimensionMismatchError("vector and basis have different lengths")
    coords = solve(A, v)
    return (coords is not None, coords)


def poly_of_matrix(p: Poly, M: Matrix) -> Matrix:
    """Evaluate ``p(M)`` by Horner's rule."""
    if not M.is_square():
        raise DimensionMismatchError("matrix must be square")
    n = M.rows
    acc = Matrix.zeros(n, n)
    for c in reversed(p.coeffs):
        entries = list((acc @ M).entries)
        for i in range(n):
            entries[i * n + i] = entries[i * n + i] + c
        acc = Matrix(n, n, entries)
    return acc


def _krylov_annihilator(M: Matrix, v: Vector) -> Poly:
    """Monic polynomial of least degree with ``q(M) v == 0``."""
    if not any(v):
        return Poly.constant(ONE)
    krylov = [v]
    while True:
        w = M.apply(krylov[-1])
        ok, coords = in_span(w, krylov)
        if ok:
            # w = sum(c_j M^j v)  =>  x^k - sum(c_j x^j)
            return Poly([-c for c in coords] + [ONE])
        krylov.append(w)


def minimal_polynomial_matrix(M: Matrix) -> Poly:
    """Monic minimal polynomial, as the lcm of per-basis-vector annihilators."""
    if not M.is_square():
        raise DimensionMismatchError("minimal polynomial needs a square matrix")
    result = Poly.constant(ONE)
    for j in range(M.cols):
        e = tuple(ONE if i == j else ZERO for i in range(M.rows))
        result = lcm(result, _krylov_annihilator(M, e))
    return result
