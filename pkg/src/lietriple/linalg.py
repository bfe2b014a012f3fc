"""Exact dense linear algebra over the rationals.

All arithmetic uses ``fractions.Fraction``; nothing here ever rounds.
Subspaces carry a canonical reduced-row-echelon basis, so two equal
subspaces compare equal grid-by-grid and test output is reproducible.

``kernel_of_rows`` is the workhorse for the large, very redundant
constraint systems produced elsewhere in the package.  It filters
candidate pivot rows with Gaussian elimination modulo a fixed prime
(vectorized through numpy), then recomputes everything exactly and
checks every filtered-out row against the exact kernel, so the final
answer is exact no matter how the modular pass behaved.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DimensionMismatch, Inconsistent

Rat = Fraction

Vector = tuple[Fraction, ...]


def rat(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def vec(xs: Iterable) -> Vector:
    return tuple(rat(x) for x in xs)


def zero_vec(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vec(n: int, i: int) -> Vector:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def vec_add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(c, v: Sequence[Fraction]) -> Vector:
    c = rat(c)
    return tuple(c * a for a in v)


def vec_dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v, strict=True)), Fraction(0))


def is_zero_vec(v: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in v)


class Matrix:
    """Immutable dense matrix of Fractions, row-major."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows_data: Iterable[Iterable], cols: int | None = None):
        data = tuple(vec(row) for row in rows_data)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise DimensionMismatch("ragged rows")
            if cols is not None and cols != width:
                raise DimensionMismatch("explicit cols disagrees with row width")
            cols = width
        elif cols is None:
            raise DimensionMismatch("empty matrix needs an explicit column count")
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", cols)

    def __setattr__(self, *_):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([unit_vec(n, i) for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls([zero_vec(cols) for _ in range(rows)], cols=cols)

    @classmethod
    def from_cols(cls, cols_data: Sequence[Sequence]) -> "Matrix":
        cols = [vec(c) for c in cols_data]
        if not cols:
            raise DimensionMismatch("from_cols needs at least one column")
        n = len(cols[0])
        if any(len(c) != n for c in cols):
            raise DimensionMismatch("ragged columns")
        return cls([tuple(c[i] for c in cols) for i in range(n)], cols=len(cols))

    def col(self, j: int) -> Vector:
        return tuple(row[j] for row in self.data)

    def row(self, i: int) -> Vector:
        return self.data[i]

    def __getitem__(self, rc: tuple[int, int]) -> Fraction:
        r, c = rc
        return self.data[r][c]

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self.data), cols=self.rows) if self.data else Matrix([], cols=self.rows)

    def matvec(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.cols:
            raise DimensionMismatch(f"matvec: {self.cols} cols vs vector of length {len(v)}")
        return tuple(vec_dot(row, v) for row in self.data)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"matmul: {self.cols} != {other.rows}")
        ot = tuple(zip(*other.data)) if other.data else ()
        return Matrix(
            [tuple(vec_dot(row, col) for col in ot) for row in self.data],
            cols=other.cols,
        )

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(
            [vec_add(r, s) for r, s in zip(self.data, other.data)], cols=self.cols
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(
            [vec_sub(r, s) for r, s in zip(self.data, other.data)], cols=self.cols
        )

    def __neg__(self) -> "Matrix":
        return Matrix([vec_scale(-1, r) for r in self.data], cols=self.cols)

    def scale(self, c) -> "Matrix":
        return Matrix([vec_scale(c, r) for r in self.data], cols=self.cols)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise DimensionMismatch("vstack: column counts differ")
        return Matrix(self.data + other.data, cols=self.cols)

    def is_zero(self) -> bool:
        return all(is_zero_vec(r) for r in self.data)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self) -> int:
        return hash((self.cols, self.data))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"Matrix({self.rows}x{self.cols}: {body})"

    def _same_shape(self, other: "Matrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatch("shape mismatch")


def _rref_rows(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """In-place Gauss-Jordan; returns (rows, pivot column list)."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rref(m: Matrix) -> Matrix:
    """Unique reduced row-echelon form; same shape, row space preserved."""
    rows, _ = _rref_rows([list(r) for r in m.data])
    return Matrix(rows, cols=m.cols)


def _kernel_from_rref(rows: list[list[Fraction]], pivots: list[int], ncols: int) -> list[Vector]:
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -rows[r][f]
        basis.append(tuple(v))
    return basis


def kernel(m: Matrix) -> Subspace:
    """{v : m v = 0} with its canonical echelon basis."""
    rows, pivots = _rref_rows([list(r) for r in m.data])
    return Subspace(m.cols, _kernel_from_rref(rows, pivots, m.cols))


def solve(m: Matrix, rhs: Sequence[Fraction]) -> tuple[Vector, "Subspace"]:
    """Solve m x = rhs exactly.

    Returns the echelon particular solution (free variables zero) and the
    homogeneous kernel; raises Inconsistent when no solution exists.
    """
    if len(rhs) != m.rows:
        raise DimensionMismatch(f"rhs length {len(rhs)} vs {m.rows} rows")
    aug = [list(row) + [rat(b)] for row, b in zip(m.data, rhs)]
    if not aug:
        return zero_vec(m.cols), Subspace.full(m.cols)
    rows, pivots = _rref_rows(aug)
    if pivots and pivots[-1] == m.cols:
        raise Inconsistent("no solution")
    particular = [Fraction(0)] * m.cols
    for r, p in enumerate(pivots):
        particular[p] = rows[r][m.cols]
    hom = [row[: m.cols] for row in rows]
    return tuple(particular), Subspace(m.cols, _kernel_from_rref(hom, pivots, m.cols))


def try_solve(m: Matrix, rhs: Sequence[Fraction]):
    """Like solve, but None instead of raising on inconsistency."""
    try:
        return solve(m, rhs)
    except Inconsistent:
        return None


class Subspace:
    """A subspace of Q^n with a canonical reduced-echelon basis.

    The constructor canonicalizes, so equal subspaces have identical
    basis grids and ``==`` is grid equality.
    """

    __slots__ = ("ambient", "basis", "pivots")

    def __init__(self, ambient: int, vectors: Iterable[Sequence] = ()):
        rows = [list(vec(v)) for v in vectors]
        for r in rows:
            if len(r) != ambient:
                raise DimensionMismatch(f"vector of length {len(r)} in ambient {ambient}")
        reduced, pivots = _rref_rows(rows)
        basis = tuple(tuple(reduced[i]) for i in range(len(pivots)))
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "pivots", tuple(pivots))

    def __setattr__(self, *_):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient)

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(ambient, [unit_vec(ambient, i) for i in range(ambient)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.ambient

    def reduce(self, v: Sequence[Fraction]) -> Vector:
        """Residual of v after elimination against the echelon basis."""
        w = list(vec(v))
        if len(w) != self.ambient:
            raise DimensionMismatch("vector/ambient mismatch")
        for row, p in zip(self.basis, self.pivots):
            if w[p] != 0:
                f = w[p]
                w = [x - f * y for x, y in zip(w, row)]
        return tuple(w)

    def contains_vector(self, v: Sequence[Fraction]) -> bool:
        return is_zero_vec(self.reduce(v))

    def coefficients_of(self, v: Sequence[Fraction]) -> Vector | None:
        """Coefficients of v in the canonical basis, or None if outside."""
        w = list(vec(v))
        coeffs = []
        for row, p in zip(self.basis, self.pivots):
            f = w[p]
            coeffs.append(f)
            if f != 0:
                w = [x - f * y for x, y in zip(w, row)]
        return tuple(coeffs) if is_zero_vec(w) else None

    def contains(self, other: "Subspace") -> bool:
        self._same_ambient(other)
        return all(self.contains_vector(v) for v in other.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        self._same_ambient(other)
        return Subspace(self.ambient, self.basis + other.basis)

    def annihilator(self) -> "Subspace":
        """{f : f . u = 0 for all u here} under the coordinate pairing."""
        if not self.basis:
            return Subspace.full(self.ambient)
        return kernel(Matrix(self.basis, cols=self.ambient))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._same_ambient(other)
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.ambient)
        if self.is_full():
            return other
        if other.is_full():
            return self
        dual = self.annihilator().basis + other.annihilator().basis
        return kernel(Matrix(dual, cols=self.ambient))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.ambient, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of Q^{self.ambient})"

    def _same_ambient(self, other: "Subspace") -> None:
        if self.ambient != other.ambient:
            raise DimensionMismatch(f"ambient {self.ambient} vs {other.ambient}")


# ---------------------------------------------------------------------------
# Large sparse constraint systems
# ---------------------------------------------------------------------------

# Mersenne prime small enough that (p-1)^2 still fits in int64.
_FILTER_PRIME = (1 << 31) - 1

SparseRow = tuple[tuple[int, int], ...]  # ((col, integer coeff), ...) sorted


def _normalize_sparse(items: Iterable[tuple[int, Fraction]]) -> SparseRow:
    """Primitive integer form: cleared denominators, gcd 1, leading > 0."""
    entries = sorted((c, x) for c, x in items if x != 0)
    if not entries:
        return ()
    mult = lcm(*(x.denominator for _, x in entries))
    ints = [(c, int(x * mult)) for c, x in entries]
    g = gcd(*(abs(v) for _, v in ints))
    if ints[0][1] < 0:
        g = -g
    return tuple((c, v // g) for c, v in ints)


class _IntEchelon:
    """Exact row echelon over Z (representing a Q row space)."""

    def __init__(self, ambient: int):
        self.ambient = ambient
        self.rows: list[list[int]] = []
        self.pivot_of_row: list[int] = []
        self.row_of_pivot: dict[int, int] = {}

    def insert(self, sparse: SparseRow) -> bool:
        row = [0] * self.ambient
        for c, v in sparse:
            row[c] = v
        lead = next((j for j in range(self.ambient) if row[j]), None)
        while lead is not None and lead in self.row_of_pivot:
            piv = self.rows[self.row_of_pivot[lead]]
            a, b = piv[lead], row[lead]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            row = [fa * x - fb * y for x, y in zip(row, piv)]
            lead = next((j for j in range(lead + 1, self.ambient) if row[j]), None)
        if lead is None:
            return False
        g = gcd(*(abs(v) for v in row if v))
        if row[lead] < 0:
            g = -g
        row = [v // g for v in row]
        self.row_of_pivot[lead] = len(self.rows)
        self.rows.append(row)
        self.pivot_of_row.append(lead)
        return True

    def rref_fraction_rows(self) -> tuple[list[list[Fraction]], list[int]]:
        order = sorted(range(len(self.rows)), key=lambda i: self.pivot_of_row[i])
        rows = [[Fraction(v) for v in self.rows[i]] for i in order]
        pivots = [self.pivot_of_row[i] for i in order]
        for r in range(len(rows) - 1, -1, -1):
            p = pivots[r]
            inv = 1 / rows[r][p]
            rows[r] = [x * inv for x in rows[r]]
            for i in range(r):
                if rows[i][p] != 0:
                    f = rows[i][p]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        return rows, pivots


def _modular_candidate_indices(int_rows: list[SparseRow], ambient: int) -> list[int]:
    """Indices of rows that look pivot-worthy modulo the filter prime."""
    p = _FILTER_PRIME
    k = len(int_rows)
    a = np.zeros((k, ambient), dtype=np.int64)
    for i, row in enumerate(int_rows):
        for c, v in row:
            a[i, c] = v % p
    idx = np.arange(k)
    r = 0
    for c in range(ambient):
        if r == k:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        lead = r + nz[0]
        if lead != r:
            a[[r, lead]] = a[[lead, r]]
            idx[[r, lead]] = idx[[lead, r]]
        piv = int(a[r, c])
        rest = a[r + 1:]
        mask = rest[:, c] != 0
        if mask.any():
            rest[mask] = (rest[mask] * piv - np.outer(rest[mask, c], a[r])) % p
        r += 1
    return sorted(int(i) for i in idx[:r])


def _sparse_dot_kernel(row: SparseRow, kvec: Sequence[Fraction]) -> Fraction:
    return sum((kvec[c] * v for c, v in row), Fraction(0))


def kernel_of_rows(ambient: int, rows: Iterable[Mapping[int, Fraction] | Sequence[Fraction]]) -> Subspace:
    """Exact kernel of a large stack of constraint rows.

    Rows may be sparse mappings {col: value} or dense sequences; zero and
    duplicate rows are dropped up front.  The modular pass only proposes
    pivot rows; the closing check that every remaining row annihilates the
    exact kernel is what makes the result exact, so a bad prime can only
    cost time, never correctness.
    """
    seen: set[SparseRow] = set()
    unique: list[SparseRow] = []
    for row in rows:
        items = row.items() if isinstance(row, Mapping) else enumerate(row)
        sparse = _normalize_sparse((c, rat(x)) for c, x in items)
        if sparse and sparse not in seen:
            seen.add(sparse)
            unique.append(sparse)
    if not unique:
        return Subspace.full(ambient)

    candidates = set(_modular_candidate_indices(unique, ambient))
    ech = _IntEchelon(ambient)
    for i in sorted(candidates):
        ech.insert(unique[i])

    def current_kernel() -> list[Vector]:
        rr, piv = ech.rref_fraction_rows()
        return _kernel_from_rref(rr, piv, ambient)

    kbasis = current_kernel()
    for i, row in enumerate(unique):
        if i in candidates:
            continue
        if any(_sparse_dot_kernel(row, kv) != 0 for kv in kbasis):
            ech.insert(row)
            kbasis = current_kernel()
    return Subspace(ambient, kbasis)
