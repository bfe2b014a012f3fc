"""Finite-dimensional algebras presented by structure constants.

An algebra is a multiplication tensor ``c[i][j][k]`` over the rationals,
meaning ``e_i * e_j = sum_k c[i][j][k] e_k``.  Associativity is checked
exhaustively at construction time, so everything downstream may assume
it.  Non-unital algebras are first-class: operations that genuinely need
a unit raise ``NotUnital`` instead of guessing one.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import AlgebraMismatch, DimensionMismatch, NotAssociative, NotUnital
from .linalg import (
    Matrix,
    Subspace,
    is_zero_vec,
    kernel,
    rat,
    try_solve,
    unit_vec,
    vec,
    vec_add,
    vec_scale,
    vec_sub,
    zero_vec,
)


class StructureConstants:
    """An algebra given by its basis-indexed multiplication tensor."""

    __slots__ = (
        "dim",
        "table",
        "labels",
        "content_hash",
        "_sparse",
        "_left_mats",
        "_right_mats",
        "_unit_coords",
        "_center",
    )

    def __init__(self, table, labels: Sequence[str] | None = None):
        tbl = tuple(tuple(vec(row) for row in plane) for plane in table)
        n = len(tbl)
        if n < 1:
            raise DimensionMismatch("algebra dimension must be at least 1")
        if any(len(plane) != n or any(len(row) != n for row in plane) for plane in tbl):
            raise DimensionMismatch("structure tensor must be dim x dim x dim")
        if labels is None:
            labels = tuple(f"e{i}" for i in range(n))
        else:
            labels = tuple(str(s) for s in labels)
            if len(labels) != n:
                raise DimensionMismatch("label count must equal dim")
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "table", tbl)
        object.__setattr__(self, "labels", labels)
        sparse = tuple(
            tuple(
                tuple((k, x) for k, x in enumerate(tbl[i][j]) if x != 0)
                for j in range(n)
            )
            for i in range(n)
        )
        object.__setattr__(self, "_sparse", sparse)
        self._check_associativity()
        payload = json.dumps(
            {
                "dim": n,
                "labels": list(labels),
                "table": [[[str(x) for x in row] for row in plane] for plane in tbl],
            },
            sort_keys=True,
            separators=(",", ":"),
        )
        object.__setattr__(
            self, "content_hash", hashlib.sha256(payload.encode()).hexdigest()
        )
        object.__setattr__(self, "_left_mats", {})
        object.__setattr__(self, "_right_mats", {})
        object.__setattr__(self, "_unit_coords", False)  # not computed yet
        object.__setattr__(self, "_center", None)

    def __setattr__(self, *_):
        raise AttributeError("StructureConstants is immutable")

    def _check_associativity(self) -> None:
        n = self.dim
        sp = self._sparse
        for i in range(n):
            for j in range(n):
                vij = sp[i][j]
                for k in range(n):
                    lhs: dict[int, Fraction] = {}
                    for m, c in vij:
                        for l, d in sp[m][k]:
                            lhs[l] = lhs.get(l, Fraction(0)) + c * d
                    for m, c in sp[j][k]:
                        for l, d in sp[i][m]:
                            lhs[l] = lhs.get(l, Fraction(0)) - c * d
                    if any(x != 0 for x in lhs.values()):
                        raise NotAssociative(i, j, k)

    # -- elements ----------------------------------------------------------

    def element(self, coords: Iterable) -> "AlgebraElement":
        return AlgebraElement(self, coords)

    def basis_element(self, i: int) -> "AlgebraElement":
        return AlgebraElement(self, unit_vec(self.dim, i))

    def basis(self) -> list["AlgebraElement"]:
        return [self.basis_element(i) for i in range(self.dim)]

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, zero_vec(self.dim))

    def mul_coords(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> tuple:
        out = [Fraction(0)] * self.dim
        sp = self._sparse
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                f = xi * yj
                for k, c in sp[i][j]:
                    out[k] += f * c
        return tuple(out)

    # -- multiplication operators -----------------------------------------

    def left_mult_basis(self, i: int) -> Matrix:
        """Matrix of x -> e_i * x."""
        m = self._left_mats.get(i)
        if m is None:
            n = self.dim
            m = Matrix([[self.table[i][j][l] for j in range(n)] for l in range(n)])
            self._left_mats[i] = m
        return m

    def right_mult_basis(self, i: int) -> Matrix:
        """Matrix of x -> x * e_i."""
        m = self._right_mats.get(i)
        if m is None:
            n = self.dim
            m = Matrix([[self.table[j][i][l] for j in range(n)] for l in range(n)])
            self._right_mats[i] = m
        return m

    def left_mult_of(self, coords: Sequence[Fraction]) -> Matrix:
        n = self.dim
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i, xi in enumerate(coords):
            if xi == 0:
                continue
            mat = self.left_mult_basis(i)
            for l in range(n):
                rows[l] = [a + xi * b for a, b in zip(rows[l], mat.data[l])]
        return Matrix(rows, cols=n)

    def right_mult_of(self, coords: Sequence[Fraction]) -> Matrix:
        n = self.dim
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i, xi in enumerate(coords):
            if xi == 0:
                continue
            mat = self.right_mult_basis(i)
            for l in range(n):
                rows[l] = [a + xi * b for a, b in zip(rows[l], mat.data[l])]
        return Matrix(rows, cols=n)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, StructureConstants)
            and self.content_hash == other.content_hash
        )

    def __hash__(self) -> int:
        return hash(self.content_hash)

    def __repr__(self) -> str:
        return f"StructureConstants(dim={self.dim})"


def _same_algebra(a: StructureConstants, b: StructureConstants) -> None:
    if a is not b and a.content_hash != b.content_hash:
        raise AlgebraMismatch("operands live in different algebras")


class AlgebraElement:
    """An element of a fixed algebra, stored by basis coordinates."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: StructureConstants, coords: Iterable):
        cs = vec(coords)
        if len(cs) != algebra.dim:
            raise DimensionMismatch(
                f"{len(cs)} coordinates for a dim-{algebra.dim} algebra"
            )
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "coords", cs)

    def __setattr__(self, *_):
        raise AttributeError("AlgebraElement is immutable")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        _same_algebra(self.algebra, other.algebra)
        return AlgebraElement(self.algebra, vec_add(self.coords, other.coords))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        _same_algebra(self.algebra, other.algebra)
        return AlgebraElement(self.algebra, vec_sub(self.coords, other.coords))

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, vec_scale(-1, self.coords))

    def __rmul__(self, scalar) -> "AlgebraElement":
        return AlgebraElement(self.algebra, vec_scale(rat(scalar), self.coords))

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        _same_algebra(self.algebra, other.algebra)
        return AlgebraElement(self.algebra, self.algebra.mul_coords(self.coords, other.coords))

    def is_zero(self) -> bool:
        return is_zero_vec(self.coords)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlgebraElement)
            and self.algebra == other.algebra
            and self.coords == other.coords
        )

    def __hash__(self) -> int:
        return hash((self.algebra.content_hash, self.coords))

    def __repr__(self) -> str:
        labels = self.algebra.labels
        terms = [
            (f"{x}*{labels[i]}" if x != 1 else labels[i])
            for i, x in enumerate(self.coords)
            if x != 0
        ]
        return " + ".join(terms) if terms else "0"


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x * y


def commutator(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x * y - y * x


def jordan_product(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x * y + y * x


def double_commutator(x: AlgebraElement, y: AlgebraElement, z: AlgebraElement) -> AlgebraElement:
    return commutator(commutator(x, y), z)


def find_unit(alg: StructureConstants) -> AlgebraElement | None:
    """Two-sided unit, or None.  Solves u*e_j = e_j = e_j*u for all j."""
    cached = alg._unit_coords
    if cached is not False:
        return None if cached is None else AlgebraElement(alg, cached)
    n = alg.dim
    rows: list[tuple] = []
    rhs: list[Fraction] = []
    for j in range(n):
        for mat in (alg.right_mult_basis(j), alg.left_mult_basis(j)):
            rows.extend(mat.data)
            rhs.extend(unit_vec(n, j))
    res = try_solve(Matrix(rows, cols=n), rhs)
    coords = None if res is None else res[0]
    object.__setattr__(alg, "_unit_coords", coords)
    return None if coords is None else AlgebraElement(alg, coords)


def require_unit(alg: StructureConstants) -> AlgebraElement:
    u = find_unit(alg)
    if u is None:
        raise NotUnital("algebra has no two-sided unit")
    return u


def center(alg: StructureConstants) -> Subspace:
    """Kernel of z -> (z e_i - e_i z) stacked over every basis index."""
    if alg._center is not None:
        return alg._center
    rows: list[tuple] = []
    for i in range(alg.dim):
        diff = alg.right_mult_basis(i) - alg.left_mult_basis(i)
        rows.extend(diff.data)
    z = kernel(Matrix(rows, cols=alg.dim))
    object.__setattr__(alg, "_center", z)
    return z


def commutant(alg: StructureConstants, s: Subspace) -> Subspace:
    """{a : a x = x a for every x in s}."""
    if s.ambient != alg.dim:
        raise DimensionMismatch("subspace does not live in the algebra")
    if s.is_zero():
        return Subspace.full(alg.dim)
    rows: list[tuple] = []
    for v in s.basis:
        diff = alg.right_mult_of(v) - alg.left_mult_of(v)
        rows.extend(diff.data)
    return kernel(Matrix(rows, cols=alg.dim))


def double_commutator_span(alg: StructureConstants) -> Subspace:
    """Span of [[e_i, e_j], e_k] over all basis triples."""
    n = alg.dim
    vectors: set[tuple] = set()
    for i in range(n):
        for j in range(i + 1, n):  # [[e_i,e_j],e_k] = -[[e_j,e_i],e_k]
            eij = alg.mul_coords(unit_vec(n, i), unit_vec(n, j))
            eji = alg.mul_coords(unit_vec(n, j), unit_vec(n, i))
            bracket = vec_sub(eij, eji)
            if is_zero_vec(bracket):
                continue
            for k in range(n):
                ek = unit_vec(n, k)
                w = vec_sub(alg.mul_coords(bracket, ek), alg.mul_coords(ek, bracket))
                if not is_zero_vec(w):
                    vectors.add(w)
    return Subspace(n, vectors)


def largest_central_ideal(alg: StructureConstants) -> Subspace:
    """Largest subspace of the center stable under all basis multiplications.

    Iterates V <- V /\\ {v : e_i v in V and v e_i in V for all i} from
    V = Z(alg); the dimension strictly decreases until the fixed point.
    """
    v = center(alg)
    while not v.is_zero():
        ann = v.annihilator()
        rows: list[tuple] = []
        for i in range(alg.dim):
            for action in (alg.left_mult_basis(i), alg.right_mult_basis(i)):
                for f in ann.basis:
                    rows.append(tuple(sum(f[l] * action.data[l][j] for l in range(alg.dim)) for j in range(alg.dim)))
        if not rows:
            break
        stable = kernel(Matrix(rows, cols=alg.dim))
        nxt = v.intersect(stable)
        if nxt == v:
            break
        v = nxt
    return v


class LinearOperator:
    """A linear map on a fixed algebra; column j is the image of e_j."""

    __slots__ = ("algebra", "matrix")

    def __init__(self, algebra: StructureConstants, matrix: Matrix):
        if matrix.rows != algebra.dim or matrix.cols != algebra.dim:
            raise DimensionMismatch("operator matrix must be dim x dim")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, *_):
        raise AttributeError("LinearOperator is immutable")

    @classmethod
    def identity(cls, algebra: StructureConstants) -> "LinearOperator":
        return cls(algebra, Matrix.identity(algebra.dim))

    @classmethod
    def zero(cls, algebra: StructureConstants) -> "LinearOperator":
        return cls(algebra, Matrix.zeros(algebra.dim, algebra.dim))

    @classmethod
    def from_images(cls, algebra: StructureConstants, images: Sequence[AlgebraElement]) -> "LinearOperator":
        if len(images) != algebra.dim:
            raise DimensionMismatch("need one image per basis vector")
        for x in images:
            _same_algebra(algebra, x.algebra)
        return cls(algebra, Matrix.from_cols([x.coords for x in images]))

    @classmethod
    def from_flat(cls, algebra: StructureConstants, flat: Sequence[Fraction]) -> "LinearOperator":
        """Inverse of flatten: column-major coordinates over the basis."""
        n = algebra.dim
        if len(flat) != n * n:
            raise DimensionMismatch("flat vector must have dim^2 entries")
        return cls(algebra, Matrix.from_cols([flat[c * n : (c + 1) * n] for c in range(n)]))

    def flatten(self) -> tuple:
        """Column-major vectorization (the fixed unknown ordering)."""
        return tuple(
            self.matrix.data[r][c]
            for c in range(self.algebra.dim)
            for r in range(self.algebra.dim)
        )

    def apply(self, x: AlgebraElement) -> AlgebraElement:
        _same_algebra(self.algebra, x.algebra)
        return AlgebraElement(self.algebra, self.matrix.matvec(x.coords))

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        return self.apply(x)

    def compose(self, other: "LinearOperator") -> "LinearOperator":
        _same_algebra(self.algebra, other.algebra)
        return LinearOperator(self.algebra, self.matrix @ other.matrix)

    def __add__(self, other: "LinearOperator") -> "LinearOperator":
        _same_algebra(self.algebra, other.algebra)
        return LinearOperator(self.algebra, self.matrix + other.matrix)

    def __sub__(self, other: "LinearOperator") -> "LinearOperator":
        _same_algebra(self.algebra, other.algebra)
        return LinearOperator(self.algebra, self.matrix - other.matrix)

    def __rmul__(self, scalar) -> "LinearOperator":
        return LinearOperator(self.algebra, self.matrix.scale(scalar))

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearOperator)
            and self.algebra == other.algebra
            and self.matrix == other.matrix
        )

    def __hash__(self) -> int:
        return hash((self.algebra.content_hash, self.matrix))

    def __repr__(self) -> str:
        return f"LinearOperator(on dim {self.algebra.dim})"


def multiplication_operator(alg: StructureConstants, coords: Sequence[Fraction]) -> LinearOperator:
    """x -> c * x as an operator (left multiplication by c)."""
    return LinearOperator(alg, alg.left_mult_of(coords))
