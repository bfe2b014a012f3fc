"""Generalized matrix algebras assembled from Morita contexts.

A context (A, B, M, N, zeta, psi) assembles into the block algebra
[[A, M], [N, B]] on the fixed basis ordering [A-block, M-block,
N-block, B-block].  All bimodule and pairing axioms are validated in
one stroke: the assembled multiplication table must be associative,
and a failure reports the offending basis triple.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import (
    AlgebraElement,
    StructureConstants,
    center,
    find_unit,
    require_unit,
)
from .errors import (
    AnnihilatorConditionsFail,
    DimensionMismatch,
    InvalidBlockStructure,
    NonUniqueEta,
    NotIdempotent,
    OffDiagonalCenter,
    TrivialIdempotent,
)
from .linalg import (
    Matrix,
    Subspace,
    is_zero_vec,
    kernel,
    rat,
    rref,
    solve,
    unit_vec,
    vec,
)


class Bimodule:
    """A bimodule presented by left/right action tensors.

    ``left[i][p][q]``: basis vector i of the left-acting algebra sends
    module basis p to sum_q left[i][p][q] m_q; ``right[p][j][q]`` is the
    mirror for the right-acting algebra.  Module axioms are not checked
    here; the assembled algebra's associativity check covers them.
    """

    __slots__ = ("dim", "left_dim", "right_dim", "left", "right")

    def __init__(self, dim: int, left_dim: int, right_dim: int, left, right):
        left = tuple(tuple(vec(row) for row in plane) for plane in left)
        right = tuple(tuple(vec(row) for row in plane) for plane in right)
        if len(left) != left_dim or any(
            len(plane) != dim or any(len(row) != dim for row in plane) for plane in left
        ):
            raise DimensionMismatch("left action tensor has wrong shape")
        if len(right) != dim or any(
            len(plane) != right_dim or any(len(row) != dim for row in plane)
            for plane in right
        ):
            raise DimensionMismatch("right action tensor has wrong shape")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "left_dim", left_dim)
        object.__setattr__(self, "right_dim", right_dim)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    def __setattr__(self, *_):
        raise AttributeError("Bimodule is immutable")

    @classmethod
    def zero(cls, left_dim: int, right_dim: int) -> "Bimodule":
        return cls(0, left_dim, right_dim, ((),) * left_dim, ())

    @classmethod
    def regular(cls, alg: StructureConstants) -> "Bimodule":
        """The algebra acting on itself by multiplication on both sides."""
        n = alg.dim
        left = alg.table
        right = tuple(
            tuple(alg.table[p][j] for j in range(n)) for p in range(n)
        )
        return cls(n, n, n, left, right)

    def act_left(self, a: Sequence[Fraction], m: Sequence[Fraction]) -> tuple:
        out = [Fraction(0)] * self.dim
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            plane = self.left[i]
            for p, mp in enumerate(m):
                if mp == 0:
                    continue
                f = ai * mp
                row = plane[p]
                for q in range(self.dim):
                    if row[q] != 0:
                        out[q] += f * row[q]
        return tuple(out)

    def act_right(self, m: Sequence[Fraction], b: Sequence[Fraction]) -> tuple:
        out = [Fraction(0)] * self.dim
        for p, mp in enumerate(m):
            if mp == 0:
                continue
            plane = self.right[p]
            for j, bj in enumerate(b):
                if bj == 0:
                    continue
                f = mp * bj
                row = plane[j]
                for q in range(self.dim):
                    if row[q] != 0:
                        out[q] += f * row[q]
        return tuple(out)


class MoritaContext:
    """Two algebras, two bimodules and the two pairings between them."""

    __slots__ = ("A", "B", "M", "N", "zeta", "psi")

    def __init__(self, A: StructureConstants, B: StructureConstants, M: Bimodule, N: Bimodule, zeta, psi):
        if M.left_dim != A.dim or M.right_dim != B.dim:
            raise DimensionMismatch("M must be an (A, B)-bimodule")
        if N.left_dim != B.dim or N.right_dim != A.dim:
            raise DimensionMismatch("N must be a (B, A)-bimodule")
        zeta = tuple(tuple(vec(row) for row in plane) for plane in zeta)
        psi = tuple(tuple(vec(row) for row in plane) for plane in psi)
        if len(zeta) != M.dim or any(
            len(plane) != N.dim or any(len(row) != A.dim for row in plane)
            for plane in zeta
        ):
            raise DimensionMismatch("zeta tensor must be M.dim x N.dim x A.dim")
        if len(psi) != N.dim or any(
            len(plane) != M.dim or any(len(row) != B.dim for row in plane)
            for plane in psi
        ):
            raise DimensionMismatch("psi tensor must be N.dim x M.dim x B.dim")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "zeta", zeta)
        object.__setattr__(self, "psi", psi)

    def __setattr__(self, *_):
        raise AttributeError("MoritaContext is immutable")

    def pair_mn(self, m: Sequence[Fraction], n: Sequence[Fraction]) -> tuple:
        out = [Fraction(0)] * self.A.dim
        for p, mp in enumerate(m):
            if mp == 0:
                continue
            for q, nq in enumerate(n):
                if nq == 0:
                    continue
                f = mp * nq
                row = self.zeta[p][q]
                for i in range(self.A.dim):
                    if row[i] != 0:
                        out[i] += f * row[i]
        return tuple(out)

    def pair_nm(self, n: Sequence[Fraction], m: Sequence[Fraction]) -> tuple:
        out = [Fraction(0)] * self.B.dim
        for q, nq in enumerate(n):
            if nq == 0:
                continue
            for p, mp in enumerate(m):
                if mp == 0:
                    continue
                f = nq * mp
                row = self.psi[q][p]
                for j in range(self.B.dim):
                    if row[j] != 0:
                        out[j] += f * row[j]
        return tuple(out)


class GMA:
    """An assembled generalized matrix algebra with its block geometry."""

    __slots__ = ("algebra", "context", "dims", "offsets")

    def __init__(self, algebra: StructureConstants, context: MoritaContext):
        dims = (context.A.dim, context.M.dim, context.N.dim, context.B.dim)
        if algebra.dim != sum(dims):
            raise DimensionMismatch("algebra dimension does not match block dims")
        offsets = (0, dims[0], dims[0] + dims[1], dims[0] + dims[1] + dims[2])
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "context", context)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "offsets", offsets)

    def __setattr__(self, *_):
        raise AttributeError("GMA is immutable")

    @property
    def dim_a(self) -> int:
        return self.dims[0]

    @property
    def dim_m(self) -> int:
        return self.dims[1]

    @property
    def dim_n(self) -> int:
        return self.dims[2]

    @property
    def dim_b(self) -> int:
        return self.dims[3]

    def block_range(self, block: str) -> range:
        i = "AMNB".index(block)
        start = self.offsets[i]
        return range(start, start + self.dims[i])

    def project(self, block: str, coords: Sequence[Fraction]) -> tuple:
        r = self.block_range(block)
        return tuple(coords[i] for i in r)

    def inject(self, block: str, part: Sequence[Fraction]) -> tuple:
        r = self.block_range(block)
        if len(part) != len(r):
            raise DimensionMismatch(f"wrong length for block {block}")
        out = [Fraction(0)] * self.algebra.dim
        for i, x in zip(r, part):
            out[i] = rat(x)
        return tuple(out)

    def element_from_corners(self, a=None, m=None, n=None, b=None) -> AlgebraElement:
        out = [Fraction(0)] * self.algebra.dim
        for block, part in (("A", a), ("M", m), ("N", n), ("B", b)):
            if part is None:
                continue
            for i, x in zip(self.block_range(block), part):
                out[i] = rat(x)
        return AlgebraElement(self.algebra, out)

    def standard_idempotent(self) -> AlgebraElement:
        one_a = require_unit(self.context.A)
        return self.element_from_corners(a=one_a.coords)

    def unit(self) -> AlgebraElement | None:
        return find_unit(self.algebra)


def _empty_table(n: int) -> list:
    return [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]


def assemble(ctx: MoritaContext) -> GMA:
    """Build the block algebra of a Morita context.

    Raises NotAssociative (with the failing basis triple) when the
    context violates any bimodule or pairing axiom.
    """
    da, dm, dn, db = ctx.A.dim, ctx.M.dim, ctx.N.dim, ctx.B.dim
    n = da + dm + dn + db
    om, on, ob = da, da + dm, da + dm + dn
    c = _empty_table(n)

    for i in range(da):
        for j in range(da):
            for k, x in enumerate(ctx.A.table[i][j]):
                c[i][j][k] = x
    for i in range(db):
        for j in range(db):
            for k, x in enumerate(ctx.B.table[i][j]):
                c[ob + i][ob + j][ob + k] = x
    for i in range(da):  # A acting on M from the left
        for p in range(dm):
            for q, x in enumerate(ctx.M.left[i][p]):
                c[i][om + p][om + q] = x
    for p in range(dm):  # B acting on M from the right
        for j in range(db):
            for q, x in enumerate(ctx.M.right[p][j]):
                c[om + p][ob + j][om + q] = x
    for i in range(db):  # B acting on N from the left
        for p in range(dn):
            for q, x in enumerate(ctx.N.left[i][p]):
                c[ob + i][on + p][on + q] = x
    for p in range(dn):  # A acting on N from the right
        for j in range(da):
            for q, x in enumerate(ctx.N.right[p][j]):
                c[on + p][j][on + q] = x
    for p in range(dm):  # pairing M x N -> A
        for q in range(dn):
            for k, x in enumerate(ctx.zeta[p][q]):
                c[om + p][on + q][k] = x
    for q in range(dn):  # pairing N x M -> B
        for p in range(dm):
            for k, x in enumerate(ctx.psi[q][p]):
                c[on + q][om + p][ob + k] = x

    labels = (
        tuple(f"a:{s}" for s in ctx.A.labels)
        + tuple(f"m{p}" for p in range(dm))
        + tuple(f"n{q}" for q in range(dn))
        + tuple(f"b:{s}" for s in ctx.B.labels)
    )
    return GMA(StructureConstants(c, labels), ctx)


def context_of(algebra: StructureConstants, dims: tuple[int, int, int, int]) -> MoritaContext:
    """Slice a block algebra's table back into a Morita context."""
    da, dm, dn, db = dims
    if algebra.dim != da + dm + dn + db:
        raise DimensionMismatch("block dims do not sum to the algebra dimension")
    om, on, ob = da, da + dm, da + dm + dn
    t = algebra.table

    def sub(rows, cols, outs):
        return tuple(
            tuple(tuple(t[i][j][k] for k in outs) for j in cols) for i in rows
        )

    ra, rm, rn, rb = (
        range(da),
        range(om, om + dm),
        range(on, on + dn),
        range(ob, ob + db),
    )
    A = StructureConstants(sub(ra, ra, ra), algebra.labels[:da])
    B = StructureConstants(sub(rb, rb, rb), algebra.labels[ob:])
    M = Bimodule(dm, da, db, sub(ra, rm, rm), sub(rm, rb, rm))
    N = Bimodule(dn, db, da, sub(rb, rn, rn), sub(rn, ra, rn))
    zeta = sub(rm, rn, ra)
    psi = sub(rn, rm, rb)
    return MoritaContext(A, B, M, N, zeta, psi)


def gma_from_block_algebra(algebra: StructureConstants, dims: tuple[int, int, int, int]) -> GMA:
    """Wrap an existing algebra as a GMA, verifying the block rules.

    Reassembling the sliced context must reproduce the original table;
    any product leaking outside its corner shows up as a difference.
    """
    ctx = context_of(algebra, dims)
    rebuilt = assemble(ctx)
    if rebuilt.algebra.table != algebra.table:
        raise InvalidBlockStructure(
            "products do not respect the 2x2 block multiplication rules"
        )
    return GMA(algebra, ctx)


def m2_of(alg: StructureConstants) -> GMA:
    """The 2x2 matrix algebra over alg, as a GMA with four equal corners."""
    reg = Bimodule.regular(alg)
    ctx = MoritaContext(alg, alg, reg, reg, alg.table, alg.table)
    return assemble(ctx)


@dataclass(frozen=True)
class PeirceDecomposition:
    """Result of splitting a unital algebra along an idempotent."""

    gma: GMA
    new_to_old: Matrix  # columns = new basis vectors in old coordinates
    old_to_new: Matrix

    def to_new_coords(self, coords: Sequence[Fraction]) -> tuple:
        return self.old_to_new.matvec(coords)

    def to_old_coords(self, coords: Sequence[Fraction]) -> tuple:
        return self.new_to_old.matvec(coords)


def _invert(m: Matrix) -> Matrix:
    n = m.rows
    aug = Matrix([list(m.data[i]) + list(unit_vec(n, i)) for i in range(n)])
    red = rref(aug)
    for i in range(n):
        if red.data[i][i] != 1:
            raise DimensionMismatch("matrix is singular")
    return Matrix([row[n:] for row in red.data], cols=n)


def peirce_from_idempotent(alg: StructureConstants, e: AlgebraElement) -> PeirceDecomposition:
    """Re-base a unital algebra along e into [[eAe, eAf], [fAe, fAf]]."""
    one = require_unit(alg)
    if not (e * e == e):
        raise NotIdempotent("element does not square to itself")
    if e.is_zero() or e == one:
        raise TrivialIdempotent("need e distinct from 0 and 1")
    f = one - e
    n = alg.dim
    corners: list[Subspace] = []
    for left, right in ((e, e), (e, f), (f, e), (f, f)):
        proj = alg.left_mult_of(left.coords) @ alg.right_mult_of(right.coords)
        corners.append(Subspace(n, [proj.col(j) for j in range(n)]))
    dims = tuple(s.dim for s in corners)
    if sum(dims) != n:
        raise InvalidBlockStructure("Peirce corners do not span")  # unreachable for true idempotents
    new_basis = [v for s in corners for v in s.basis]
    new_to_old = Matrix.from_cols(new_basis)
    old_to_new = _invert(new_to_old)
    table = [
        [
            list(old_to_new.matvec(alg.mul_coords(new_basis[i], new_basis[j])))
            for j in range(n)
        ]
        for i in range(n)
    ]
    labels = []
    for t, v in enumerate(new_basis):
        support = [(i, x) for i, x in enumerate(v) if x != 0]
        if len(support) == 1 and support[0][1] == 1:
            labels.append(alg.labels[support[0][0]])
        else:
            labels.append(f"p{t}")
    sc = StructureConstants(table, labels)
    gma = gma_from_block_algebra(sc, dims)
    return PeirceDecomposition(gma, new_to_old, old_to_new)


@dataclass(frozen=True)
class AnnihilatorReport:
    """Per-side result of the annihilating-condition check.

    A side holds when the corresponding annihilator subspace is zero;
    a nonzero basis vector is a concrete witness.
    """

    a_annihilator: Subspace
    b_annihilator: Subspace

    @property
    def holds_a(self) -> bool:
        return self.a_annihilator.is_zero()

    @property
    def holds_b(self) -> bool:
        return self.b_annihilator.is_zero()

    @property
    def holds(self) -> bool:
        return self.holds_a and self.holds_b


def check_annihilating_conditions(u: GMA) -> AnnihilatorReport:
    """Compute {a : aM = 0, Na = 0} and {b : Mb = 0, bN = 0} as kernels."""
    ctx = u.context
    da, dm, dn, db = u.dims

    rows_a: list[tuple] = []
    for p in range(dm):
        for q in range(dm):
            rows_a.append(tuple(ctx.M.left[i][p][q] for i in range(da)))
    for p in range(dn):
        for q in range(dn):
            rows_a.append(tuple(ctx.N.right[p][j][q] for j in range(da)))
    a_ann = Subspace.full(da) if not rows_a else kernel(Matrix(rows_a, cols=da))

    rows_b: list[tuple] = []
    for p in range(dm):
        for q in range(dm):
            rows_b.append(tuple(ctx.M.right[p][j][q] for j in range(db)))
    for p in range(dn):
        for q in range(dn):
            rows_b.append(tuple(ctx.N.left[i][p][q] for i in range(db)))
    b_ann = Subspace.full(db) if not rows_b else kernel(Matrix(rows_b, cols=db))
    return AnnihilatorReport(a_ann, b_ann)


@dataclass(frozen=True)
class CenterBlocks:
    """The center of a GMA together with its two corner projections."""

    z: Subspace
    pi_a: Subspace
    pi_b: Subspace


def center_block_description(u: GMA) -> CenterBlocks:
    """Center as diagonal pairs; requires unitality + annihilating conditions."""
    require_unit(u.algebra)
    report = check_annihilating_conditions(u)
    if not report.holds:
        raise AnnihilatorConditionsFail(
            "annihilating conditions fail; the block description does not apply"
        )
    z = center(u.algebra)
    for v in z.basis:
        if not is_zero_vec(u.project("M", v)) or not is_zero_vec(u.project("N", v)):
            raise OffDiagonalCenter("central element with off-diagonal corner")
    pi_a = Subspace(u.dim_a, [u.project("A", v) for v in z.basis])
    pi_b = Subspace(u.dim_b, [u.project("B", v) for v in z.basis])
    return CenterBlocks(z, pi_a, pi_b)


def block_center(u: GMA) -> Subspace:
    """{diag(a,b) : am = mb, na = bn for all basis m, n}, from block data.

    Independent of the raw commutation kernel; used to cross-check the
    center description on qualifying algebras.
    """
    ctx = u.context
    da, dm, dn, db = u.dims
    rows: list[tuple] = []
    for p in range(dm):
        for q in range(dm):
            rows.append(
                tuple(ctx.M.left[i][p][q] for i in range(da))
                + tuple(-ctx.M.right[p][j][q] for j in range(db))
            )
    for p in range(dn):
        for q in range(dn):
            rows.append(
                tuple(ctx.N.right[p][j][q] for j in range(da))
                + tuple(-ctx.N.left[i][p][q] for i in range(db))
            )
    pairs = (
        Subspace.full(da + db)
        if not rows
        else kernel(Matrix(rows, cols=da + db))
    )
    n = u.algebra.dim
    embedded = []
    for v in pairs.basis:
        x = [Fraction(0)] * n
        for i, val in zip(u.block_range("A"), v[:da]):
            x[i] = val
        for i, val in zip(u.block_range("B"), v[da:]):
            x[i] = val
        embedded.append(tuple(x))
    return Subspace(n, embedded)


class EtaMap:
    """The diagonal-corner correspondence on the center of a GMA.

    For a in pi_A(Z(U)), eta(a) is the unique b with diag(a, b) central.
    Verified at construction: single-valued, bijective, multiplicative,
    and intertwining (a m = m eta(a), n a = eta(a) n on all basis pairs).
    """

    __slots__ = ("domain", "codomain", "images", "preimages")

    def __init__(self, domain: Subspace, codomain: Subspace, images, preimages):
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "codomain", codomain)
        object.__setattr__(self, "images", tuple(vec(v) for v in images))
        object.__setattr__(self, "preimages", tuple(vec(v) for v in preimages))

    def __setattr__(self, *_):
        raise AttributeError("EtaMap is immutable")

    def apply(self, a: Sequence[Fraction]) -> tuple:
        coeffs = self.domain.coefficients_of(a)
        if coeffs is None:
            raise DimensionMismatch("element outside the domain of eta")
        out = [Fraction(0)] * (len(self.images[0]) if self.images else 0)
        if not self.images:
            return tuple(out)
        for c, img in zip(coeffs, self.images):
            for t, x in enumerate(img):
                out[t] += c * x
        return tuple(out)

    def apply_inverse(self, b: Sequence[Fraction]) -> tuple:
        coeffs = self.codomain.coefficients_of(b)
        if coeffs is None:
            raise DimensionMismatch("element outside the codomain of eta")
        out = [Fraction(0)] * (len(self.preimages[0]) if self.preimages else 0)
        if not self.preimages:
            return tuple(out)
        for c, pre in zip(coeffs, self.preimages):
            for t, x in enumerate(pre):
                out[t] += c * x
        return tuple(out)


def eta_map(u: GMA) -> EtaMap:
    blocks = center_block_description(u)
    ctx = u.context
    da, db = u.dim_a, u.dim_b
    ann_z = blocks.z.annihilator()
    a_range, b_range = u.block_range("A"), u.block_range("B")

    def partner(corner_coords, forward: bool) -> tuple:
        # unknown corner y with diag(a, y) (or diag(y, b)) in Z(U)
        fixed_range, free_range = (a_range, b_range) if forward else (b_range, a_range)
        free_dim = db if forward else da
        rows = [tuple(f[i] for i in free_range) for f in ann_z.basis]
        rhs = [
            -sum(f[i] * x for i, x in zip(fixed_range, corner_coords))
            for f in ann_z.basis
        ]
        y, hom = solve(Matrix(rows, cols=free_dim), rhs)
        if not hom.is_zero():
            raise NonUniqueEta("diagonal partner is not unique")
        return y

    images = [partner(a, True) for a in blocks.pi_a.basis]
    preimages = [partner(b, False) for b in blocks.pi_b.basis]
    eta = EtaMap(blocks.pi_a, blocks.pi_b, images, preimages)

    # eta must be a bijection between the corner projections
    if Subspace(db, images) != blocks.pi_b or Subspace(da, preimages) != blocks.pi_a:
        raise NonUniqueEta("corner correspondence is not bijective")
    for a, b in zip(blocks.pi_a.basis, images):
        if eta.apply_inverse(b) != a:
            raise NonUniqueEta("inverse does not invert eta")
    # multiplicativity on all basis pairs (pi_A(Z) is closed under products)
    for a1 in blocks.pi_a.basis:
        for a2 in blocks.pi_a.basis:
            prod_a = ctx.A.mul_coords(a1, a2)
            if not blocks.pi_a.contains_vector(prod_a):
                raise NonUniqueEta("pi_A(Z(U)) is not multiplicatively closed")
            lhs = eta.apply(prod_a)
            rhs = ctx.B.mul_coords(eta.apply(a1), eta.apply(a2))
            if lhs != rhs:
                raise NonUniqueEta("eta is not multiplicative")
    # intertwining identities on all basis pairs
    for a in blocks.pi_a.basis:
        b = eta.apply(a)
        for p in range(u.dim_m):
            m = unit_vec(u.dim_m, p)
            if ctx.M.act_left(a, m) != ctx.M.act_right(m, b):
                raise NonUniqueEta("a m != m eta(a)")
        for q in range(u.dim_n):
            nq = unit_vec(u.dim_n, q)
            if ctx.N.act_right(nq, a) != ctx.N.act_left(b, nq):
                raise NonUniqueEta("n a != eta(a) n")
    return eta
