"""Solution spaces of functional identities on a fixed algebra.

Every identity handled here (Lie/Jordan centralizers, the derivation
family, and their triple versions) is linear in the unknown operator,
so each basis tuple contributes one vector equation.  Rows are indexed
by the column-major vectorization of the operator, generated sparsely
over all basis tuples, deduplicated, and fed to the exact kernel
routine.  The same tuple/term expansion drives direct membership
checking, which therefore agrees with the solved space by
construction of the rows, not by accident.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, Sequence

from .algebra import AlgebraElement, LinearOperator, StructureConstants
from .errors import NotGMA, NotUnital
from .gma import GMA
from .linalg import (
    Matrix,
    Subspace,
    is_zero_vec,
    kernel_of_rows,
    unit_vec,
    vec_sub,
    zero_vec,
)


class IdentityKind(Enum):
    LIE_CENTRALIZER = "lc"
    LIE_TRIPLE_CENTRALIZER = "ltc"
    JORDAN_CENTRALIZER = "jc"
    DERIVATION = "der"
    LIE_DERIVATION = "lieder"
    JORDAN_DERIVATION = "jder"
    LIE_TRIPLE_DERIVATION = "ltd"
    SINGULAR_JORDAN_DERIVATION = "sjder"


_CENTRALIZER_KINDS = {
    IdentityKind.LIE_CENTRALIZER,
    IdentityKind.LIE_TRIPLE_CENTRALIZER,
    IdentityKind.JORDAN_CENTRALIZER,
}


class _TermTables:
    """Cached multiplication-derived matrices for one algebra."""

    def __init__(self, alg: StructureConstants):
        self.alg = alg
        n = alg.dim
        self.left = [alg.left_mult_basis(i) for i in range(n)]
        self.right = [alg.right_mult_basis(i) for i in range(n)]
        # C_i : x -> [x, e_i]
        self.ad_right = [self.right[i] - self.left[i] for i in range(n)]
        # J_i : x -> x o e_i  (= e_i o x)
        self.jord = [self.right[i] + self.left[i] for i in range(n)]
        self._dd: dict[tuple[int, int], Matrix | None] = {}
        self._brackets: dict[tuple[int, int], tuple] = {}
        self._ad_minus: dict[tuple[int, int], Matrix | None] = {}

    def double_ad(self, j: int, k: int) -> Matrix | None:
        """Matrix of x -> [[x, e_j], e_k], or None when identically zero."""
        key = (j, k)
        if key not in self._dd:
            m = self.ad_right[k] @ self.ad_right[j]
            self._dd[key] = None if m.is_zero() else m
        return self._dd[key]

    def bracket(self, i: int, j: int) -> tuple:
        key = (i, j)
        if key not in self._brackets:
            n = self.alg.dim
            ei, ej = unit_vec(n, i), unit_vec(n, j)
            self._brackets[key] = vec_sub(
                self.alg.mul_coords(ei, ej), self.alg.mul_coords(ej, ei)
            )
        return self._brackets[key]

    def ad_minus_bracket(self, i: int, j: int) -> Matrix | None:
        """Matrix of x -> [v, x] for v = [e_i, e_j], or None when zero."""
        key = (i, j)
        if key not in self._ad_minus:
            v = self.bracket(i, j)
            if is_zero_vec(v):
                self._ad_minus[key] = None
            else:
                m = self.alg.left_mult_of(v) - self.alg.right_mult_of(v)
                self._ad_minus[key] = None if m.is_zero() else m
        return self._ad_minus[key]


_TABLE_CACHE: dict[str, _TermTables] = {}


def _tables(alg: StructureConstants) -> _TermTables:
    t = _TABLE_CACHE.get(alg.content_hash)
    if t is None:
        t = _TermTables(alg)
        _TABLE_CACHE[alg.content_hash] = t
    return t


def _constraint_tuples(
    alg: StructureConstants, kind: IdentityKind
) -> Iterator[tuple[tuple, tuple, list[tuple[Matrix, int, int]]]]:
    """Yield (tag, w, terms) with the equation phi(w) = sum s * G phi(e_i).

    Each term is (G, basis index, sign).  Tuples whose w and term
    matrices all vanish are skipped; their rows would be identically 0.
    """
    n = alg.dim
    t = _tables(alg)
    if kind is IdentityKind.LIE_CENTRALIZER:
        for j in range(n):
            cj = t.ad_right[j]
            cj_zero = cj.is_zero()
            for i in range(n):
                w = t.bracket(i, j)
                if cj_zero and is_zero_vec(w):
                    continue
                yield (i, j), w, [(cj, i, 1)]
    elif kind is IdentityKind.JORDAN_CENTRALIZER:
        for j in range(n):
            jj = t.jord[j]
            jj_zero = jj.is_zero()
            for i in range(n):
                ei, ej = unit_vec(n, i), unit_vec(n, j)
                w = tuple(
                    a + b
                    for a, b in zip(alg.mul_coords(ei, ej), alg.mul_coords(ej, ei))
                )
                if jj_zero and is_zero_vec(w):
                    continue
                yield (i, j), w, [(jj, i, 1)]
    elif kind is IdentityKind.LIE_TRIPLE_CENTRALIZER:
        for j in range(n):
            for k in range(n):
                d = t.double_ad(j, k)
                if d is None:
                    continue
                for i in range(n):
                    yield (i, j, k), d.col(i), [(d, i, 1)]
    elif kind is IdentityKind.DERIVATION:
        for i in range(n):
            li = t.left[i]
            for j in range(n):
                w = alg.mul_coords(unit_vec(n, i), unit_vec(n, j))
                yield (i, j), w, [(t.right[j], i, 1), (li, j, 1)]
    elif kind is IdentityKind.LIE_DERIVATION:
        for i in range(n):
            adm_i = -t.ad_right[i]  # x -> [e_i, x]
            for j in range(n):
                w = t.bracket(i, j)
                yield (i, j), w, [(t.ad_right[j], i, 1), (adm_i, j, 1)]
    elif kind in (IdentityKind.JORDAN_DERIVATION, IdentityKind.SINGULAR_JORDAN_DERIVATION):
        for i in range(n):
            ji = t.jord[i]
            for j in range(n):
                ei, ej = unit_vec(n, i), unit_vec(n, j)
                w = tuple(
                    a + b
                    for a, b in zip(alg.mul_coords(ei, ej), alg.mul_coords(ej, ei))
                )
                yield (i, j), w, [(t.jord[j], i, 1), (ji, j, 1)]
    elif kind is IdentityKind.LIE_TRIPLE_DERIVATION:
        for j in range(n):
            for k in range(n):
                d_jk = t.double_ad(j, k)
                for i in range(n):
                    d_ik = t.double_ad(i, k)
                    adm = t.ad_minus_bracket(i, j)
                    if d_jk is None and d_ik is None and adm is None:
                        continue
                    terms: list[tuple[Matrix, int, int]] = []
                    if d_jk is not None:
                        terms.append((d_jk, i, 1))
                    if d_ik is not None:
                        terms.append((d_ik, j, -1))
                    if adm is not None:
                        terms.append((adm, k, 1))
                    w = d_jk.col(i) if d_jk is not None else zero_vec(n)
                    yield (i, j, k), w, terms
    else:  # pragma: no cover
        raise ValueError(f"unhandled identity kind {kind}")


def _sparsity_rows(u: GMA) -> Iterator[dict[int, Fraction]]:
    """Rows forcing zero outside the M->N and N->M corners."""
    n = u.algebra.dim
    m_range, n_range = set(u.block_range("M")), set(u.block_range("N"))
    for c in range(n):
        for r in range(n):
            allowed = (c in m_range and r in n_range) or (c in n_range and r in m_range)
            if not allowed:
                yield {c * n + r: Fraction(1)}


def _resolve(alg_or_gma, kind: IdentityKind) -> tuple[StructureConstants, GMA | None]:
    if isinstance(alg_or_gma, GMA):
        return alg_or_gma.algebra, alg_or_gma
    if kind is IdentityKind.SINGULAR_JORDAN_DERIVATION:
        raise NotGMA("singular Jordan derivations need block structure")
    return alg_or_gma, None


_SPACE_CACHE: dict[tuple[str, IdentityKind, tuple | None], Subspace] = {}


def solve_identity_space(alg_or_gma, kind: IdentityKind) -> Subspace:
    """Canonical basis of all operators satisfying the identity.

    The ambient space is dim^2 with column-major operator coordinates.
    """
    alg, u = _resolve(alg_or_gma, kind)
    # the singular kind's sparsity pattern depends on the block geometry
    block_key = u.dims if (u is not None and kind is IdentityKind.SINGULAR_JORDAN_DERIVATION) else None
    cache_key = (alg.content_hash, kind, block_key)
    hit = _SPACE_CACHE.get(cache_key)
    if hit is not None:
        return hit
    n = alg.dim

    def rows() -> Iterator[dict[int, Fraction]]:
        base_kind = (
            IdentityKind.JORDAN_DERIVATION
            if kind is IdentityKind.SINGULAR_JORDAN_DERIVATION
            else kind
        )
        for _tag, w, terms in _constraint_tuples(alg, base_kind):
            for l in range(n):
                row: dict[int, Fraction] = {}
                for c, wc in enumerate(w):
                    if wc != 0:
                        row[c * n + l] = row.get(c * n + l, Fraction(0)) + wc
                for g, i, sign in terms:
                    grow = g.data[l]
                    for lp, val in enumerate(grow):
                        if val != 0:
                            key = i * n + lp
                            row[key] = row.get(key, Fraction(0)) - sign * val
                if row:
                    yield row
        if kind is IdentityKind.SINGULAR_JORDAN_DERIVATION:
            if u is None:
                raise NotGMA("singular Jordan derivations need block structure")
            yield from _sparsity_rows(u)

    space = kernel_of_rows(n * n, rows())
    _SPACE_CACHE[cache_key] = space
    return space


@dataclass(frozen=True)
class IdentityCheck:
    """Outcome of a direct membership check, with the first witness."""

    ok: bool
    witness: tuple | None = None  # basis tuple
    lhs: AlgebraElement | None = None
    rhs: AlgebraElement | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_identity_member(alg_or_gma, kind: IdentityKind, op: LinearOperator) -> IdentityCheck:
    """Evaluate every constraint tuple on the operator directly."""
    alg, u = _resolve(alg_or_gma, kind)
    base_kind = (
        IdentityKind.JORDAN_DERIVATION
        if kind is IdentityKind.SINGULAR_JORDAN_DERIVATION
        else kind
    )
    n = alg.dim
    if kind is IdentityKind.SINGULAR_JORDAN_DERIVATION:
        assert u is not None
        flat = op.flatten()
        for row in _sparsity_rows(u):
            ((pos, _),) = row.items()
            if flat[pos] != 0:
                c, r = divmod(pos, n)
                return IdentityCheck(
                    False, (r, c), alg.element(op.matrix.col(c)), alg.zero()
                )
    images = [op.matrix.col(j) for j in range(n)]
    for tag, w, terms in _constraint_tuples(alg, base_kind):
        lhs = op.matrix.matvec(w)
        rhs = zero_vec(n)
        for g, i, sign in terms:
            gv = g.matvec(images[i])
            rhs = tuple(a + sign * b for a, b in zip(rhs, gv))
        if lhs != rhs:
            return IdentityCheck(False, tag, alg.element(lhs), alg.element(rhs))
    return IdentityCheck(True)


def contains_identity_operator(alg: StructureConstants, kind: IdentityKind) -> bool:
    return bool(is_identity_member(alg, kind, LinearOperator.identity(alg)))


# ---------------------------------------------------------------------------
#  Block form of operators on a generalized matrix algebra
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BlockDecomposition:
    """The sixteen corner maps of an operator on a block algebra.

    Index convention: suffix 1 targets A, 2 targets M, 3 targets N and
    4 targets B; alpha maps come from A, beta from B, tau from M and
    gamma from N.
    """

    gma: GMA
    alpha1: Matrix
    alpha2: Matrix
    alpha3: Matrix
    alpha4: Matrix
    beta1: Matrix
    beta2: Matrix
    beta3: Matrix
    beta4: Matrix
    tau1: Matrix
    tau2: Matrix
    tau3: Matrix
    tau4: Matrix
    gamma1: Matrix
    gamma2: Matrix
    gamma3: Matrix
    gamma4: Matrix

    def reassemble(self) -> LinearOperator:
        u = self.gma
        n = u.algebra.dim
        rows = [[Fraction(0)] * n for _ in range(n)]
        placing = {
            ("A", "A"): self.alpha1, ("M", "A"): self.alpha2,
            ("N", "A"): self.alpha3, ("B", "A"): self.alpha4,
            ("A", "B"): self.beta1, ("M", "B"): self.beta2,
            ("N", "B"): self.beta3, ("B", "B"): self.beta4,
            ("A", "M"): self.tau1, ("M", "M"): self.tau2,
            ("N", "M"): self.tau3, ("B", "M"): self.tau4,
            ("A", "N"): self.gamma1, ("M", "N"): self.gamma2,
            ("N", "N"): self.gamma3, ("B", "N"): self.gamma4,
        }
        for (target, source), mat in placing.items():
            tr, sr = u.block_range(target), u.block_range(source)
            for a, r in enumerate(tr):
                for b, c in enumerate(sr):
                    rows[r][c] = mat.data[a][b]
        return LinearOperator(u.algebra, Matrix(rows, cols=n))


def block_decompose(u: GMA, op: LinearOperator) -> BlockDecomposition:
    """Slice an operator into its sixteen corner maps (exact reassembly)."""
    mat = op.matrix

    def corner(target: str, source: str) -> Matrix:
        tr, sr = u.block_range(target), u.block_range(source)
        return Matrix(
            [[mat.data[r][c] for c in sr] for r in tr],
            cols=len(sr),
        )

    return BlockDecomposition(
        gma=u,
        alpha1=corner("A", "A"), alpha2=corner("M", "A"),
        alpha3=corner("N", "A"), alpha4=corner("B", "A"),
        beta1=corner("A", "B"), beta2=corner("M", "B"),
        beta3=corner("N", "B"), beta4=corner("B", "B"),
        tau1=corner("A", "M"), tau2=corner("M", "M"),
        tau3=corner("N", "M"), tau4=corner("B", "M"),
        gamma1=corner("A", "N"), gamma2=corner("M", "N"),
        gamma3=corner("N", "N"), gamma4=corner("B", "N"),
    )


def build_from_blocks(
    u: GMA,
    alpha1: Matrix,
    beta1: Matrix,
    tau2: Matrix,
    gamma3: Matrix,
    alpha4: Matrix,
    beta4: Matrix,
) -> LinearOperator:
    """Assemble the six-map block form into an operator on the GMA."""
    da, dm, dn, db = u.dims
    z = Matrix.zeros
    return BlockDecomposition(
        gma=u,
        alpha1=alpha1, alpha2=z(dm, da), alpha3=z(dn, da), alpha4=alpha4,
        beta1=beta1, beta2=z(dm, db), beta3=z(dn, db), beta4=beta4,
        tau1=z(da, dm), tau2=tau2, tau3=z(dn, dm), tau4=z(db, dm),
        gamma1=z(da, dn), gamma2=z(dm, dn), gamma3=gamma3, gamma4=z(db, dn),
    ).reassemble()


# ---------------------------------------------------------------------------
#  The structure conditions for Lie triple centralizers in block form
# ---------------------------------------------------------------------------

_SIX_MAP_FIELDS = ("alpha1", "beta1", "tau2", "gamma3", "alpha4", "beta4")


def six_map_shapes(u: GMA) -> dict[str, tuple[int, int]]:
    da, dm, dn, db = u.dims
    return {
        "alpha1": (da, da),
        "beta1": (da, db),
        "tau2": (dm, dm),
        "gamma3": (dn, dn),
        "alpha4": (db, da),
        "beta4": (db, db),
    }


def _structure_residuals(u: GMA, maps: dict[str, Matrix]):
    """Yield (label, tag, residual vector) for the block-form conditions.

    The two pairing conditions are implemented in the domain-corrected
    orientation: the second reads beta4(nm) - alpha4(mn) = n tau2(m)
    = gamma3(n) m, which is what expanding the triple bracket of the
    standard idempotent against an M and an N element actually gives.
    """
    ctx = u.context
    A, B, M, N = ctx.A, ctx.B, ctx.M, ctx.N
    da, dm, dn, db = u.dims
    alpha1, beta1 = maps["alpha1"], maps["beta1"]
    tau2, gamma3 = maps["tau2"], maps["gamma3"]
    alpha4, beta4 = maps["alpha4"], maps["beta4"]

    # alpha1 and beta4 satisfy the triple identity on their own corners
    for tag, w, terms in _constraint_tuples(A, IdentityKind.LIE_TRIPLE_CENTRALIZER):
        lhs = alpha1.matvec(w)
        rhs = zero_vec(da)
        for g, i, sign in terms:
            gv = g.matvec(alpha1.col(i))
            rhs = tuple(a + sign * b for a, b in zip(rhs, gv))
        yield "alpha1 triple identity on A", tag, vec_sub(lhs, rhs)
    for tag, w, terms in _constraint_tuples(B, IdentityKind.LIE_TRIPLE_CENTRALIZER):
        lhs = beta4.matvec(w)
        rhs = zero_vec(db)
        for g, i, sign in terms:
            gv = g.matvec(beta4.col(i))
            rhs = tuple(a + sign * b for a, b in zip(rhs, gv))
        yield "beta4 triple identity on B", tag, vec_sub(lhs, rhs)

    # alpha4 lands in the double commutant of B; beta1 in that of A
    for ia in range(da):
        img = alpha4.col(ia)
        for j1 in range(db):
            for j2 in range(db):
                e1, e2 = unit_vec(db, j1), unit_vec(db, j2)
                inner = vec_sub(B.mul_coords(img, e1), B.mul_coords(e1, img))
                outer = vec_sub(B.mul_coords(inner, e2), B.mul_coords(e2, inner))
                yield "[[alpha4(a),b1],b2] = 0", (ia, j1, j2), outer
    for ib in range(db):
        img = beta1.col(ib)
        for j1 in range(da):
            for j2 in range(da):
                e1, e2 = unit_vec(da, j1), unit_vec(da, j2)
                inner = vec_sub(A.mul_coords(img, e1), A.mul_coords(e1, img))
                outer = vec_sub(A.mul_coords(inner, e2), A.mul_coords(e2, inner))
                yield "[[beta1(b),a1],a2] = 0", (ib, j1, j2), outer

    # alpha4 and beta1 kill second commutators of their source corners
    ta = _tables(A)
    for i in range(da):
        for j in range(da):
            for k in range(da):
                d = ta.double_ad(j, k)
                if d is None:
                    continue
                yield "alpha4 kills [[A,A],A]", (i, j, k), alpha4.matvec(d.col(i))
    tb = _tables(B)
    for i in range(db):
        for j in range(db):
            for k in range(db):
                d = tb.double_ad(j, k)
                if d is None:
                    continue
                yield "beta1 kills [[B,B],B]", (i, j, k), beta1.matvec(d.col(i))

    # pairing conditions over all basis m, n
    for p in range(dm):
        mvec = unit_vec(dm, p)
        t2m = tau2.col(p)
        for q in range(dn):
            nvec = unit_vec(dn, q)
            g3n = gamma3.col(q)
            mn = ctx.pair_mn(mvec, nvec)
            nm = ctx.pair_nm(nvec, mvec)
            lead_a = vec_sub(alpha1.matvec(mn), beta1.matvec(nm))
            yield "alpha1(mn) - beta1(nm) = tau2(m) n", (p, q), vec_sub(
                lead_a, ctx.pair_mn(t2m, nvec)
            )
            yield "alpha1(mn) - beta1(nm) = m gamma3(n)", (p, q), vec_sub(
                lead_a, ctx.pair_mn(mvec, g3n)
            )
            lead_b = vec_sub(beta4.matvec(nm), alpha4.matvec(mn))
            yield "beta4(nm) - alpha4(mn) = n tau2(m)", (p, q), vec_sub(
                lead_b, ctx.pair_nm(nvec, t2m)
            )
            yield "beta4(nm) - alpha4(mn) = gamma3(n) m", (p, q), vec_sub(
                lead_b, ctx.pair_nm(g3n, mvec)
            )

    # module conditions for tau2
    for i in range(da):
        avec = unit_vec(da, i)
        a1a = alpha1.col(i)
        a4a = alpha4.col(i)
        for p in range(dm):
            mvec = unit_vec(dm, p)
            am = M.act_left(avec, mvec)
            t2am = tau2.matvec(am)
            yield "tau2(am) = a tau2(m)", (i, p), vec_sub(
                t2am, M.act_left(avec, tau2.col(p))
            )
            yield "tau2(am) = alpha1(a)m - m alpha4(a)", (i, p), vec_sub(
                t2am, vec_sub(M.act_left(a1a, mvec), M.act_right(mvec, a4a))
            )
    for j in range(db):
        bvec = unit_vec(db, j)
        b4b = beta4.col(j)
        b1b = beta1.col(j)
        for p in range(dm):
            mvec = unit_vec(dm, p)
            mb = M.act_right(mvec, bvec)
            t2mb = tau2.matvec(mb)
            yield "tau2(mb) = tau2(m) b", (j, p), vec_sub(
                t2mb, M.act_right(tau2.col(p), bvec)
            )
            yield "tau2(mb) = m beta4(b) - beta1(b)m", (j, p), vec_sub(
                t2mb, vec_sub(M.act_right(mvec, b4b), M.act_left(b1b, mvec))
            )

    # module conditions for gamma3
    for i in range(da):
        avec = unit_vec(da, i)
        a1a = alpha1.col(i)
        a4a = alpha4.col(i)
        for q in range(dn):
            nvec = unit_vec(dn, q)
            na = N.act_right(nvec, avec)
            g3na = gamma3.matvec(na)
            yield "gamma3(na) = gamma3(n) a", (i, q), vec_sub(
                g3na, N.act_right(gamma3.col(q), avec)
            )
            yield "gamma3(na) = n alpha1(a) - alpha4(a)n", (i, q), vec_sub(
                g3na, vec_sub(N.act_right(nvec, a1a), N.act_left(a4a, nvec))
            )
    for j in range(db):
        bvec = unit_vec(db, j)
        b4b = beta4.col(j)
        b1b = beta1.col(j)
        for q in range(dn):
            nvec = unit_vec(dn, q)
            bn = N.act_left(bvec, nvec)
            g3bn = gamma3.matvec(bn)
            yield "gamma3(bn) = b gamma3(n)", (j, q), vec_sub(
                g3bn, N.act_left(bvec, gamma3.col(q))
            )
            yield "gamma3(bn) = beta4(b)n - n beta1(b)", (j, q), vec_sub(
                g3bn, vec_sub(N.act_left(b4b, nvec), N.act_right(nvec, b1b))
            )


@dataclass(frozen=True)
class Thm31Report:
    """Outcome of the block-form verification, with named failures."""

    passed: bool
    failures: tuple[tuple[str, tuple], ...]

    def __bool__(self) -> bool:
        return self.passed


_VANISHING_CORNERS = (
    "alpha2", "alpha3", "beta2", "beta3",
    "tau1", "tau3", "tau4", "gamma1", "gamma2", "gamma4",
)


def verify_thm31_conditions(u: GMA, d: BlockDecomposition) -> Thm31Report:
    """Check the sixteen-corner shape and all structure conditions."""
    if u.unit() is None:
        raise NotUnital("block-form conditions need a unital algebra")
    failures: list[tuple[str, tuple]] = []
    for name in _VANISHING_CORNERS:
        if not getattr(d, name).is_zero():
            failures.append((f"corner {name} must vanish", ()))
    maps = {name: getattr(d, name) for name in _SIX_MAP_FIELDS}
    for label, tag, residual in _structure_residuals(u, maps):
        if not is_zero_vec(residual):
            failures.append((label, tag))
    return Thm31Report(not failures, tuple(failures))


def six_map_solution_space(u: GMA) -> Subspace:
    """All six-map tuples satisfying the structure conditions, as a subspace.

    Unknowns are the six matrices in the fixed field order, each
    column-major.  Columns of the constraint matrix are obtained by
    probing the residual evaluator on unit tuples, which keeps this
    solver and the verifier literally the same code.
    """
    shapes = six_map_shapes(u)
    sizes = [shapes[f][0] * shapes[f][1] for f in _SIX_MAP_FIELDS]
    total = sum(sizes)

    def unflatten(flat: Sequence[Fraction]) -> dict[str, Matrix]:
        out = {}
        pos = 0
        for fname in _SIX_MAP_FIELDS:
            r, c = shapes[fname]
            chunk = flat[pos : pos + r * c]
            pos += r * c
            out[fname] = (
                Matrix.from_cols([chunk[j * r : (j + 1) * r] for j in range(c)])
                if r * c
                else Matrix.zeros(r, c)
            )
        return out

    columns: list[list[Fraction]] = []
    for t in range(total):
        flat = [Fraction(0)] * total
        flat[t] = Fraction(1)
        res: list[Fraction] = []
        for _label, _tag, residual in _structure_residuals(u, unflatten(flat)):
            res.extend(residual)
        columns.append(res)
    rows = (dict(enumerate(r)) for r in zip(*columns))
    space = kernel_of_rows(total, rows)
    return space


def six_maps_from_flat(u: GMA, flat: Sequence[Fraction]) -> dict[str, Matrix]:
    shapes = six_map_shapes(u)
    out = {}
    pos = 0
    for fname in _SIX_MAP_FIELDS:
        r, c = shapes[fname]
        chunk = flat[pos : pos + r * c]
        pos += r * c
        out[fname] = (
            Matrix.from_cols([chunk[j * r : (j + 1) * r] for j in range(c)])
            if r * c
            else Matrix.zeros(r, c)
        )
    return out


@dataclass(frozen=True)
class Cor32Report:
    """Strengthened range conditions under the annihilating hypotheses."""

    alpha4_into_center_b: bool
    beta1_into_center_a: bool

    @property
    def passed(self) -> bool:
        return self.alpha4_into_center_b and self.beta1_into_center_a

    def __bool__(self) -> bool:
        return self.passed


def corollary32_strengthen(u: GMA, d: BlockDecomposition) -> Cor32Report:
    """range(alpha4) inside Z(B) and range(beta1) inside Z(A)."""
    from .algebra import center
    from .errors import AnnihilatorConditionsFail
    from .gma import check_annihilating_conditions

    if u.unit() is None:
        raise NotUnital("the strengthened range check needs a unital algebra")
    if not check_annihilating_conditions(u).holds:
        raise AnnihilatorConditionsFail("annihilating conditions do not hold")
    zb = center(u.context.B)
    za = center(u.context.A)
    a4_ok = all(zb.contains_vector(d.alpha4.col(i)) for i in range(u.dim_a))
    b1_ok = all(za.contains_vector(d.beta1.col(j)) for j in range(u.dim_b))
    return Cor32Report(a4_ok, b1_ok)
