"""Brute-force oracles, independent of the production constraint path.

The production solver generates sparse rows from precomputed
multiplication operators.  The oracle here instead probes every matrix
unit through plain element arithmetic, stacks the dense residuals, and
takes a dense kernel.  Agreement between the two routes is what the
dimension tests actually certify.
"""

from fractions import Fraction

from lietriple.algebra import AlgebraElement, StructureConstants
from lietriple.linalg import Matrix, Subspace, kernel, zero_vec


def _elem(alg, coords):
    return AlgebraElement(alg, coords)


def _apply(alg, images, x: AlgebraElement) -> AlgebraElement:
    out = zero_vec(alg.dim)
    for i, c in enumerate(x.coords):
        if c != 0:
            out = tuple(a + c * b for a, b in zip(out, images[i].coords))
    return _elem(alg, out)


def _brk(x, y):
    return x * y - y * x


def _jrd(x, y):
    return x * y + y * x


def _residual_stream(alg: StructureConstants, images, kind: str):
    basis = alg.basis()
    f = lambda x: _apply(alg, images, x)
    if kind in ("lc", "jc", "der", "lieder", "jder"):
        for x in basis:
            for y in basis:
                if kind == "lc":
                    yield (f(_brk(x, y)) - _brk(f(x), y)).coords
                elif kind == "jc":
                    yield (f(_jrd(x, y)) - _jrd(f(x), y)).coords
                elif kind == "der":
                    yield (f(x * y) - (f(x) * y + x * f(y))).coords
                elif kind == "lieder":
                    yield (f(_brk(x, y)) - (_brk(f(x), y) + _brk(x, f(y)))).coords
                else:
                    yield (f(_jrd(x, y)) - (_jrd(f(x), y) + _jrd(x, f(y)))).coords
    elif kind in ("ltc", "ltc_middle", "ltd"):
        for x in basis:
            for y in basis:
                for z in basis:
                    w = _brk(_brk(x, y), z)
                    if kind == "ltc":
                        yield (f(w) - _brk(_brk(f(x), y), z)).coords
                    elif kind == "ltc_middle":
                        yield (f(w) - _brk(_brk(x, f(y)), z)).coords
                    else:
                        yield (
                            f(w)
                            - (
                                _brk(_brk(f(x), y), z)
                                + _brk(_brk(x, f(y)), z)
                                + _brk(_brk(x, y), f(z))
                            )
                        ).coords
    else:
        raise ValueError(kind)


def dense_identity_space(alg: StructureConstants, kind: str) -> Subspace:
    """Solution space by probing unit operators and a dense kernel."""
    n = alg.dim
    columns = []
    for c in range(n):
        for r in range(n):
            images = [
                _elem(alg, tuple(Fraction(1 if (i == c and l == r) else 0) for l in range(n)))
                for i in range(n)
            ]
            col = []
            for res in _residual_stream(alg, images, kind):
                col.extend(res)
            columns.append(col)
    rows = list(zip(*columns))
    return kernel(Matrix(rows, cols=n * n) if rows else Matrix([], cols=n * n))


def residual_is_zero(alg: StructureConstants, op_matrix, kind: str) -> bool:
    """Direct check that an operator satisfies the identity, element-wise."""
    images = [_elem(alg, op_matrix.col(j)) for j in range(alg.dim)]
    return all(
        all(x == 0 for x in res) for res in _residual_stream(alg, images, kind)
    )
