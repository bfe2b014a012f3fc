"""JSON document forms for algebras, contexts, operators and subspaces.

Rationals appear as "p/q" strings ("p" when the denominator is 1) in
every document.  Operator documents carry the content hash of the
algebra they were solved on and are rejected against anything else.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Sequence

from .algebra import LinearOperator, StructureConstants
from .errors import HashMismatch
from .gma import GMA, Bimodule, MoritaContext, assemble
from .linalg import Matrix, Subspace


def format_rat(x: Fraction) -> str:
    return str(x)


def parse_rat(s) -> Fraction:
    return Fraction(s)


def _grid(rows) -> list:
    return [[format_rat(x) for x in row] for row in rows]


def _parse_grid(rows) -> list:
    return [[parse_rat(x) for x in row] for row in rows]


def sc_to_doc(alg: StructureConstants) -> dict:
    return {
        "dim": alg.dim,
        "labels": list(alg.labels),
        "table": [_grid(plane) for plane in alg.table],
    }


def sc_from_doc(doc: dict) -> StructureConstants:
    table = [_parse_grid(plane) for plane in doc["table"]]
    return StructureConstants(table, doc.get("labels"))


def bimodule_to_doc(m: Bimodule) -> dict:
    return {
        "dim": m.dim,
        "left": [_grid(plane) for plane in m.left],
        "right": [_grid(plane) for plane in m.right],
    }


def bimodule_from_doc(doc: dict, left_dim: int, right_dim: int) -> Bimodule:
    return Bimodule(
        doc["dim"],
        left_dim,
        right_dim,
        [_parse_grid(plane) for plane in doc["left"]],
        [_parse_grid(plane) for plane in doc["right"]],
    )


def context_to_doc(ctx: MoritaContext) -> dict:
    return {
        "A": sc_to_doc(ctx.A),
        "B": sc_to_doc(ctx.B),
        "M": bimodule_to_doc(ctx.M),
        "N": bimodule_to_doc(ctx.N),
        "zeta": [_grid(plane) for plane in ctx.zeta],
        "psi": [_grid(plane) for plane in ctx.psi],
    }


def context_from_doc(doc: dict) -> MoritaContext:
    a = sc_from_doc(doc["A"])
    b = sc_from_doc(doc["B"])
    m = bimodule_from_doc(doc["M"], a.dim, b.dim)
    n = bimodule_from_doc(doc["N"], b.dim, a.dim)
    return MoritaContext(
        a,
        b,
        m,
        n,
        [_parse_grid(plane) for plane in doc["zeta"]],
        [_parse_grid(plane) for plane in doc["psi"]],
    )


def gma_from_context_doc(doc: dict) -> GMA:
    return assemble(context_from_doc(doc))


def operator_to_doc(op: LinearOperator) -> dict:
    n = op.algebra.dim
    return {
        "algebra_hash": op.algebra.content_hash,
        "matrix": [[format_rat(x) for x in op.matrix.col(j)] for j in range(n)],
    }


def operator_from_doc(doc: dict, algebra: StructureConstants) -> LinearOperator:
    if doc.get("algebra_hash") != algebra.content_hash:
        raise HashMismatch(
            "operator was saved against a different algebra "
            f"({doc.get('algebra_hash')!r} != {algebra.content_hash!r})"
        )
    cols = [[parse_rat(x) for x in col] for col in doc["matrix"]]
    return LinearOperator(algebra, Matrix.from_cols(cols))


def subspace_to_doc(s: Subspace) -> dict:
    return {"ambient": s.ambient, "dim": s.dim, "basis": _grid(s.basis)}


def dump_json(doc: dict) -> str:
    """Canonical rendering: sorted keys, fixed separators, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def save_json(path: str, doc: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_json(doc))


def vector_doc(v: Sequence[Fraction]) -> list:
    return [format_rat(x) for x in v]
