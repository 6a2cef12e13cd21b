"""JSON conversion between payloads and the exact domain types."""
from __future__ import annotations

import json
from typing import Any, Dict, List, Sequence

from ..errors import MalformedInput
from .exact_linalg import Matrix
from .poly_matrix import PolyMatrix
from .polynomials import MultiPoly, UniPoly
from .scalars import GaussianRational, gr


def canonical_json(obj: Any) -> str:
    """Byte-stable rendering: sorted keys, no whitespace."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


# ====================== Input ======================
def scalar_in(value: Any) -> GaussianRational:
    return gr(value)


def point_in(value: Any) -> tuple:
    if isinstance(value, list):
        return tuple(scalar_in(c) for c in value)
    return (scalar_in(value),)


def matrix_in(grid: Any) -> Matrix:
    if not isinstance(grid, list) or not all(isinstance(row, list) for row in grid):
        raise MalformedInput("a matrix is a list of rows")
    m = Matrix.of(grid)
    if not m.is_square:
        raise MalformedInput(f"expected a square matrix, got {m.rows}x{m.cols}")
    return m


def _is_term_list(value: Any) -> bool:
    return isinstance(value, list) and bool(value) and all(isinstance(t, dict) and "exps" in t for t in value)


def multipoly_in(value: Any, variables: Sequence[str]) -> MultiPoly:
    """
    A polynomial is a scalar, a coefficient array in the first variable
    (lowest degree first), or a term list [{"exps": [...], "coef": c}].
    """
    variables = tuple(variables)
    if isinstance(value, list) and not value:
        return MultiPoly.zero(variables)
    if _is_term_list(value):
        terms: Dict[tuple, GaussianRational] = {}
        for t in value:
            exps = tuple(t["exps"])
            if len(exps) != len(variables) or any(not isinstance(k, int) or k < 0 for k in exps):
                raise MalformedInput(f"bad exponent vector {list(exps)} for variables {list(variables)}")
            terms[exps] = terms.get(exps, gr(0)) + scalar_in(t.get("coef", 1))
        return MultiPoly.from_dict(variables, terms)
    if isinstance(value, list):
        if len(variables) != 1:
            raise MalformedInput("coefficient arrays need a single variable; use a term list")
        return MultiPoly.from_unipoly(UniPoly.of([scalar_in(c) for c in value], variables[0]), variables)
    return MultiPoly.constant(scalar_in(value), variables)


def polymatrix_in(grid: Any, variables: Sequence[str] = ("z",)) -> PolyMatrix:
    if not isinstance(grid, list) or not all(isinstance(row, list) for row in grid):
        raise MalformedInput("a polynomial matrix is a list of rows")
    return PolyMatrix.of([[multipoly_in(x, variables) for x in row] for row in grid], variables)


# ====================== Output ======================
def scalar_out(c: GaussianRational):
    return c.compact()


def point_out(point: Sequence[GaussianRational]) -> List[str]:
    return [str(c) for c in point]


def matrix_out(m: Matrix) -> list:
    return m.to_json()


def unipoly_out(p: UniPoly) -> list:
    return p.to_json()


def multipoly_out(p: MultiPoly) -> list:
    return p.to_json()


def polymatrix_out(m: PolyMatrix):
    """Coefficient arrays for one variable, term lists otherwise."""
    if len(m.variables) == 1:
        return [[m.entry_unipoly(i, j).to_json() for j in range(m.rank)] for i in range(m.rank)]
    return [[x.to_json() for x in row] for row in m.entries]


def roots_out(roots) -> List[dict]:
    return [{"root": str(root), "mult": mult} for root, mult in roots]
