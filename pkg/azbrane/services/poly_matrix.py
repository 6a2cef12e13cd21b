"""Square matrices with polynomial entries, M_r(Q(i)[z_1..z_n])."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import List, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from ..errors import DimensionMismatch
from .exact_linalg import Matrix
from .polynomials import MultiPoly, UniPoly, polynomial_ring
from .scalars import ScalarLike, gr


def _as_entry(value, variables: Tuple[str, ...]) -> MultiPoly:
    if isinstance(value, MultiPoly):
        if value.variables != variables:
            return value.extend(variables)
        return value
    if isinstance(value, UniPoly):
        return MultiPoly.from_unipoly(value, variables)
    return MultiPoly.constant(value, variables)


@dataclass(frozen=True)
class PolyMatrix:
    variables: Tuple[str, ...]
    entries: Tuple[Tuple[MultiPoly, ...], ...]

    # ------------------------------------------------------------ construction
    @classmethod
    def of(cls, grid: Sequence[Sequence], variables: Sequence[str] = ("z",)) -> "PolyMatrix":
        variables = tuple(variables)
        grid = [list(row) for row in grid]
        n = len(grid)
        if any(len(row) != n for row in grid):
            raise DimensionMismatch("polynomial matrices must be square")
        return cls(variables, tuple(tuple(_as_entry(x, variables) for x in row) for row in grid))

    @classmethod
    def from_domain_matrix(cls, variables: Sequence[str], dm: DomainMatrix) -> "PolyMatrix":
        variables = tuple(variables)
        return cls(variables, tuple(tuple(MultiPoly.from_element(variables, x) for x in row) for row in dm.to_list()))

    @classmethod
    def constant(cls, m: Matrix, variables: Sequence[str] = ("z",)) -> "PolyMatrix":
        return cls.of([[m[i, j] for j in range(m.cols)] for i in range(m.rows)], variables)

    @classmethod
    def identity(cls, n: int, variables: Sequence[str] = ("z",)) -> "PolyMatrix":
        return cls.constant(Matrix.identity(n), variables)

    @classmethod
    def scalar(cls, n: int, value, variables: Sequence[str] = ("z",)) -> "PolyMatrix":
        variables = tuple(variables)
        zero = MultiPoly.zero(variables)
        entry = _as_entry(value, variables)
        return cls(variables, tuple(tuple(entry if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, n: int, variables: Sequence[str] = ("z",)) -> "PolyMatrix":
        return cls.scalar(n, 0, variables)

    @cached_property
    def dm(self) -> DomainMatrix:
        """The matrix over the sympy domain QQ_I[variables]."""
        domain = polynomial_ring(self.variables).to_domain()
        return DomainMatrix([[x.element for x in row] for row in self.entries], (self.rank, self.rank), domain)

    # ------------------------------------------------------------ access
    @property
    def rank(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: Tuple[int, int]) -> MultiPoly:
        i, j = index
        return self.entries[i][j]

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.entries for x in row)

    def is_constant(self) -> bool:
        return all(x.is_constant() for row in self.entries for x in row)

    @property
    def degree(self) -> int:
        return max((x.total_degree for row in self.entries for x in row), default=-1)

    def entry_unipoly(self, i: int, j: int, name: str = None) -> UniPoly:
        return self.entries[i][j].to_unipoly(name or self.variables[0])

    # ------------------------------------------------------------ arithmetic
    def _check(self, other: "PolyMatrix"):
        if self.rank != other.rank:
            raise DimensionMismatch(f"ranks differ: {self.rank} vs {other.rank}")
        if self.variables != other.variables:
            raise DimensionMismatch(f"variable sets differ: {self.variables} vs {other.variables}")

    def _map(self, fn) -> "PolyMatrix":
        return PolyMatrix(self.variables, tuple(tuple(fn(x) for x in row) for row in self.entries))

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        return PolyMatrix(
            self.variables,
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)),
        )

    def __neg__(self) -> "PolyMatrix":
        return self._map(lambda x: -x)

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + (-other)

    def scale(self, c) -> "PolyMatrix":
        if isinstance(c, (MultiPoly, UniPoly)):
            c = _as_entry(c, self.variables)
            return self._map(lambda x: x * c)
        c = gr(c)
        return self._map(lambda x: x.scale(c))

    def __mul__(self, other) -> "PolyMatrix":
        if not isinstance(other, PolyMatrix):
            return self.scale(other)
        self._check(other)
        if self.rank == 0:
            return self
        return PolyMatrix.from_domain_matrix(self.variables, self.dm * other.dm)

    def __rmul__(self, other) -> "PolyMatrix":
        return self.scale(other)

    def __pow__(self, exponent: int) -> "PolyMatrix":
        if self.rank == 0:
            return self
        return PolyMatrix.from_domain_matrix(self.variables, self.dm ** exponent)

    def shift(self, c) -> "PolyMatrix":
        """self - c*I for a scalar or polynomial c."""
        return self - PolyMatrix.scalar(self.rank, c, self.variables)

    def commutator(self, other: "PolyMatrix") -> "PolyMatrix":
        return self * other - other * self

    def commutes_with(self, other: "PolyMatrix") -> bool:
        return self.commutator(other).is_zero()

    def trace(self) -> MultiPoly:
        return sum((self.entries[i][i] for i in range(self.rank)), MultiPoly.zero(self.variables))

    def derivative(self, name: str = None) -> "PolyMatrix":
        """Entrywise formal partial derivative."""
        name = name or self.variables[0]
        return self._map(lambda x: x.derivative(name))

    def evaluate(self, point: Sequence[ScalarLike]) -> Matrix:
        return Matrix.of([[x(point) for x in row] for row in self.entries])

    def substitute(self, name: str, value: ScalarLike) -> "PolyMatrix":
        return self._map(lambda x: x.substitute(name, value))

    def coefficient_matrix(self, k: int, name: str = None) -> Matrix:
        """Coefficient of name^k in a univariate polynomial matrix."""
        name = name or self.variables[0]
        return Matrix.of([[x.to_unipoly(name).coefficient(k) for x in row] for row in self.entries])

    def char_poly_coefficients(self) -> List[MultiPoly]:
        """Coefficients c_0..c_n (lowest first) of det(x*I - self), division free."""
        if self.rank == 0:
            return [MultiPoly.constant(1, self.variables)]
        return [MultiPoly.from_element(self.variables, c) for c in reversed(self.dm.charpoly())]

    def det(self) -> MultiPoly:
        """Determinant by Bareiss elimination over the polynomial ring."""
        if self.rank == 0:
            return MultiPoly.constant(1, self.variables)
        return MultiPoly.from_element(self.variables, self.dm.det())

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.entries) + "]"

    def to_json(self) -> dict:
        return {
            "vars": list(self.variables),
            "entries": [[x.to_json() for x in row] for row in self.entries],
        }
