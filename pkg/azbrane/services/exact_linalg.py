"""
Exact linear algebra over Q(i).

Matrices are immutable wrappers around sympy DomainMatrix over QQ_I;
every routine is a pure function. Rank and determinants come from
fraction-free (Bareiss) elimination, kernels from the reduced row
echelon form and characteristic polynomials from the division-free
Berkowitz recurrence.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import List, Sequence, Tuple

from sympy import QQ_I
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from ..errors import DimensionMismatch, SingularMatrix
from .polynomials import UniPoly
from .scalars import ONE, ZERO, GaussianRational, ScalarLike, gr

Vector = Tuple[GaussianRational, ...]


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: Tuple[Tuple[GaussianRational, ...], ...]

    # ------------------------------------------------------------ construction
    @classmethod
    def of(cls, grid: Sequence[Sequence[ScalarLike]]) -> "Matrix":
        grid = [list(row) for row in grid]
        if not grid:
            return cls(0, 0, ())
        cols = len(grid[0])
        if any(len(row) != cols for row in grid):
            raise DimensionMismatch("ragged matrix rows")
        return cls(len(grid), cols, tuple(tuple(gr(x) for x in row) for row in grid))

    @classmethod
    def from_domain_matrix(cls, dm: DomainMatrix) -> "Matrix":
        rows, cols = dm.shape
        return cls(rows, cols, tuple(tuple(GaussianRational.wrap(x) for x in row) for row in dm.to_list()))

    @classmethod
    def zeros(cls, rows: int, cols: int = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, tuple((ZERO,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.scalar(n, ONE)

    @classmethod
    def scalar(cls, n: int, c: ScalarLike) -> "Matrix":
        c = gr(c)
        return cls(n, n, tuple(tuple(c if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def diag(cls, values: Sequence[ScalarLike]) -> "Matrix":
        values = [gr(v) for v in values]
        n = len(values)
        return cls(n, n, tuple(tuple(values[i] if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[ScalarLike]], rows: int = None) -> "Matrix":
        if not columns:
            return cls.zeros(rows or 0, 0)
        n = len(columns[0])
        return cls(n, len(columns), tuple(tuple(gr(col[i]) for col in columns) for i in range(n)))

    @classmethod
    def jordan_block(cls, size: int, eigenvalue: ScalarLike = 0) -> "Matrix":
        ev = gr(eigenvalue)
        return cls(
            size,
            size,
            tuple(
                tuple(ev if i == j else (ONE if j == i + 1 else ZERO) for j in range(size))
                for i in range(size)
            ),
        )

    @classmethod
    def companion(cls, p: UniPoly) -> "Matrix":
        """Companion matrix of a monic polynomial (subdiagonal ones, last column -coeffs)."""
        p = p.monic()
        n = p.degree
        grid = [[ZERO] * n for _ in range(n)]
        for i in range(1, n):
            grid[i][i - 1] = ONE
        for i in range(n):
            grid[i][n - 1] = -p.coefficient(i)
        return cls.of(grid)

    @cached_property
    def dm(self) -> DomainMatrix:
        return DomainMatrix([[x.value for x in row] for row in self.entries], (self.rows, self.cols), QQ_I)

    # ------------------------------------------------------------ access
    def __getitem__(self, index: Tuple[int, int]) -> GaussianRational:
        i, j = index
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def vec(self) -> Vector:
        """Row-major flattening."""
        return tuple(x for row in self.entries for x in row)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.entries for x in row)

    def diagonal(self) -> Vector:
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))

    # ------------------------------------------------------------ arithmetic
    def _check_same_shape(self, other: "Matrix"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch(f"{self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix.from_domain_matrix(self.dm + other.dm)

    def __neg__(self) -> "Matrix":
        return Matrix.from_domain_matrix(-self.dm)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix.from_domain_matrix(self.dm - other.dm)

    def scale(self, c: ScalarLike) -> "Matrix":
        c = gr(c)
        return Matrix(self.rows, self.cols, tuple(tuple(c * x for x in row) for row in self.entries))

    def __mul__(self, other) -> "Matrix":
        if not isinstance(other, Matrix):
            return self.scale(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        if 0 in (self.rows, self.cols, other.cols):
            return Matrix.zeros(self.rows, other.cols)
        return Matrix.from_domain_matrix(self.dm * other.dm)

    def __rmul__(self, other) -> "Matrix":
        return self.scale(other)

    __matmul__ = __mul__

    def __pow__(self, exponent: int) -> "Matrix":
        return matrix_power(self, exponent)

    def apply(self, v: Sequence[ScalarLike]) -> Vector:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.rows}x{self.cols} matrix")
        return (self * Matrix.from_columns([list(v)], self.cols)).column(0)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(self.columns()))

    def trace(self) -> GaussianRational:
        _require_square(self)
        return sum(self.diagonal(), ZERO)

    def shift(self, c: ScalarLike) -> "Matrix":
        """self - c*I."""
        _require_square(self)
        return self - Matrix.scalar(self.rows, c)

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.entries) + "]"

    def to_json(self) -> list:
        return [[x.compact() for x in row] for row in self.entries]


def _require_square(m: Matrix):
    if not m.is_square:
        raise DimensionMismatch(f"expected a square matrix, got {m.rows}x{m.cols}")


def matrix_power(m: Matrix, exponent: int) -> Matrix:
    _require_square(m)
    if exponent < 0:
        return matrix_power(inverse(m), -exponent)
    if m.rows == 0:
        return m
    return Matrix.from_domain_matrix(m.dm ** exponent)


def block_diag(*blocks: Matrix) -> Matrix:
    n = sum(b.rows for b in blocks)
    c = sum(b.cols for b in blocks)
    grid = [[ZERO] * c for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                grid[r0 + i][c0 + j] = b[i, j]
        r0, c0 = r0 + b.rows, c0 + b.cols
    return Matrix.of(grid)


def hstack(*blocks: Matrix) -> Matrix:
    if any(b.rows != blocks[0].rows for b in blocks):
        raise DimensionMismatch("hstack of matrices with different row counts")
    return Matrix.from_domain_matrix(blocks[0].dm.hstack(*(b.dm for b in blocks[1:])))


def vstack(*blocks: Matrix) -> Matrix:
    if any(b.cols != blocks[0].cols for b in blocks):
        raise DimensionMismatch("vstack of matrices with different column counts")
    return Matrix.from_domain_matrix(blocks[0].dm.vstack(*(b.dm for b in blocks[1:])))


def commutator(a: Matrix, b: Matrix) -> Matrix:
    """ab - ba."""
    _require_square(a)
    _require_square(b)
    if a.rows != b.rows:
        raise DimensionMismatch(f"commutator of {a.rows}x{a.rows} and {b.rows}x{b.rows}")
    return a * b - b * a


# ====================== Elimination ======================
def rank(m: Matrix) -> int:
    """Rank by fraction-free (Bareiss) elimination."""
    if m.rows == 0 or m.cols == 0:
        return 0
    _, _, pivots = m.dm.rref_den(method="FF")
    return len(pivots)


def rref(m: Matrix) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns."""
    if m.rows == 0 or m.cols == 0:
        return m, []
    reduced, pivots = m.dm.rref()
    return Matrix.from_domain_matrix(reduced), list(pivots)


def rank_naive(m: Matrix) -> int:
    """Rank from plain Gauss-Jordan elimination with division."""
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(m.dm.rref(method="GJ")[1])


def kernel_basis(m: Matrix) -> List[Vector]:
    """Basis of the right null space, one vector per free column (1 there)."""
    if m.cols == 0:
        return []
    if m.rows == 0:
        return list(Matrix.identity(m.cols).entries)
    reduced, pivots = m.dm.rref()
    null = reduced.nullspace_from_rref(pivots)
    if null.shape[0] == 0:
        return []
    return list(Matrix.from_domain_matrix(null).entries)


def solve(a: Matrix, b: Matrix) -> Matrix:
    """
    A solution X of a X = b (free variables set to zero).

    Raises SingularMatrix when the system is inconsistent.
    """
    if a.rows != b.rows:
        raise DimensionMismatch(f"solve with {a.rows} equations and right side of {b.rows} rows")
    reduced, pivots = rref(hstack(a, b))
    for p in pivots:
        if p >= a.cols:
            raise SingularMatrix("inconsistent linear system")
    grid = [[ZERO] * b.cols for _ in range(a.cols)]
    for i, p in enumerate(pivots):
        for j in range(b.cols):
            grid[p][j] = reduced[i, a.cols + j]
    return Matrix.from_columns([[grid[i][j] for i in range(a.cols)] for j in range(b.cols)], a.cols)


def inverse(m: Matrix) -> Matrix:
    _require_square(m)
    if m.rows == 0:
        return m
    try:
        return Matrix.from_domain_matrix(m.dm.inv())
    except DMNonInvertibleMatrixError:
        raise SingularMatrix("matrix is not invertible")


def det(m: Matrix) -> GaussianRational:
    """Determinant by Bareiss elimination."""
    _require_square(m)
    if m.rows == 0:
        return ONE
    return GaussianRational.wrap(m.dm.det())


def restrict(m: Matrix, basis: Matrix) -> Matrix:
    """
    Matrix X of m on the invariant subspace spanned by the columns of
    `basis`, i.e. m * basis = basis * X.
    """
    return solve(basis, m * basis)


# ====================== Polynomials of a matrix ======================
def char_poly(m: Matrix, var: str = "lambda") -> UniPoly:
    """det(var*I - m), division free."""
    _require_square(m)
    if m.rows == 0:
        return UniPoly.constant(1, var)
    return UniPoly(var, tuple(GaussianRational.wrap(c) for c in reversed(m.dm.charpoly())))


def poly_eval(p: UniPoly, m: Matrix) -> Matrix:
    """p(m) by Horner's rule."""
    _require_square(m)
    acc = Matrix.zeros(m.rows)
    for c in reversed(p.coeffs):
        acc = acc * m + Matrix.scalar(m.rows, c)
    return acc


def min_poly(m: Matrix, var: str = "z") -> UniPoly:
    """Monic generator of {f : f(m) = 0}: first linear relation among I, m, m^2, ..."""
    _require_square(m)
    n = m.rows
    if n == 0:
        return UniPoly.constant(1, var)
    powers = [Matrix.identity(n).vec()]
    current = Matrix.identity(n)
    for _ in range(n):
        current = current * m
        powers.append(current.vec())
        relations = kernel_basis(Matrix.from_columns(powers))
        if relations:
            return UniPoly(var, relations[0]).monic()
    return char_poly(m, var)
