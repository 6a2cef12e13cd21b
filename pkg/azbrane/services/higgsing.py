"""
Deformation-quantized Higgsing on M_2(C[z]).

The D-module condition [lambda*d/dz + A, B] = 0 is the linear ODE
lambda*B' + [A, B] = 0. It has solutions iff (a1-a4)^2 + 4*a2*a3 = 0,
and then four fundamental solutions B_1..B_4 spanning a C^4 of them.
Also here: the truncated Weyl-algebra action and classical spectral curves.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from ..config import WEYL_DEGREE_CAP
from ..errors import (
    DimensionMismatch,
    MalformedInput,
    NonConstantA,
    NotASolution,
    SolvabilityViolated,
)
from ..utils.logger import get_logger
from .exact_linalg import Matrix, block_diag, char_poly
from .poly_matrix import PolyMatrix
from .polynomials import MultiPoly, UniPoly, split_roots
from .scalars import ONE, ZERO, GaussianRational, ScalarLike, gr

logger = get_logger(__name__)

HALF = gr("1/2")


# ====================== Types ======================
@dataclass(frozen=True)
class HiggsProblem:
    a: PolyMatrix
    lam: GaussianRational

    def __post_init__(self):
        if self.a.rank != 2:
            raise DimensionMismatch(f"A must be 2x2, got rank {self.a.rank}")
        if self.a.variables != ("z",):
            raise DimensionMismatch(f"A must be a matrix over C[z], got variables {self.a.variables}")
        lam = gr(self.lam)
        if lam.is_zero():
            raise MalformedInput("lambda must be nonzero")
        object.__setattr__(self, "lam", lam)

    @classmethod
    def of(cls, a: Sequence[Sequence], lam: ScalarLike) -> "HiggsProblem":
        return cls(PolyMatrix.of(a, ("z",)), gr(lam))

    @property
    def a1(self) -> UniPoly:
        return self.a.entry_unipoly(0, 0)

    @property
    def a2(self) -> UniPoly:
        return self.a.entry_unipoly(0, 1)

    @property
    def a3(self) -> UniPoly:
        return self.a.entry_unipoly(1, 0)

    @property
    def a4(self) -> UniPoly:
        return self.a.entry_unipoly(1, 1)


@dataclass(frozen=True)
class HiggsSolution:
    bhat: Tuple[GaussianRational, ...]
    b: PolyMatrix
    b0: Matrix


@dataclass(frozen=True)
class BranchComponent:
    eigenvalue: GaussianRational
    kernel: Tuple[UniPoly, UniPoly]


@dataclass(frozen=True)
class BranchReport:
    case: str
    eigenvalues: Tuple[GaussianRational, ...]
    kernel_ideal: UniPoly
    components: Tuple[BranchComponent, ...]
    char_poly_b: Tuple[UniPoly, ...]
    char_poly_matches: bool
    # case b only
    scalar: Optional[bool] = None
    filtered: Optional[bool] = None


@dataclass(frozen=True)
class WeylTrunc:
    """z and d/dz acting on r-tuples of polynomials of degree < cap."""

    cap: int = WEYL_DEGREE_CAP
    rank: int = 1

    def __post_init__(self):
        if self.cap < 2:
            raise MalformedInput("degree cap must be at least 2")
        if self.rank < 1:
            raise MalformedInput("rank must be positive")

    def z_block(self) -> Matrix:
        grid = [[ZERO] * self.cap for _ in range(self.cap)]
        for k in range(self.cap - 1):
            grid[k + 1][k] = ONE
        return Matrix.of(grid)

    def d_block(self) -> Matrix:
        grid = [[ZERO] * self.cap for _ in range(self.cap)]
        for k in range(1, self.cap):
            grid[k - 1][k] = gr(k)
        return Matrix.of(grid)

    def z_operator(self) -> Matrix:
        return block_diag(*([self.z_block()] * self.rank))

    def d_operator(self) -> Matrix:
        return block_diag(*([self.d_block()] * self.rank))

    def encode(self, polys: Sequence[UniPoly]) -> Tuple[GaussianRational, ...]:
        if len(polys) != self.rank:
            raise DimensionMismatch(f"expected {self.rank} polynomials, got {len(polys)}")
        out = []
        for p in polys:
            if p.degree >= self.cap:
                raise MalformedInput(f"degree {p.degree} exceeds the cap {self.cap}")
            out.extend(p.coefficient(k) for k in range(self.cap))
        return tuple(out)

    def decode(self, vector: Sequence[GaussianRational], var: str = "z") -> Tuple[UniPoly, ...]:
        return tuple(
            UniPoly.of(vector[i * self.cap:(i + 1) * self.cap], var) for i in range(self.rank)
        )

    def act(self, op: Matrix, polys: Sequence[UniPoly]) -> Tuple[UniPoly, ...]:
        var = polys[0].var if polys else "z"
        return self.decode(op.apply(self.encode(polys)), var)


# ====================== Weyl algebra ======================
def weyl_commutator_check(w: WeylTrunc) -> bool:
    """[d, z] is the identity on every polynomial of degree <= cap - 2."""
    d, z = w.d_operator(), w.z_operator()
    bracket = d * z - z * d
    for block in range(w.rank):
        for k in range(w.cap - 1):
            col = block * w.cap + k
            for row in range(bracket.rows):
                expected = ONE if row == col else ZERO
                if bracket[row, col] != expected:
                    return False
    return True


# ====================== Higgsing ODE ======================
def solvability_check(p: HiggsProblem) -> bool:
    delta = p.a1 - p.a4
    return (delta * delta + (p.a2 * p.a3).scale(gr(4))).is_zero()


def closed_form_solutions(p: HiggsProblem) -> Tuple[PolyMatrix, ...]:
    """The four closed-form fundamental solutions, without checking their hypotheses."""
    z = UniPoly.x("z")
    z2 = z * z
    li = p.lam.inverse()
    li2 = li * li
    a2, a3 = p.a2, p.a3
    delta = p.a1 - p.a4
    half_delta = delta.scale(HALF)
    a23 = a2 * a3
    one = UniPoly.constant(1, "z")

    b1 = [
        [one + (a23 * z2).scale(li2), (a2 * z).scale(li) - (half_delta * a2 * z2).scale(li2)],
        [-(a3 * z).scale(li) - (half_delta * a3 * z2).scale(li2), -(a23 * z2).scale(li2)],
    ]
    b2 = [
        [(a3 * z).scale(li) - (half_delta * a3 * z2).scale(li2), one - (delta * z).scale(li) - (a23 * z2).scale(li2)],
        [-(a3 * a3 * z2).scale(li2), -(a3 * z).scale(li) + (half_delta * a3 * z2).scale(li2)],
    ]
    b3 = [
        [-(a2 * z).scale(li) - (half_delta * a2 * z2).scale(li2), -(a2 * a2 * z2).scale(li2)],
        [one + (delta * z).scale(li) - (a23 * z2).scale(li2), (a2 * z).scale(li) + (half_delta * a2 * z2).scale(li2)],
    ]
    b4 = [
        [-(a23 * z2).scale(li2), -(a2 * z).scale(li) + (half_delta * a2 * z2).scale(li2)],
        [(a3 * z).scale(li) + (half_delta * a3 * z2).scale(li2), one + (a23 * z2).scale(li2)],
    ]
    return tuple(PolyMatrix.of(grid, ("z",)) for grid in (b1, b2, b3, b4))


def ode_residual(p: HiggsProblem, b: PolyMatrix) -> PolyMatrix:
    """lambda * dB/dz + AB - BA."""
    if b.rank != p.a.rank or b.variables != p.a.variables:
        raise DimensionMismatch("B must be a 2x2 matrix over C[z]")
    return b.derivative("z").scale(p.lam) + p.a * b - b * p.a


def fundamental_solutions(p: HiggsProblem) -> Tuple[PolyMatrix, ...]:
    if not solvability_check(p):
        raise SolvabilityViolated("(a1-a4)^2 + 4*a2*a3 is not zero")
    if not p.a.is_constant():
        raise NonConstantA("closed-form solutions hold for constant A only")
    solutions = closed_form_solutions(p)
    for index, b in enumerate(solutions, start=1):
        if not ode_residual(p, b).is_zero():
            raise NotASolution(f"fundamental solution B{index} has a nonzero residual")
    return solutions


def solve(p: HiggsProblem, bhat: Sequence[ScalarLike]) -> HiggsSolution:
    bhat = tuple(gr(b) for b in bhat)
    if len(bhat) != 4:
        raise DimensionMismatch(f"bhat needs 4 coordinates, got {len(bhat)}")
    b = PolyMatrix.zeros(2, ("z",))
    for coeff, basis in zip(bhat, fundamental_solutions(p)):
        b = b + basis.scale(coeff)
    b0 = Matrix.of([[bhat[0], bhat[1]], [bhat[2], bhat[3]]])
    return HiggsSolution(bhat, b, b0)


def _primitive_kernel(m: PolyMatrix) -> Tuple[UniPoly, UniPoly]:
    """Polynomial generator of the kernel of a rank-one 2x2 matrix over C[z]."""
    rows = [(m.entry_unipoly(i, 0), m.entry_unipoly(i, 1)) for i in range(2)]
    first, second = next((row for row in rows if not (row[0].is_zero() and row[1].is_zero())))
    vector = (-second, first)
    common = vector[0].gcd(vector[1])
    vector = tuple(v // common for v in vector)
    lead = next(v for v in vector if not v.is_zero()).leading()
    return tuple(v.scale(lead.inverse()) for v in vector)


def _b_char_poly(b: PolyMatrix) -> Tuple[UniPoly, ...]:
    return tuple(c.to_unipoly("z") for c in b.char_poly_coefficients())


def classify_deformation(p: HiggsProblem, s: HiggsSolution) -> BranchReport:
    """Eigenvalue-driven branch report: distinct eigenvalues (case a) or a double one (case b)."""
    if not ode_residual(p, s.b).is_zero():
        raise NotASolution("B does not solve the Higgsing equation")
    b0_poly = char_poly(s.b0, "v")
    roots = split_roots(b0_poly)
    char_b = _b_char_poly(s.b)
    matches = all(
        c.degree <= 0 and c.coefficient(0) == b0_poly.coefficient(k) for k, c in enumerate(char_b)
    )
    if len(roots) == 2:
        components = tuple(
            BranchComponent(nu, _primitive_kernel(s.b.shift(nu))) for nu, _ in roots
        )
        ideal = UniPoly.from_roots([nu for nu, _ in roots], "v")
        logger.debug("higgsing: case a, eigenvalues %s", [str(nu) for nu, _ in roots])
        return BranchReport("a", tuple(nu for nu, _ in roots), ideal, components, char_b, matches)

    nu = roots[0][0]
    nilpotent = s.b.shift(nu)
    if nilpotent.is_zero():
        e1 = (UniPoly.constant(1, "z"), UniPoly.zero("z"))
        e2 = (UniPoly.zero("z"), UniPoly.constant(1, "z"))
        components = (BranchComponent(nu, e1), BranchComponent(nu, e2))
        ideal = UniPoly.from_roots([nu], "v")
        scalar, filtered = True, False
    else:
        components = (BranchComponent(nu, _primitive_kernel(nilpotent)),)
        ideal = UniPoly.from_roots([nu, nu], "v")
        scalar, filtered = False, (nilpotent * nilpotent).is_zero()
    logger.debug("higgsing: case b, eigenvalue %s, scalar=%s", nu, scalar)
    return BranchReport("b", (nu,), ideal, components, char_b, matches, scalar, filtered)


# ====================== Spectral curves ======================
def spectral_curve(phi: PolyMatrix) -> MultiPoly:
    """det(lambda*I - phi) as a polynomial in phi's variables and lambda."""
    if "lambda" in phi.variables:
        raise MalformedInput("the Higgs field may not use the variable name 'lambda'")
    variables = phi.variables + ("lambda",)
    lam = MultiPoly.variable("lambda", variables)
    curve = MultiPoly.zero(variables)
    for k, c in enumerate(phi.char_poly_coefficients()):
        curve = curve + c.extend(variables) * lam ** k
    return curve


def spectral_containment(phi: PolyMatrix, point: Sequence[ScalarLike]) -> List[GaussianRational]:
    """
    Eigenvalues of phi at a point, each checked to lie on the spectral curve
    over that point. Raises NotASolution if one does not.
    """
    point = tuple(gr(c) for c in point)
    curve = spectral_curve(phi)
    eigenvalues = [root for root, _ in split_roots(char_poly(phi.evaluate(point)))]
    for ev in eigenvalues:
        if not curve(point + (ev,)).is_zero():
            raise NotASolution(f"eigenvalue {ev} is off the spectral curve")
    return eigenvalues
