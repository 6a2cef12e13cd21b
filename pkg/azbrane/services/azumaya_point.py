"""
Morphisms from an Azumaya point (M_r(C), C^r) to affine targets.

A morphism to Spec C[z_1..z_k]/(h_1..h_m) is a k-tuple of pairwise
commuting r x r matrices on which every relator vanishes.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from ..config import (
    CONJUGACY_RANDOM_TRIALS,
    CONJUGACY_SYMBOLIC_MAX_RANK,
    DEFAULT_DEGREE_BOUND,
    DEFAULT_SEED,
)
from ..errors import ArityMismatch, DimensionMismatch, NotCommuting
from ..utils.logger import get_logger
from .exact_linalg import (
    Matrix,
    char_poly,
    commutator,
    det,
    kernel_basis,
    matrix_power,
    min_poly,
    rank,
    restrict,
    rref,
)
from .poly_matrix import PolyMatrix
from .polynomials import Exponents, MultiPoly, UniPoly, monomials, split_roots, try_split_roots
from .scalars import ZERO, GaussianRational, gr

logger = get_logger(__name__)

Point = Tuple[GaussianRational, ...]


def default_variables(k: int) -> Tuple[str, ...]:
    return ("z",) if k == 1 else tuple(f"z{i + 1}" for i in range(k))


def point_key(point: Point) -> tuple:
    return tuple(c.sort_key() for c in point)


# ====================== Types ======================
@dataclass(frozen=True)
class AffinePresentation:
    variables: Tuple[str, ...]
    relators: Tuple[MultiPoly, ...] = ()

    def __post_init__(self):
        variables = tuple(self.variables)
        object.__setattr__(self, "variables", variables)
        fixed = []
        for h in self.relators:
            if h.variables != variables:
                h = h.extend(variables)
            fixed.append(h)
        object.__setattr__(self, "relators", tuple(fixed))


@dataclass(frozen=True)
class RepPoint:
    """A tuple of r x r matrices, one per target variable."""

    matrices: Tuple[Matrix, ...]
    variables: Tuple[str, ...] = ()

    def __post_init__(self):
        matrices = tuple(self.matrices)
        variables = tuple(self.variables) or default_variables(len(matrices))
        if len(variables) != len(matrices):
            raise ArityMismatch(f"{len(matrices)} matrices for {len(variables)} variables")
        if matrices:
            r = matrices[0].rows
            for m in matrices:
                if not m.is_square or m.rows != r:
                    raise DimensionMismatch("all matrices of a point must be square of the same size")
        object.__setattr__(self, "matrices", matrices)
        object.__setattr__(self, "variables", variables)

    @classmethod
    def single(cls, m: Matrix, var: str = "z") -> "RepPoint":
        return cls((m,), (var,))

    @property
    def rank(self) -> int:
        return self.matrices[0].rows if self.matrices else 0

    @property
    def arity(self) -> int:
        return len(self.matrices)

    def commutes(self) -> bool:
        return all(
            commutator(a, b).is_zero()
            for i, a in enumerate(self.matrices)
            for b in self.matrices[i + 1:]
        )

    def conjugate_by(self, g: Matrix, g_inv: Matrix) -> "RepPoint":
        return RepPoint(tuple(g * m * g_inv for m in self.matrices), self.variables)


@dataclass(frozen=True)
class SupportLengthData:
    entries: Tuple[Tuple[Point, int], ...]

    @property
    def total(self) -> int:
        return sum(length for _, length in self.entries)

    def points(self) -> List[Point]:
        return [p for p, _ in self.entries]

    def projection(self, coordinate: int) -> List[Tuple[GaussianRational, int]]:
        """Multiset image of the support under one coordinate."""
        acc = {}
        for point, length in self.entries:
            acc[point[coordinate]] = acc.get(point[coordinate], 0) + length
        return sorted(acc.items(), key=lambda item: item[0].sort_key())


@dataclass(frozen=True)
class PushforwardEntry:
    point: Point
    length: int
    filtration_ranks: Tuple[int, ...]

    @property
    def partition(self) -> Tuple[int, ...]:
        """Jordan partition of the local nilpotent action, read off the ranks."""
        ranks = (self.length,) + self.filtration_ranks + (0,)
        at_least = [ranks[j] - ranks[j + 1] for j in range(len(ranks) - 1)]
        return tuple(
            sum(1 for count in at_least if count > i) for i in range(at_least[0] if at_least else 0)
        )


@dataclass(frozen=True)
class PushforwardModule:
    entries: Tuple[PushforwardEntry, ...]

    def support(self) -> SupportLengthData:
        return SupportLengthData(tuple((e.point, e.length) for e in self.entries))


@dataclass(frozen=True)
class HilbertChowResult:
    char_poly: UniPoly
    roots: Optional[Tuple[Tuple[GaussianRational, int], ...]]

    @property
    def split(self) -> bool:
        return self.roots is not None


@dataclass(frozen=True)
class JointSpace:
    """Joint generalized eigenspace: its point, basis in C^r and restricted action."""

    point: Point
    basis: Matrix
    restricted: Tuple[Matrix, ...]

    @property
    def dimension(self) -> int:
        return self.basis.cols


@dataclass(frozen=True)
class SurrogateAlgebra:
    """A_phi = C[m_1..m_k] inside M_r(C), spanned by its standard monomials."""

    variables: Tuple[str, ...]
    standard_monomials: Tuple[Exponents, ...]

    @property
    def dimension(self) -> int:
        return len(self.standard_monomials)


class ConjugacyStatus(str, Enum):
    CONJUGATE = "conjugate"
    NOT_CONJUGATE = "not-conjugate"
    PROBABLY_NOT_CONJUGATE = "probably-not-conjugate"


# ====================== Membership and image ======================
def _evaluate(h: MultiPoly, t: RepPoint) -> Matrix:
    return h.evaluate_in(t.matrices, Matrix.identity(t.rank))


def rep_check(t: RepPoint, pres: Optional[AffinePresentation] = None) -> bool:
    """True iff the tuple commutes pairwise and every relator vanishes on it."""
    if pres is not None and len(pres.variables) != t.arity:
        raise ArityMismatch(f"presentation has {len(pres.variables)} variables, point has {t.arity} matrices")
    if not t.commutes():
        return False
    if pres is None:
        return True
    return all(_evaluate(h, t).is_zero() for h in pres.relators)


def _require_commuting(t: RepPoint):
    if not t.commutes():
        raise NotCommuting("the matrices of the point do not commute")


def image_ideal_univar(t: RepPoint) -> UniPoly:
    """Generator of Ker(phi#) for a point with one coordinate: the minimal polynomial."""
    if t.arity != 1:
        raise ArityMismatch(f"image_ideal_univar needs one matrix, got {t.arity}")
    return min_poly(t.matrices[0], t.variables[0])


def _monomial_values(t: RepPoint, exps_list: Sequence[Exponents]) -> List[Matrix]:
    one = Matrix.identity(t.rank)
    powers = {}

    def power(i: int, k: int) -> Matrix:
        if (i, k) not in powers:
            powers[(i, k)] = one if k == 0 else power(i, k - 1) * t.matrices[i]
        return powers[(i, k)]

    values = []
    for exps in exps_list:
        value = one
        for i, k in enumerate(exps):
            if k:
                value = value * power(i, k)
        values.append(value)
    return values


def vanishing_ideal(t: RepPoint, degree_bound: Optional[int] = None) -> List[MultiPoly]:
    """
    Basis of {f : deg f <= D, f(t) = 0}.

    Each basis element is monic in its leading (grlex) monomial.
    """
    _require_commuting(t)
    bound = degree_bound if degree_bound is not None else (DEFAULT_DEGREE_BOUND or t.rank)
    exps_list = monomials(t.arity, bound)
    columns = [m.vec() for m in _monomial_values(t, exps_list)]
    evaluation = Matrix.from_columns(columns) if t.rank else Matrix(0, len(columns), ())
    basis = []
    for v in kernel_basis(evaluation):
        poly = MultiPoly.from_dict(t.variables, {e: c for e, c in zip(exps_list, v) if not c.is_zero()})
        basis.append(poly.scale(poly.leading_term()[1].inverse()))
    logger.debug("vanishing_ideal: D=%d, %d monomials, kernel dim %d", bound, len(exps_list), len(basis))
    return basis


def surrogate_algebra(t: RepPoint) -> SurrogateAlgebra:
    """Standard-monomial basis of the commutative algebra generated by the tuple."""
    _require_commuting(t)
    degree, previous = 0, -1
    while True:
        exps_list = monomials(t.arity, degree)
        columns = [m.vec() for m in _monomial_values(t, exps_list)]
        _, pivots = rref(Matrix.from_columns(columns))
        if len(pivots) == previous:
            break
        previous, degree = len(pivots), degree + 1
    standard = tuple(exps_list[p] for p in pivots)
    return SurrogateAlgebra(t.variables, standard)


# ====================== Support and push-forward ======================
def joint_decomposition(t: RepPoint) -> List[JointSpace]:
    """
    Split C^r into joint generalized eigenspaces by iterated splitting:
    along the spectrum of m_1, then of m_2 restricted, and so on.
    """
    _require_commuting(t)
    spaces = [JointSpace((), Matrix.identity(t.rank), t.matrices)]
    for i in range(t.arity):
        refined = []
        for space in spaces:
            local = space.restricted[i]
            for root, mult in split_roots(char_poly(local)):
                kernel = kernel_basis(matrix_power(local.shift(root), mult))
                sub = Matrix.from_columns(kernel)
                refined.append(
                    JointSpace(
                        space.point + (root,),
                        space.basis * sub,
                        tuple(restrict(m, sub) for m in space.restricted),
                    )
                )
        spaces = refined
    return sorted(spaces, key=lambda s: point_key(s.point))


def support_length(t: RepPoint) -> SupportLengthData:
    return SupportLengthData(tuple((s.point, s.dimension) for s in joint_decomposition(t)))


def local_nilpotent(space: JointSpace) -> Matrix:
    """N = sum_i c_i (m_i - p_i I) on the joint space, with c_i = i (1-based)."""
    n = space.dimension
    action = Matrix.zeros(n)
    for i, (m, p) in enumerate(zip(space.restricted, space.point)):
        action = action + m.shift(p).scale(i + 1)
    return action


def nilpotent_ranks(n: Matrix) -> Tuple[int, ...]:
    """rank(N^j) for j = 1, 2, ... while nonzero."""
    ranks = []
    power = n
    while True:
        current = rank(power)
        if current == 0:
            break
        ranks.append(current)
        power = power * n
    return tuple(ranks)


def pushforward(t: RepPoint) -> PushforwardModule:
    entries = []
    for space in joint_decomposition(t):
        entries.append(PushforwardEntry(space.point, space.dimension, nilpotent_ranks(local_nilpotent(space))))
    return PushforwardModule(tuple(entries))


def hilbert_chow(m: Matrix) -> HilbertChowResult:
    """det(lambda - m) with its root multiset when it splits over Q(i)."""
    poly = char_poly(m)
    roots = try_split_roots(poly)
    return HilbertChowResult(poly, tuple(roots) if roots is not None else None)


def higgsing_family(a, b) -> PushforwardModule:
    """Push-forward of diag(a, b): two length-1 points, or one length-2 point when a = b."""
    return pushforward(RepPoint.single(Matrix.diag([gr(a), gr(b)])))


# ====================== GL_r action ======================
def _check_comparable(t1: RepPoint, t2: RepPoint):
    if t1.arity != t2.arity:
        raise ArityMismatch(f"arities differ: {t1.arity} vs {t2.arity}")
    if t1.rank != t2.rank:
        raise DimensionMismatch(f"ranks differ: {t1.rank} vs {t2.rank}")


def intertwiner_space(t1: RepPoint, t2: RepPoint) -> List[Matrix]:
    """Basis of {g : g m_i(1) = m_i(2) g for all i}."""
    _check_comparable(t1, t2)
    r = t1.rank
    rows = []
    for m1, m2 in zip(t1.matrices, t2.matrices):
        for a in range(r):
            for b in range(r):
                row = [ZERO] * (r * r)
                for c in range(r):
                    row[a * r + c] = row[a * r + c] + m1[c, b]
                    row[c * r + b] = row[c * r + b] - m2[a, c]
                rows.append(tuple(row))
    system = Matrix(len(rows), r * r, tuple(rows))
    return [
        Matrix.of([[v[i * r + j] for j in range(r)] for i in range(r)])
        for v in kernel_basis(system)
    ]


def _generic_determinant(basis: List[Matrix]) -> MultiPoly:
    names = tuple(f"t{j + 1}" for j in range(len(basis)))
    r = basis[0].rows
    grid = [
        [
            MultiPoly.from_dict(names, {
                tuple(1 if jj == j else 0 for jj in range(len(basis))): k[a, b]
                for j, k in enumerate(basis)
                if not k[a, b].is_zero()
            })
            for b in range(r)
        ]
        for a in range(r)
    ]
    return PolyMatrix.of(grid, names).det()


def conjugacy_status(
    t1: RepPoint,
    t2: RepPoint,
    seed: int = DEFAULT_SEED,
    symbolic_max_rank: int = CONJUGACY_SYMBOLIC_MAX_RANK,
    trials: int = CONJUGACY_RANDOM_TRIALS,
) -> ConjugacyStatus:
    """Decide whether the intertwiner space of t1, t2 contains an invertible element."""
    _check_comparable(t1, t2)
    if t1.rank == 0:
        return ConjugacyStatus.CONJUGATE
    basis = intertwiner_space(t1, t2)
    if not basis:
        return ConjugacyStatus.NOT_CONJUGATE
    # isomorphic modules have equal Hom and End dimensions
    if not (len(basis) == len(intertwiner_space(t1, t1)) == len(intertwiner_space(t2, t2))):
        return ConjugacyStatus.NOT_CONJUGATE
    if t1.rank <= symbolic_max_rank:
        logger.debug("conjugacy: symbolic determinant over %d intertwiners", len(basis))
        nonzero = not _generic_determinant(basis).is_zero()
        return ConjugacyStatus.CONJUGATE if nonzero else ConjugacyStatus.NOT_CONJUGATE
    logger.debug("conjugacy: %d randomized evaluations, seed %d", trials, seed)
    rng = random.Random(seed)
    for _ in range(trials):
        g = Matrix.zeros(t1.rank)
        for k in basis:
            g = g + k.scale(rng.randint(-10**6, 10**6))
        if not det(g).is_zero():
            return ConjugacyStatus.CONJUGATE
    return ConjugacyStatus.PROBABLY_NOT_CONJUGATE


def is_conjugate(t1: RepPoint, t2: RepPoint, **kwargs) -> bool:
    return conjugacy_status(t1, t2, **kwargs) is ConjugacyStatus.CONJUGATE
