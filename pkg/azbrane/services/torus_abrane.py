"""
A-type D-branes on the flat torus C/(Z + Z*tau).

Morphisms from an Azumaya circle are kept combinatorial: each component
covers the circle with degree d, wraps a closed geodesic m times in a
primitive class (p0, q0), and carries a Chan-Paton fiber of rank fr.
Homology bookkeeping, calibration, amalgamation and the special Lagrangian
representatives live here.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Tuple

from ..errors import (
    GeometryMismatch,
    InvalidGeometry,
    InvalidTarget,
    MalformedInput,
    MalformedProfile,
    ZeroClass,
)
from ..utils.logger import get_logger
from .orbit_poset import OrbitLabel, is_complete_flag, is_unfiltered, orbit_closure_contains
from .scalars import ZERO, GaussianRational, ScalarLike, gr

logger = get_logger(__name__)

INTERVAL = "interval"
JUNCTION = "junction"


# ====================== Geometry and classes ======================
@dataclass(frozen=True)
class TorusGeometry:
    tau: GaussianRational

    def __post_init__(self):
        tau = gr(self.tau)
        if tau.im <= 0:
            raise InvalidGeometry(f"tau must lie in the upper half plane, got {tau}")
        object.__setattr__(self, "tau", tau)


@dataclass(frozen=True, order=True)
class HomologyClass:
    p: int
    q: int

    def is_zero(self) -> bool:
        return self.p == 0 and self.q == 0

    def divisibility(self) -> int:
        return math.gcd(self.p, self.q)

    def primitive(self) -> Tuple["HomologyClass", int]:
        """(primitive class, multiple); the zero class maps to itself with multiple 0."""
        g = self.divisibility()
        if g == 0:
            return self, 0
        return HomologyClass(self.p // g, self.q // g), g

    def __add__(self, other: "HomologyClass") -> "HomologyClass":
        return HomologyClass(self.p + other.p, self.q + other.q)

    def __neg__(self) -> "HomologyClass":
        return HomologyClass(-self.p, -self.q)

    def scale(self, k: int) -> "HomologyClass":
        return HomologyClass(k * self.p, k * self.q)

    def to_json(self) -> list:
        return [self.p, self.q]


@dataclass(frozen=True)
class SurrogateClass:
    """(r; p, q) in H_1(X x C; Z) with X the circle."""

    r: int
    p: int
    q: int

    @property
    def projected(self) -> HomologyClass:
        return HomologyClass(self.p, self.q)

    def __add__(self, other: "SurrogateClass") -> "SurrogateClass":
        return SurrogateClass(self.r + other.r, self.p + other.p, self.q + other.q)

    def to_json(self) -> list:
        return [self.r, self.p, self.q]


def intersection(c1: HomologyClass, c2: HomologyClass) -> int:
    return c1.p * c2.q - c2.p * c1.q


def direction(c: HomologyClass, g: TorusGeometry) -> GaussianRational:
    """Primitive lattice vector p0 + q0*tau calibrating the geodesics of class c."""
    if c.is_zero():
        raise ZeroClass("the zero class has no direction")
    prim, _ = c.primitive()
    return gr(prim.p) + g.tau * prim.q


def reduce_offset(offset: ScalarLike, g: TorusGeometry) -> GaussianRational:
    """Representative of offset modulo Z + Z*tau in the fundamental parallelogram."""
    offset = gr(offset)
    y = offset.im / g.tau.im
    x = offset.re - y * g.tau.re
    x, y = x - math.floor(x), y - math.floor(y)
    return GaussianRational(x) + g.tau * GaussianRational(y)


# ====================== Morphisms ======================
@dataclass(frozen=True)
class Component:
    d: int
    klass: HomologyClass
    wrap: int = 1
    offset: GaussianRational = ZERO
    fiber_rank: int = 1

    def __post_init__(self):
        if self.d < 1 or self.fiber_rank < 1 or self.wrap < 1:
            raise MalformedInput("cover degree, wrap and fiber rank must be positive")
        total = self.klass.scale(self.wrap)
        prim, m = total.primitive()
        object.__setattr__(self, "klass", prim)
        object.__setattr__(self, "wrap", m or 1)
        object.__setattr__(self, "offset", gr(self.offset))

    @property
    def wrap_class(self) -> HomologyClass:
        return self.klass.scale(self.wrap)

    @property
    def rank(self) -> int:
        return self.d * self.fiber_rank

    def surrogate_class(self) -> SurrogateClass:
        wc = self.wrap_class.scale(self.fiber_rank)
        return SurrogateClass(self.rank, wc.p, wc.q)


@dataclass(frozen=True)
class ProfileLabel:
    kind: str
    orbit: OrbitLabel

    def __post_init__(self):
        if self.kind not in (INTERVAL, JUNCTION):
            raise MalformedProfile(f"unknown profile label kind {self.kind!r}")


@dataclass(frozen=True)
class AzCircleMorphism:
    geometry: TorusGeometry
    components: Tuple[Component, ...] = ()
    profile: Optional[Tuple[ProfileLabel, ...]] = None

    def __post_init__(self):
        object.__setattr__(
            self,
            "components",
            tuple(replace(c, offset=reduce_offset(c.offset, self.geometry)) for c in self.components),
        )
        if self.profile is not None:
            object.__setattr__(self, "profile", tuple(self.profile))

    @property
    def rank(self) -> int:
        return sum(c.rank for c in self.components)

    def line_components(self) -> Tuple[Component, ...]:
        return tuple(c for c in self.components if not c.klass.is_zero())

    def point_components(self) -> Tuple[Component, ...]:
        return tuple(c for c in self.components if c.klass.is_zero())


@dataclass(frozen=True)
class CycleTerm:
    klass: HomologyClass
    offset: GaussianRational
    wraps: int
    multiplicity: int


@dataclass(frozen=True)
class WeightedCycle:
    terms: Tuple[CycleTerm, ...]
    point_part: Tuple[Tuple[GaussianRational, int], ...]

    def total_class(self) -> HomologyClass:
        total = HomologyClass(0, 0)
        for t in self.terms:
            total = total + t.klass.scale(t.wraps)
        return total

    def total_rank(self) -> int:
        return sum(t.multiplicity for t in self.terms) + sum(length for _, length in self.point_part)

    def __add__(self, other: "WeightedCycle") -> "WeightedCycle":
        return WeightedCycle(self.terms + other.terms, self.point_part + other.point_part)

    def equivalent(self, other: "WeightedCycle") -> bool:
        """Equal total class and total Chan-Paton rank."""
        return self.total_class() == other.total_class() and self.total_rank() == other.total_rank()


# ====================== Operations ======================
def is_special_lagrangian(phi: AzCircleMorphism) -> bool:
    """All line components share one oriented primitive direction; point components are allowed."""
    return len({c.klass for c in phi.line_components()}) <= 1


def pushforward_cycle(phi: AzCircleMorphism) -> WeightedCycle:
    terms, points = [], []
    for c in phi.components:
        if c.klass.is_zero():
            points.append((c.offset, c.rank))
        else:
            terms.append(CycleTerm(c.klass, c.offset, c.wrap * c.fiber_rank, c.rank))
    return WeightedCycle(tuple(terms), tuple(points))


def total_class(phi: AzCircleMorphism) -> Tuple[SurrogateClass, HomologyClass]:
    total = SurrogateClass(0, 0, 0)
    for c in phi.components:
        total = total + c.surrogate_class()
    return total, total.projected


def amalgamate(phi1: AzCircleMorphism, phi2: AzCircleMorphism) -> AzCircleMorphism:
    if phi1.geometry != phi2.geometry:
        raise GeometryMismatch(f"tau differs: {phi1.geometry.tau} vs {phi2.geometry.tau}")
    if not phi2.components:
        profile = phi1.profile
    elif not phi1.components:
        profile = phi2.profile
    else:
        profile = None
    return AzCircleMorphism(phi1.geometry, phi1.components + phi2.components, profile)


def slag_representative(target: SurrogateClass, g: TorusGeometry) -> AzCircleMorphism:
    """
    Special Lagrangian morphism in the class (r; p, q).

    With g0 = gcd(r, p, q): g0 copies of the primitive representative
    (r/g0; p/g0, q/g0). The class (r; 0, 0) gives one point brane of rank r.
    """
    if target.r < 0:
        raise InvalidTarget("rank must be nonnegative")
    projected = target.projected
    if projected.is_zero():
        if target.r == 0:
            return AzCircleMorphism(g, ())
        return AzCircleMorphism(g, (Component(1, HomologyClass(0, 0), 1, ZERO, target.r),))
    if target.r == 0:
        raise InvalidTarget(f"no morphism of rank 0 in class ({target.p},{target.q})")
    g0 = math.gcd(target.r, projected.divisibility())
    piece = Component(target.r // g0, HomologyClass(target.p // g0, target.q // g0))
    logger.debug("slag_representative: %d copies of %s", g0, piece)
    return AzCircleMorphism(g, (piece,) * g0)


def cancel(phi1: AzCircleMorphism, phi2: AzCircleMorphism) -> AzCircleMorphism:
    """Amalgamate, then deform to the special Lagrangian representative."""
    merged = amalgamate(phi1, phi2)
    return slag_representative(total_class(merged)[0], merged.geometry)


def merge_components(phi: AzCircleMorphism) -> AzCircleMorphism:
    """Wrapping transition: recombine all components into the sLag representative of the class."""
    return slag_representative(total_class(phi)[0], phi.geometry)


# ====================== Profiles ======================
def _checked_profile(phi: AzCircleMorphism) -> Tuple[ProfileLabel, ...]:
    profile = phi.profile
    if not profile:
        raise MalformedProfile("the morphism carries no profile")
    if len(profile) % 2:
        raise MalformedProfile("a profile alternates intervals and junctions, so its length is even")
    for i, label in enumerate(profile):
        expected = INTERVAL if i % 2 == 0 else JUNCTION
        if label.kind != expected:
            raise MalformedProfile(f"label {i} should be a {expected}, got {label.kind}")
    return profile


def validate_profile(phi: AzCircleMorphism) -> bool:
    """Each junction orbit lies in the closure of both neighbouring interval orbits."""
    profile = _checked_profile(phi)
    n = len(profile)
    for i in range(1, n, 2):
        junction = profile[i].orbit
        for neighbour in (profile[i - 1].orbit, profile[(i + 1) % n].orbit):
            if not orbit_closure_contains(neighbour, junction):
                return False
    return True


def profile_report(phi: AzCircleMorphism) -> Tuple[str, ...]:
    """Per interval: complete-flag, unfiltered or intermediate push-forward."""
    out = []
    for label in _checked_profile(phi)[::2]:
        if is_complete_flag(label.orbit):
            out.append("complete-flag")
        elif is_unfiltered(label.orbit):
            out.append("unfiltered")
        else:
            out.append("intermediate")
    return tuple(out)
