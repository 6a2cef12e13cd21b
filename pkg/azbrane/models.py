"""Pydantic models for request validation, shared by the CLI and the HTTP API."""
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, StrictInt, StrictStr
from typing_extensions import Annotated, NotRequired, TypedDict

from .errors import MalformedInput
from .services import codec
from .services.azumaya_point import AffinePresentation, RepPoint, SupportLengthData
from .services.higgsing import HiggsProblem
from .services.kahler_forms import ClassicalForm, FormalOneForm, FormTerm, MorphismToAffine
from .services.orbit_poset import JordanData, OrbitLabel
from .services.torus_abrane import (
    AzCircleMorphism,
    Component,
    HomologyClass,
    ProfileLabel,
    SurrogateClass,
    TorusGeometry,
)

# Scalars arrive as ints, strings like "1/2-3i", or {"re": ..., "im": ...}
Scalar = Union[StrictInt, StrictStr, Dict[Literal["re", "im"], Union[StrictInt, StrictStr]]]
Point = Union[Scalar, List[Scalar]]


class PolyTerm(TypedDict):
    exps: List[StrictInt]
    coef: NotRequired[Scalar]


# A scalar, a coefficient array (lowest degree first) or a term list
Polynomial = Union[Scalar, List[Scalar], List[PolyTerm]]

MatrixRows = Annotated[List[Annotated[List[Scalar], Field(min_length=1)]], Field(min_length=1)]


# ====================== Azumaya point Models ======================
class RepPointIn(BaseModel):
    """A commuting matrix tuple, one matrix per target variable."""
    r: Optional[int] = None
    vars: Optional[List[str]] = None
    matrices: Annotated[List[MatrixRows], Field(min_length=1)]

    def to_domain(self) -> RepPoint:
        matrices = tuple(codec.matrix_in(m) for m in self.matrices)
        point = RepPoint(matrices, tuple(self.vars or ()))
        if self.r is not None and self.r != point.rank:
            raise MalformedInput(f"declared rank {self.r} but matrices are {point.rank}x{point.rank}")
        return point


class PresentationIn(BaseModel):
    vars: List[str]
    relators: List[Polynomial] = []

    def to_domain(self) -> AffinePresentation:
        return AffinePresentation(
            tuple(self.vars), tuple(codec.multipoly_in(h, self.vars) for h in self.relators)
        )


class RepCheckRequest(BaseModel):
    point: RepPointIn
    presentation: Optional[PresentationIn] = None


class PointRequest(BaseModel):
    point: RepPointIn
    degree_bound: Optional[int] = Field(default=None, ge=0)


class MatrixRequest(BaseModel):
    matrix: MatrixRows


class ConjugateRequest(BaseModel):
    left: RepPointIn
    right: RepPointIn
    seed: Optional[int] = None


# ====================== Orbit Models ======================
class JordanEntryIn(BaseModel):
    point: Point
    partition: List[int]


class SupportEntryIn(BaseModel):
    point: Point
    length: int = Field(gt=0)


def jordan_in(entries: List[JordanEntryIn]) -> JordanData:
    return JordanData(tuple((codec.point_in(e.point), tuple(e.partition)) for e in entries))


class OrbitCompareRequest(BaseModel):
    """Compare two orbit labels in the closure order."""
    left: List[JordanEntryIn]
    right: List[JordanEntryIn]

    def labels(self):
        return OrbitLabel(jordan_in(self.left)), OrbitLabel(jordan_in(self.right))


class OrbitExtremesRequest(BaseModel):
    support: List[SupportEntryIn]

    def to_domain(self) -> SupportLengthData:
        entries = tuple((codec.point_in(e.point), e.length) for e in self.support)
        return SupportLengthData(tuple(sorted(entries, key=lambda e: tuple(c.sort_key() for c in e[0]))))


# ====================== Higgsing Models ======================
class HiggsingRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    a: List[List[Polynomial]] = Field(alias="A")
    lam: Scalar = Field(alias="lambda")
    bhat: List[Scalar] = [1, 0, 0, 1]

    def to_domain(self) -> HiggsProblem:
        return HiggsProblem(codec.polymatrix_in(self.a, ("z",)), codec.scalar_in(self.lam))


class SpectralCurveRequest(BaseModel):
    phi: List[List[Polynomial]]
    vars: List[str] = ["z"]
    points: List[List[Scalar]] = []


class WeylCheckRequest(BaseModel):
    cap: Optional[int] = Field(default=None, ge=2)
    rank: int = Field(default=1, ge=1)


# ====================== Torus Models ======================
class ComponentIn(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    d: int = Field(gt=0)
    klass: List[int] = Field(alias="class", min_length=2, max_length=2)
    wrap: int = Field(default=1, gt=0)
    offset: Scalar = 0
    fiber_rank: int = Field(default=1, gt=0)

    def to_domain(self) -> Component:
        return Component(
            self.d, HomologyClass(*self.klass), self.wrap, codec.scalar_in(self.offset), self.fiber_rank
        )


class ProfileLabelIn(BaseModel):
    kind: str
    jordan: List[JordanEntryIn]

    def to_domain(self) -> ProfileLabel:
        return ProfileLabel(self.kind, OrbitLabel(jordan_in(self.jordan)))


class MorphismIn(BaseModel):
    tau: Scalar = "i"
    components: List[ComponentIn] = []
    profile: Optional[List[ProfileLabelIn]] = None

    def to_domain(self) -> AzCircleMorphism:
        profile = None if self.profile is None else tuple(p.to_domain() for p in self.profile)
        return AzCircleMorphism(
            TorusGeometry(codec.scalar_in(self.tau)),
            tuple(c.to_domain() for c in self.components),
            profile,
        )


class TorusPairRequest(BaseModel):
    left: MorphismIn
    right: MorphismIn


class TorusSlagRequest(BaseModel):
    tau: Scalar = "i"
    target: List[int] = Field(min_length=3, max_length=3)

    def to_domain(self):
        return SurrogateClass(*self.target), TorusGeometry(codec.scalar_in(self.tau))


# ====================== Kahler Models ======================
class FormTermIn(BaseModel):
    coeffs: List[List[List[Polynomial]]]
    diffs: List[List[List[Polynomial]]]


class FormIn(BaseModel):
    """A formal s-form: words c_0 (dm_1) c_1 ... (dm_s) c_s over M_r(C[vars])."""
    vars: List[str] = ["z"]
    degree: int = Field(default=1, ge=1)
    terms: List[FormTermIn]

    def to_domain(self) -> FormalOneForm:
        terms = tuple(
            FormTerm(
                tuple(codec.polymatrix_in(c, self.vars) for c in t.coeffs),
                tuple(codec.polymatrix_in(m, self.vars) for m in t.diffs),
            )
            for t in self.terms
        )
        if not terms or not terms[0].coeffs:
            raise MalformedInput("a form needs at least one term with coefficients")
        return FormalOneForm(terms[0].coeffs[0].rank, tuple(self.vars), self.degree, terms)


class KahlerTraceRequest(BaseModel):
    form: FormIn


class MorphismToAffineIn(BaseModel):
    targets: List[str]
    source_vars: List[str] = ["z"]
    images: List[List[List[Polynomial]]]

    def to_domain(self) -> MorphismToAffine:
        return MorphismToAffine(
            tuple(self.targets), tuple(codec.polymatrix_in(m, self.source_vars) for m in self.images)
        )


class ClassicalTermIn(BaseModel):
    dy: List[str]
    coef: Polynomial


class KahlerPullbackRequest(BaseModel):
    """Pull back a classical form, or df when `function` is given."""
    phi: MorphismToAffineIn
    form: Optional[List[ClassicalTermIn]] = None
    function: Optional[Polynomial] = None

    def classical_form(self) -> ClassicalForm:
        targets = tuple(self.phi.targets)
        if self.form is None:
            return None
        degrees = {len(t.dy) for t in self.form}
        if len(degrees) != 1:
            raise MalformedInput("all terms of a classical form share one tensor degree")
        coefficients = []
        for t in self.form:
            unknown = [y for y in t.dy if y not in targets]
            if unknown:
                raise MalformedInput(f"unknown target variables {unknown}")
            coefficients.append((tuple(targets.index(y) for y in t.dy), codec.multipoly_in(t.coef, targets)))
        return ClassicalForm(targets, degrees.pop(), tuple(coefficients))


# ====================== Scenario Models ======================
class ScenarioIn(BaseModel):
    name: str
    command: str
    inputs: dict
    expected: Optional[Any] = None
