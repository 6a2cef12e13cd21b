"""
Formal Kähler differentials of M_r(R), R = C[z_1..z_n].

An element of the s-fold tensor power is a sum of words
c_0 (dm_1) c_1 (dm_2) ... (dm_s) c_s. Equality is exposed syntactically
and through the trace form, which replaces each dm by the entrywise
differential Dm = sum_k (d m / d z_k) dz_k and takes the trace. The trace
form respects linearity, Leibniz and pass-over; it is not claimed to
separate all distinct elements.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from typing import Dict, Sequence, Tuple

from ..errors import DimensionMismatch, NonCommutingImages
from .poly_matrix import PolyMatrix
from .polynomials import MultiPoly
from .scalars import ScalarLike, gr

Index = Tuple[int, ...]


@dataclass(frozen=True)
class FormTerm:
    coeffs: Tuple[PolyMatrix, ...]
    diffs: Tuple[PolyMatrix, ...]

    def sort_key(self) -> str:
        return json.dumps(
            [[c.to_json() for c in self.coeffs], [m.to_json() for m in self.diffs]], sort_keys=True
        )

    def is_trivially_zero(self) -> bool:
        return any(c.is_zero() for c in self.coeffs) or any(m.is_zero() for m in self.diffs)


@dataclass(frozen=True)
class FormalOneForm:
    """Element of the s-fold tensor power of the differentials of M_r(R); s = degree."""

    rank: int
    variables: Tuple[str, ...]
    degree: int = 1
    terms: Tuple[FormTerm, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        for t in self.terms:
            if len(t.coeffs) != self.degree + 1 or len(t.diffs) != self.degree:
                raise DimensionMismatch(f"term shape does not match tensor degree {self.degree}")
            for m in t.coeffs + t.diffs:
                if m.rank != self.rank or m.variables != self.variables:
                    raise DimensionMismatch("all matrices of a form share rank and variables")
        object.__setattr__(self, "terms", tuple(self.terms))

    @classmethod
    def zero(cls, rank: int, variables: Sequence[str], degree: int = 1) -> "FormalOneForm":
        return cls(rank, tuple(variables), degree, ())

    def _check(self, other: "FormalOneForm"):
        if (self.rank, self.variables, self.degree) != (other.rank, other.variables, other.degree):
            raise DimensionMismatch("forms of different rank, variables or degree")

    def __add__(self, other: "FormalOneForm") -> "FormalOneForm":
        self._check(other)
        return FormalOneForm(self.rank, self.variables, self.degree, self.terms + other.terms)

    def __neg__(self) -> "FormalOneForm":
        return self.scale(-1)

    def __sub__(self, other: "FormalOneForm") -> "FormalOneForm":
        return self + (-other)

    def scale(self, c: ScalarLike) -> "FormalOneForm":
        c = gr(c)
        return FormalOneForm(
            self.rank,
            self.variables,
            self.degree,
            tuple(FormTerm((t.coeffs[0].scale(c),) + t.coeffs[1:], t.diffs) for t in self.terms),
        )

    def left_mul(self, m: PolyMatrix) -> "FormalOneForm":
        return FormalOneForm(
            self.rank,
            self.variables,
            self.degree,
            tuple(FormTerm((m * t.coeffs[0],) + t.coeffs[1:], t.diffs) for t in self.terms),
        )

    def right_mul(self, m: PolyMatrix) -> "FormalOneForm":
        return FormalOneForm(
            self.rank,
            self.variables,
            self.degree,
            tuple(FormTerm(t.coeffs[:-1] + (t.coeffs[-1] * m,), t.diffs) for t in self.terms),
        )

    def canonical(self) -> "FormalOneForm":
        """Drop words with a zero factor; sort the rest."""
        kept = sorted((t for t in self.terms if not t.is_trivially_zero()), key=FormTerm.sort_key)
        return FormalOneForm(self.rank, self.variables, self.degree, tuple(kept))

    def syntactically_equal(self, other: "FormalOneForm") -> bool:
        return self.canonical() == other.canonical()


@dataclass(frozen=True)
class CommutativeForm:
    """sum over multi-indices K of f_K dz_{k1} (x) ... (x) dz_{ks}."""

    variables: Tuple[str, ...]
    degree: int
    coefficients: Tuple[Tuple[Index, MultiPoly], ...]

    def __post_init__(self):
        kept = sorted(
            ((tuple(k), f) for k, f in self.coefficients if not f.is_zero()), key=lambda kv: kv[0]
        )
        kept = tuple(kept)
        object.__setattr__(self, "coefficients", kept)

    @classmethod
    def from_dict(cls, variables: Sequence[str], degree: int, coeffs: Dict[Index, MultiPoly]) -> "CommutativeForm":
        return cls(tuple(variables), degree, tuple(coeffs.items()))

    def as_dict(self) -> Dict[Index, MultiPoly]:
        return dict(self.coefficients)

    def coefficient(self, *index: int) -> MultiPoly:
        return self.as_dict().get(tuple(index), MultiPoly.zero(self.variables))

    def is_zero(self) -> bool:
        return not self.coefficients

    def __add__(self, other: "CommutativeForm") -> "CommutativeForm":
        if (self.variables, self.degree) != (other.variables, other.degree):
            raise DimensionMismatch("commutative forms of different shape")
        acc = self.as_dict()
        for k, f in other.coefficients:
            acc[k] = acc[k] + f if k in acc else f
        return CommutativeForm.from_dict(self.variables, self.degree, acc)

    def scale(self, c: ScalarLike) -> "CommutativeForm":
        c = gr(c)
        return CommutativeForm(self.variables, self.degree, tuple((k, f.scale(c)) for k, f in self.coefficients))

    def to_json(self) -> list:
        return [
            {"dz": [self.variables[i] for i in k], "coef": f.to_json()} for k, f in self.coefficients
        ]


@dataclass(frozen=True)
class ClassicalForm:
    """sum over multi-indices K of f_K dy_{k1} (x) ... (x) dy_{ks} on the target."""

    variables: Tuple[str, ...]
    degree: int
    coefficients: Tuple[Tuple[Index, MultiPoly], ...]

    @classmethod
    def one_form(cls, variables: Sequence[str], coeffs: Sequence[MultiPoly]) -> "ClassicalForm":
        return cls(tuple(variables), 1, tuple(((k,), f) for k, f in enumerate(coeffs)))


# ====================== Construction ======================
def d(m: PolyMatrix) -> FormalOneForm:
    one = PolyMatrix.identity(m.rank, m.variables)
    return FormalOneForm(m.rank, m.variables, 1, (FormTerm((one, one), (m,)),))


def leibniz_expand(m: PolyMatrix, mp: PolyMatrix) -> FormalOneForm:
    """(dm) m' + m (dm')."""
    if m.rank != mp.rank:
        raise DimensionMismatch("Leibniz expansion needs matrices of one rank")
    one = PolyMatrix.identity(m.rank, m.variables)
    return FormalOneForm(
        m.rank, m.variables, 1, (FormTerm((one, mp), (m,)), FormTerm((m, one), (mp,)))
    )


def tensor(ws: Sequence[FormalOneForm]) -> FormalOneForm:
    """Formal tensor product over M_r(R): adjacent boundary coefficients multiply."""
    if not ws:
        raise DimensionMismatch("tensor needs at least one factor")
    first = ws[0]
    for w in ws[1:]:
        if (w.rank, w.variables) != (first.rank, first.variables):
            raise DimensionMismatch("tensor factors must share rank and variables")
    terms = []
    for words in product(*(w.terms for w in ws)):
        coeffs = list(words[0].coeffs)
        diffs = list(words[0].diffs)
        for word in words[1:]:
            coeffs[-1] = coeffs[-1] * word.coeffs[0]
            coeffs.extend(word.coeffs[1:])
            diffs.extend(word.diffs)
        terms.append(FormTerm(tuple(coeffs), tuple(diffs)))
    return FormalOneForm(first.rank, first.variables, sum(w.degree for w in ws), tuple(terms))


# ====================== Trace form ======================
def trace_form(w: FormalOneForm) -> CommutativeForm:
    n = len(w.variables)
    acc: Dict[Index, MultiPoly] = {}
    for t in w.terms:
        partials = [[m.derivative(v) for v in w.variables] for m in t.diffs]
        for index in product(range(n), repeat=w.degree):
            word = t.coeffs[0]
            for slot, k in enumerate(index):
                word = word * partials[slot][k] * t.coeffs[slot + 1]
            value = word.trace()
            acc[index] = acc[index] + value if index in acc else value
    return CommutativeForm.from_dict(w.variables, w.degree, acc)


# ====================== Pullback ======================
@dataclass(frozen=True)
class MorphismToAffine:
    """phi#: C[y_1..y_k] -> M_r(R), y_j -> images[j]."""

    target_variables: Tuple[str, ...]
    images: Tuple[PolyMatrix, ...]

    def __post_init__(self):
        targets, images = tuple(self.target_variables), tuple(self.images)
        if len(targets) != len(images):
            raise DimensionMismatch(f"{len(images)} images for {len(targets)} target variables")
        if not images:
            raise DimensionMismatch("a morphism needs at least one target variable")
        for m in images:
            if m.rank != images[0].rank or m.variables != images[0].variables:
                raise DimensionMismatch("images must share rank and variables")
        for i, a in enumerate(images):
            for b in images[i + 1:]:
                if not a.commutes_with(b):
                    raise NonCommutingImages("images of the target coordinates must commute")
        object.__setattr__(self, "target_variables", targets)
        object.__setattr__(self, "images", images)

    @property
    def rank(self) -> int:
        return self.images[0].rank

    @property
    def source_variables(self) -> Tuple[str, ...]:
        return self.images[0].variables


def _on_target(phi: MorphismToAffine, f: MultiPoly) -> MultiPoly:
    if f.variables == phi.target_variables:
        return f
    return f.extend(phi.target_variables)


def pullback(phi: MorphismToAffine, f: MultiPoly) -> PolyMatrix:
    """phi#(f): f evaluated on the commuting images."""
    return _on_target(phi, f).evaluate_in(phi.images, PolyMatrix.identity(phi.rank, phi.source_variables))


def differential(f: MultiPoly) -> ClassicalForm:
    return ClassicalForm.one_form(f.variables, [f.derivative(v) for v in f.variables])


def pullback_tensor(phi: MorphismToAffine, form: ClassicalForm) -> FormalOneForm:
    """sum f_K dy_K  ->  sum phi#(f_K) d(phi# y_k1) (x) ... (x) d(phi# y_ks)."""
    if form.variables != phi.target_variables:
        raise DimensionMismatch(f"form lives on {form.variables}, morphism targets {phi.target_variables}")
    one = PolyMatrix.identity(phi.rank, phi.source_variables)
    terms = []
    for index, f in form.coefficients:
        coeffs = (pullback(phi, f),) + (one,) * form.degree
        terms.append(FormTerm(coeffs, tuple(phi.images[k] for k in index)))
    return FormalOneForm(phi.rank, phi.source_variables, form.degree, tuple(terms))


def pullback_form(phi: MorphismToAffine, form: ClassicalForm) -> FormalOneForm:
    if form.degree != 1:
        raise DimensionMismatch("pullback_form takes a 1-form; use pullback_tensor for tensors")
    return pullback_tensor(phi, form)
