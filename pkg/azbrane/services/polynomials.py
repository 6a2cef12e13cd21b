"""
Univariate and multivariate polynomials over Q(i).

UniPoly is backed by a sympy Poly over QQ_I and MultiPoly by an element
of a sympy PolyRing in graded lexicographic order. Both keep their
coefficients as GaussianRational tuples so the rest of the package can
read them directly.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from typing import Dict, Iterable, List, Sequence, Tuple

from sympy import QQ_I, Poly, Symbol
from sympy.polys.densetools import dup_eval
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing

from ..errors import DimensionMismatch, MalformedInput, SpectrumNotSplit
from ..utils.logger import get_logger
from .scalars import ONE, ZERO, GaussianRational, ScalarLike, gr

logger = get_logger(__name__)

Exponents = Tuple[int, ...]


# ====================== Univariate ======================
@dataclass(frozen=True)
class UniPoly:
    """Coefficients lowest degree first; no trailing zeros."""

    var: str
    coeffs: Tuple[GaussianRational, ...]

    def __post_init__(self):
        coeffs = [gr(c) for c in self.coeffs]
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def of(cls, coeffs: Iterable[ScalarLike], var: str = "z") -> "UniPoly":
        return cls(var, tuple(gr(c) for c in coeffs))

    @classmethod
    def zero(cls, var: str = "z") -> "UniPoly":
        return cls(var, ())

    @classmethod
    def constant(cls, c: ScalarLike, var: str = "z") -> "UniPoly":
        return cls(var, (gr(c),))

    @classmethod
    def x(cls, var: str = "z") -> "UniPoly":
        return cls(var, (ZERO, ONE))

    @classmethod
    def from_roots(cls, roots: Iterable[ScalarLike], var: str = "z") -> "UniPoly":
        result = cls.constant(1, var)
        for root in roots:
            result = result * cls(var, (-gr(root), ONE))
        return result

    @classmethod
    def from_poly(cls, poly: Poly, var: str) -> "UniPoly":
        return cls(var, tuple(GaussianRational.wrap(c) for c in reversed(poly.rep.to_list())))

    @cached_property
    def poly(self) -> Poly:
        return Poly.from_list([c.value for c in reversed(self.coeffs)], Symbol(self.var), domain=QQ_I)

    # ------------------------------------------------------------ properties
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def leading(self) -> GaussianRational:
        return self.coeffs[-1] if self.coeffs else ZERO

    def coefficient(self, k: int) -> GaussianRational:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == ONE

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        return UniPoly.from_poly(self.poly.monic(), self.var)

    # ------------------------------------------------------------ arithmetic
    def _lift(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other if other.var == self.var else UniPoly(self.var, other.coeffs)
        return UniPoly.constant(other, self.var)

    def __add__(self, other) -> "UniPoly":
        return UniPoly.from_poly(self.poly + self._lift(other).poly, self.var)

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly.from_poly(-self.poly, self.var)

    def __sub__(self, other) -> "UniPoly":
        return UniPoly.from_poly(self.poly - self._lift(other).poly, self.var)

    def __rsub__(self, other) -> "UniPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            return self.scale(gr(other))
        return UniPoly.from_poly(self.poly * self._lift(other).poly, self.var)

    __rmul__ = __mul__

    def scale(self, c: ScalarLike) -> "UniPoly":
        return UniPoly.from_poly(self.poly.mul_ground(gr(c).value), self.var)

    def __pow__(self, exponent: int) -> "UniPoly":
        return UniPoly.from_poly(self.poly ** exponent, self.var)

    def __divmod__(self, other: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        quotient, remainder = self.poly.div(self._lift(other).poly)
        return UniPoly.from_poly(quotient, self.var), UniPoly.from_poly(remainder, self.var)

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[1]

    def divides(self, other: "UniPoly") -> bool:
        return (other % self).is_zero()

    def gcd(self, other: "UniPoly") -> "UniPoly":
        """Monic gcd (zero if both are zero)."""
        return UniPoly.from_poly(self.poly.gcd(self._lift(other).poly), self.var).monic()

    def derivative(self) -> "UniPoly":
        return UniPoly.from_poly(self.poly.diff(), self.var)

    def __call__(self, x: ScalarLike) -> GaussianRational:
        return GaussianRational.wrap(dup_eval(self.poly.rep.to_list(), gr(x).value, QQ_I))

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.var == other.var and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.var, self.coeffs))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            parts.append(_format_term(c, mono))
        return _join_terms(parts)

    def to_json(self) -> list:
        return [c.compact() for c in self.coeffs]


def _format_term(c: GaussianRational, mono: str) -> str:
    if not mono:
        text = str(c)
        return f"({text})" if not c.is_real() and c.re != 0 else text
    if c == ONE:
        return mono
    if c == -ONE:
        return f"-{mono}"
    text = str(c)
    if not c.is_real() and c.re != 0:
        text = f"({text})"
    return f"{text}*{mono}"


def _join_terms(parts: List[str]) -> str:
    out = parts[0]
    for part in parts[1:]:
        out += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
    return out


# ====================== Roots over Q(i) ======================
def split_roots(p: UniPoly) -> List[Tuple[GaussianRational, int]]:
    """
    Complete linear factorization of p over Q(i).

    Returns (root, multiplicity) pairs in canonical order, multiplicities
    summing to deg p. Raises SpectrumNotSplit when an irreducible factor of
    degree >= 2 remains.
    """
    if p.is_zero():
        raise MalformedInput("the zero polynomial has no root multiset")
    _, factors = p.poly.factor_list()
    logger.debug("split_roots: degree %d, %d irreducible factors", p.degree, len(factors))
    roots: Dict[GaussianRational, int] = {}
    for factor, multiplicity in factors:
        if factor.degree() > 1:
            rest = UniPoly.from_poly(factor, p.var).monic()
            raise SpectrumNotSplit(f"{p} has an irreducible factor of degree >= 2 over Q(i): {rest}")
        lead, constant = factor.rep.to_list()
        root = GaussianRational.wrap(-constant / lead)
        roots[root] = roots.get(root, 0) + multiplicity
    return sorted(roots.items(), key=lambda item: item[0].sort_key())


def try_split_roots(p: UniPoly):
    """split_roots, or None when the polynomial does not split."""
    try:
        return split_roots(p)
    except SpectrumNotSplit:
        return None


# ====================== Multivariate ======================
def monomials(nvars: int, max_degree: int) -> List[Exponents]:
    """All exponent tuples of total degree <= max_degree, ascending in grlex."""
    out: List[Exponents] = []
    for degree in range(max_degree + 1):
        out.extend(e for e in product(range(degree + 1), repeat=nvars) if sum(e) == degree)
    return sorted(out, key=grlex)


@lru_cache(maxsize=None)
def polynomial_ring(variables: Tuple[str, ...]) -> PolyRing:
    """QQ_I[variables] in grlex order, one ring per variable list."""
    return PolyRing(tuple(Symbol(v) for v in variables), QQ_I, grlex)


@dataclass(frozen=True)
class MultiPoly:
    """
    Sparse polynomial in named variables.

    `terms` holds (exponents, coefficient) pairs with nonzero coefficients,
    leading term first in graded lexicographic order.
    """

    variables: Tuple[str, ...]
    terms: Tuple[Tuple[Exponents, GaussianRational], ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "terms", _canonical_terms(dict(self.terms), len(self.variables)))

    # ------------------------------------------------------------ construction
    @classmethod
    def from_dict(cls, variables: Sequence[str], terms: Dict[Exponents, ScalarLike]) -> "MultiPoly":
        return cls(tuple(variables), tuple((tuple(e), gr(c)) for e, c in terms.items()))

    @classmethod
    def from_element(cls, variables: Sequence[str], element) -> "MultiPoly":
        return cls(tuple(variables), tuple((m, GaussianRational.wrap(c)) for m, c in element.items()))

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "MultiPoly":
        return cls(tuple(variables), ())

    @classmethod
    def constant(cls, c: ScalarLike, variables: Sequence[str]) -> "MultiPoly":
        return cls(tuple(variables), (((0,) * len(variables), gr(c)),))

    @classmethod
    def variable(cls, name: str, variables: Sequence[str]) -> "MultiPoly":
        variables = tuple(variables)
        if name not in variables:
            raise DimensionMismatch(f"unknown variable {name!r}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, ((exps, ONE),))

    @classmethod
    def monomial(cls, exps: Exponents, variables: Sequence[str], c: ScalarLike = 1) -> "MultiPoly":
        return cls(tuple(variables), ((tuple(exps), gr(c)),))

    @classmethod
    def from_unipoly(cls, p: UniPoly, variables: Sequence[str] = None) -> "MultiPoly":
        variables = tuple(variables or (p.var,))
        index = variables.index(p.var)
        terms = {}
        for k, c in enumerate(p.coeffs):
            exps = [0] * len(variables)
            exps[index] = k
            terms[tuple(exps)] = c
        return cls.from_dict(variables, terms)

    @cached_property
    def element(self):
        """The same polynomial as an element of polynomial_ring(variables)."""
        return polynomial_ring(self.variables).from_dict({e: c.value for e, c in self.terms})

    # ------------------------------------------------------------ properties
    def as_dict(self) -> Dict[Exponents, GaussianRational]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def total_degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        k = self.variables.index(name)
        return max((e[k] for e, _ in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e, _ in self.terms)

    def constant_term(self) -> GaussianRational:
        return self.coefficient((0,) * len(self.variables))

    def coefficient(self, exps: Exponents) -> GaussianRational:
        return self.as_dict().get(tuple(exps), ZERO)

    def leading_term(self) -> Tuple[Exponents, GaussianRational]:
        return self.terms[0]

    # ------------------------------------------------------------ arithmetic
    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise DimensionMismatch(f"variable sets differ: {self.variables} vs {other.variables}")
            return other
        return MultiPoly.constant(other, self.variables)

    def _wrap(self, element) -> "MultiPoly":
        return MultiPoly.from_element(self.variables, element)

    def __add__(self, other) -> "MultiPoly":
        return self._wrap(self.element + self._lift(other).element)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return self._wrap(-self.element)

    def __sub__(self, other) -> "MultiPoly":
        return self._wrap(self.element - self._lift(other).element)

    def __rsub__(self, other) -> "MultiPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(gr(other))
        return self._wrap(self.element * self._lift(other).element)

    __rmul__ = __mul__

    def scale(self, c: ScalarLike) -> "MultiPoly":
        return self._wrap(self.element.mul_ground(gr(c).value))

    def __pow__(self, exponent: int) -> "MultiPoly":
        return self._wrap(self.element ** exponent)

    def derivative(self, name: str) -> "MultiPoly":
        return self._wrap(self.element.diff(self.variables.index(name)))

    # ------------------------------------------------------------ evaluation
    def __call__(self, point: Sequence[ScalarLike]) -> GaussianRational:
        if len(point) != len(self.variables):
            raise DimensionMismatch(f"expected {len(self.variables)} coordinates, got {len(point)}")
        if not self.variables:
            return self.constant_term()
        return GaussianRational.wrap(self.element(*[gr(v).value for v in point]))

    def evaluate_in(self, bases: Sequence, one):
        """
        Evaluate on elements of a (commutative) algebra.

        `bases` and `one` must support `*`, `+` and `.scale(scalar)`.
        """
        if len(bases) != len(self.variables):
            raise DimensionMismatch(f"expected {len(self.variables)} arguments, got {len(bases)}")
        powers: Dict[Tuple[int, int], object] = {}

        def power(i: int, k: int):
            if (i, k) not in powers:
                powers[(i, k)] = one if k == 0 else power(i, k - 1) * bases[i]
            return powers[(i, k)]

        total = one.scale(ZERO)
        for exps, c in self.terms:
            mono = one
            for i, k in enumerate(exps):
                if k:
                    mono = mono * power(i, k)
            total = total + mono.scale(c)
        return total

    def substitute(self, name: str, value: ScalarLike) -> "MultiPoly":
        """Specialize one variable to a scalar, keeping the variable list."""
        return self._wrap(self.element.subs(self.variables.index(name), gr(value).value))

    def to_unipoly(self, name: str = None) -> UniPoly:
        name = name or self.variables[0]
        k = self.variables.index(name)
        coeffs = [ZERO] * (max(self.degree_in(name), 0) + 1)
        for e, c in self.terms:
            if any(v for i, v in enumerate(e) if i != k):
                raise DimensionMismatch(f"{self} is not univariate in {name}")
            coeffs[e[k]] = coeffs[e[k]] + c
        return UniPoly(name, tuple(coeffs))

    def extend(self, variables: Sequence[str]) -> "MultiPoly":
        """Re-express in a larger ordered variable list."""
        variables = tuple(variables)
        missing = [v for v in self.variables if v not in variables]
        if missing:
            raise DimensionMismatch(f"variables {missing} not in {variables}")
        index = [variables.index(v) for v in self.variables]
        acc = {}
        for e, c in self.terms:
            exps = [0] * len(variables)
            for i, k in zip(index, e):
                exps[i] = k
            acc[tuple(exps)] = c
        return MultiPoly(variables, tuple(acc.items()))

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.variables, self.terms))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.terms:
            factors = [v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, exps) if k]
            parts.append(_format_term(c, "*".join(factors)))
        return _join_terms(parts)

    def to_json(self) -> list:
        return [{"exps": list(e), "coef": c.compact()} for e, c in self.terms]


def _canonical_terms(terms: Dict, nvars: int) -> Tuple[Tuple[Exponents, GaussianRational], ...]:
    out = []
    for exps, c in terms.items():
        exps = tuple(int(k) for k in exps)
        if len(exps) != nvars:
            raise DimensionMismatch(f"exponent tuple {exps} does not match {nvars} variables")
        c = gr(c)
        if not c.is_zero():
            out.append((exps, c))
    out.sort(key=lambda t: grlex(t[0]), reverse=True)
    return tuple(out)
