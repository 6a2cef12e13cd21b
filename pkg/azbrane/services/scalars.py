"""
Exact scalars: Gaussian rationals Q(i).

Arithmetic is sympy's QQ_I; this wrapper adds parsing, the canonical
string form and the point ordering used throughout the outputs.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Union

from sympy import QQ, QQ_I

from ..errors import MalformedInput

ScalarLike = Union["GaussianRational", Fraction, int, str]


def _qq(value):
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, int):
        return QQ(value)
    return QQ.convert(value)


def _fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


class GaussianRational:
    """a/b + (c/d)i backed by an element of QQ_I."""

    __slots__ = ("value",)

    def __init__(self, re: Union[Fraction, int] = 0, im: Union[Fraction, int] = 0):
        self.value = QQ_I(_qq(re), _qq(im))

    @classmethod
    def wrap(cls, element) -> "GaussianRational":
        """Adopt a QQ_I element (or anything QQ_I converts) without copying."""
        obj = object.__new__(cls)
        obj.value = element if isinstance(element, QQ_I.dtype) else QQ_I.convert(element)
        return obj

    # ------------------------------------------------------------ construction
    @classmethod
    def of(cls, value: ScalarLike) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, bool):
            raise MalformedInput(f"not a scalar: {value!r}")
        if isinstance(value, (int, Fraction)):
            return cls(value)
        if isinstance(value, str):
            return cls.parse(value)
        if isinstance(value, dict):
            try:
                return cls(Fraction(str(value.get("re", "0"))), Fraction(str(value.get("im", "0"))))
            except (ValueError, ZeroDivisionError):
                raise MalformedInput(f"not a scalar: {value!r}")
        raise MalformedInput(f"not a scalar: {value!r}")

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse forms like "3", "-1/2", "i", "-2i", "1/2-3/4i"."""
        body = text.replace(" ", "").replace("*", "")
        if not body:
            raise MalformedInput("empty scalar")
        if body.startswith("(") and body.endswith(")"):
            body = body[1:-1]
        try:
            if not body.endswith("i"):
                return cls(Fraction(body))
            body = body[:-1]
            split = max(body.rfind("+"), body.rfind("-"))
            if split > 0:
                real_text, im_text = body[:split], body[split:]
            else:
                real_text, im_text = "0", body
            if im_text in ("", "+"):
                imag = Fraction(1)
            elif im_text == "-":
                imag = Fraction(-1)
            else:
                imag = Fraction(im_text)
            return cls(Fraction(real_text), imag)
        except (ValueError, ZeroDivisionError):
            raise MalformedInput(f"not a scalar: {text!r}")

    # ------------------------------------------------------------ parts
    @property
    def re(self) -> Fraction:
        return _fraction(self.value.x)

    @property
    def im(self) -> Fraction:
        return _fraction(self.value.y)

    # ------------------------------------------------------------ predicates
    def is_zero(self) -> bool:
        return not self.value

    def __bool__(self) -> bool:
        return bool(self.value)

    def is_real(self) -> bool:
        return not self.value.y

    # ------------------------------------------------------------ arithmetic
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational.wrap(self.value + other)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational.wrap(-self.value)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational.wrap(self.value - other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational.wrap(other - self.value)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational.wrap(self.value * other)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational.wrap(QQ_I(self.value.x, -self.value.y))

    def norm(self) -> Fraction:
        return _fraction(self.value.x * self.value.x + self.value.y * self.value.y)

    def inverse(self) -> "GaussianRational":
        if not self.value:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational.wrap(QQ_I.one / self.value)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational.wrap(self.value / other)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational.wrap(other) * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return GaussianRational.wrap(self.value ** exponent)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.value == other

    def __hash__(self):
        return hash(self.value)

    # ------------------------------------------------------------ ordering
    def sort_key(self) -> tuple:
        """Lexicographic on (re, im); the canonical point order."""
        return (self.re, self.im)

    # ------------------------------------------------------------ output
    def to_sympy(self):
        return QQ_I.to_sympy(self.value)

    def __str__(self) -> str:
        re, im = self.re, self.im
        if im == 0:
            return str(re)
        if im == 1:
            imag = "i"
        elif im == -1:
            imag = "-i"
        else:
            imag = f"{im}i"
        if re == 0:
            return imag
        sign = "" if imag.startswith("-") else "+"
        return f"{re}{sign}{imag}"

    def __repr__(self) -> str:
        return f"GaussianRational({self})"

    def to_json(self) -> dict:
        return {"re": str(self.re), "im": str(self.im)}

    def compact(self):
        """JSON int for real integers, canonical string otherwise."""
        re = self.re
        if self.im == 0 and re.denominator == 1:
            return int(re)
        return str(self)


def _coerce(value):
    if isinstance(value, GaussianRational):
        return value.value
    if isinstance(value, bool):
        return NotImplemented
    if isinstance(value, (int, Fraction)):
        return QQ_I(_qq(value), QQ.zero)
    return NotImplemented


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def gr(value: ScalarLike) -> GaussianRational:
    """Shorthand constructor."""
    return GaussianRational.of(value)
