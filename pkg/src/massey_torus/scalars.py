"""Exact scalars: the rationals and simple algebraic extensions Q[x]/(p).

Rationals are plain :class:`fractions.Fraction` values.  An extension field is
described by a :class:`FieldDescriptor`; its elements are :class:`ExtElement`
instances holding the coefficients of the reduced residue-class polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC

import sympy

from . import _polylist as pl

Rational = Fraction


class FieldMismatchError(ValueError):
    """Operands live in different fields."""


class ReducibleError(ValueError):
    """A proposed minimal polynomial factors; ``witness`` is a proper factor."""

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


def to_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, (_RationalABC, int)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class FieldDescriptor:
    """Either Q itself (``min_poly`` empty) or Q[x]/(min_poly).

    ``proven`` is False only when irreducibility was asserted rather than
    established.
    """

    kind: str = "rationals"
    min_poly: tuple = ()
    proven: bool = True

    @property
    def degree(self) -> int:
        return 1 if self.kind == "rationals" else len(self.min_poly) - 1

    @property
    def is_rationals(self) -> bool:
        return self.kind == "rationals"

    @property
    def zero(self):
        return Fraction(0) if self.is_rationals else ExtElement(self, (Fraction(0),) * self.degree)

    @property
    def one(self):
        if self.is_rationals:
            return Fraction(1)
        return ExtElement(self, (Fraction(1),) + (Fraction(0),) * (self.degree - 1))

    def generator(self) -> ExtElement:
        """Residue class of x."""
        if self.is_rationals:
            raise ValueError("Q has no adjoined generator")
        if self.degree == 1:
            return ExtElement(self, (-self.min_poly[0],))
        c = [Fraction(0)] * self.degree
        c[1] = Fraction(1)
        return ExtElement(self, tuple(c))

    def __call__(self, x):
        """Coerce ``x`` (int, Fraction, string or element of this field)."""
        if isinstance(x, ExtElement):
            if x.field != self:
                raise FieldMismatchError("element belongs to a different field")
            return x
        if self.is_rationals:
            return to_rational(x)
        if isinstance(x, (list, tuple)):
            return ExtElement.from_coeffs(self, [to_rational(c) for c in x])
        q = to_rational(x)
        return ExtElement(self, (q,) + (Fraction(0),) * (self.degree - 1))

    def contains(self, x) -> bool:
        if isinstance(x, ExtElement):
            return x.field == self
        return isinstance(x, (int, Fraction))

    def to_json(self):
        if self.is_rationals:
            return {"kind": "rationals"}
        return {
            "kind": "extension",
            "min_poly": [format_rational(c) for c in self.min_poly],
            "proven": self.proven,
        }

    def __repr__(self):
        if self.is_rationals:
            return "QQ"
        return f"QQ[x]/({_fmt_poly(self.min_poly)})"


QQ = FieldDescriptor()


def _fmt_poly(c) -> str:
    terms = []
    for k in range(len(c) - 1, -1, -1):
        if c[k]:
            terms.append(f"{format_rational(c[k])}*x^{k}" if k else format_rational(c[k]))
    return " + ".join(terms) or "0"


class ExtElement:
    """Element of Q[x]/(p), stored as reduced coefficients, constant first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldDescriptor, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != field.degree:
            raise ValueError("coefficient vector length must equal the field degree")
        self.field = field
        self.coeffs = coeffs

    @classmethod
    def from_coeffs(cls, field, coeffs):
        _, r = pl.divmod_(pl.trim(coeffs), list(field.min_poly))
        r = r + [Fraction(0)] * (field.degree - len(r))
        return cls(field, r)

    def _coerce(self, other):
        if isinstance(other, ExtElement):
            if other.field != self.field:
                raise FieldMismatchError("operands belong to different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ExtElement(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return ExtElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ExtElement(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prod = pl.mul(pl.trim(self.coeffs), pl.trim(other.coeffs))
        return ExtElement.from_coeffs(self.field, prod)

    __rmul__ = __mul__

    def inverse(self) -> ExtElement:
        if not self:
            raise ZeroDivisionError("inverse of zero in extension field")
        g, s, _ = pl.gcdex(pl.trim(self.coeffs), list(self.field.min_poly), Fraction(1))
        if len(g) != 1:
            raise ZeroDivisionError("element is a zero divisor; min_poly is reducible")
        return ExtElement.from_coeffs(self.field, s)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = self.field.one, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, ExtElement):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        if not any(self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash((self.field, self.coeffs))

    def to_json(self):
        return [format_rational(c) for c in self.coeffs]

    def __repr__(self):
        return f"ExtElement({_fmt_poly(self.coeffs)} mod {_fmt_poly(self.field.min_poly)})"


def field_arith(a, b, op: str):
    """Apply ``op`` in {add, sub, mul, div} to two elements of one field."""
    if isinstance(a, ExtElement) and isinstance(b, ExtElement) and a.field != b.field:
        raise FieldMismatchError("operands belong to different fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise ZeroDivisionError("division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def _sympy_poly(coeffs):
    x = sympy.Symbol("x")
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], x, domain="QQ")


def _from_sympy(p) -> list:
    return [Fraction(int(c.p), int(c.q)) for c in reversed(p.all_coeffs())]


def verify_extension(p) -> FieldDescriptor:
    """Validate a monic minimal polynomial (constant term first) and build the field."""
    coeffs = pl.trim([to_rational(c) for c in getattr(p, "coeffs", p)])
    if len(coeffs) < 2:
        raise ValueError("minimal polynomial must have degree >= 1")
    if coeffs[-1] != 1:
        raise ValueError("minimal polynomial must be monic")
    deriv = [k * c for k, c in enumerate(coeffs)][1:]
    g, _, _ = pl.gcdex(coeffs, pl.trim(deriv), Fraction(1))
    if len(g) > 1:
        raise ReducibleError("minimal polynomial is not square-free", tuple(g))
    _, factors = _sympy_poly(coeffs).factor_list()
    if len(factors) > 1 or factors[0][1] > 1:
        witness = _from_sympy(factors[0][0].monic())
        raise ReducibleError("minimal polynomial is reducible over Q", tuple(witness))
    return FieldDescriptor("extension", tuple(coeffs), True)


def parse_scalar(x, field: FieldDescriptor = QQ):
    """Parse ``"p/q"``, ``"n"``, numbers, or coefficient arrays into ``field``."""
    return field(x)


def format_scalar(x):
    if isinstance(x, ExtElement):
        return x.to_json()
    return format_rational(x)
