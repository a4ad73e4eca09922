"""Exact ground field arithmetic: arbitrary-precision rationals and prime fields.

Scalars are plain ``fractions.Fraction`` values over the rationals (always in
lowest terms with positive denominator, so equality is syntactic) and
``PrimeFieldElement`` values over F_p.  Both support the usual arithmetic
operators, are hashable, and are falsy exactly when zero, which keeps every
higher layer field-agnostic: no rounding ever occurs anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


class RationalField:
    """The field of rational numbers; scalars are ``Fraction`` values."""

    char = 0

    def __call__(self, value) -> Fraction:
        return Fraction(value)

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def parse(self, text) -> Fraction:
        # tolerate a unicode minus sign in hand-written documents
        return Fraction(str(text).replace("−", "-").strip())

    def format(self, value) -> str:
        return str(value)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash(RationalField)

    def __repr__(self):
        return "QQ"


class PrimeFieldElement:
    """An element of F_p, stored as the canonical residue in [0, p)."""

    __slots__ = ("residue", "p")

    def __init__(self, residue: int, p: int):
        self.residue = residue % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise ValueError(f"mixed prime fields F_{self.p} and F_{other.p}")
            return other
        if isinstance(other, int):
            return PrimeFieldElement(other, self.p)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return PrimeFieldElement(self.residue + other.residue, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return PrimeFieldElement(self.residue - other.residue, self.p)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return PrimeFieldElement(self.residue * other.residue, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.residue == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return self * PrimeFieldElement(pow(other.residue, self.p - 2, self.p), self.p)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __neg__(self):
        return PrimeFieldElement(-self.residue, self.p)

    def __bool__(self):
        return self.residue != 0

    def __eq__(self, other):
        if isinstance(other, int):
            return self.residue == other % self.p
        return (
            isinstance(other, PrimeFieldElement)
            and self.p == other.p
            and self.residue == other.residue
        )

    def __hash__(self):
        return hash((PrimeFieldElement, self.p, self.residue))

    def __repr__(self):
        return f"{self.residue}"


class PrimeField:
    """The prime field F_p for a given prime p."""

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p

    def __call__(self, value) -> PrimeFieldElement:
        if isinstance(value, PrimeFieldElement):
            if value.p != self.p:
                raise ValueError("element of a different prime field")
            return value
        if isinstance(value, Fraction):
            return self(value.numerator) / self(value.denominator)
        return PrimeFieldElement(int(value), self.p)

    @property
    def zero(self) -> PrimeFieldElement:
        return PrimeFieldElement(0, self.p)

    @property
    def one(self) -> PrimeFieldElement:
        return PrimeFieldElement(1, self.p)

    def parse(self, text) -> PrimeFieldElement:
        frac = Fraction(str(text).replace("−", "-").strip())
        return self(frac)

    def format(self, value) -> str:
        return str(value.residue)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash((PrimeField, self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(spec) -> RationalField | PrimeField:
    """Build a field from its document form: "rational" or {"prime": p}."""
    if spec == "rational":
        return QQ
    if isinstance(spec, dict) and set(spec) == {"prime"}:
        return GF(int(spec["prime"]))
    raise ValueError(f"unrecognized field specification {spec!r}")


def field_to_spec(field) -> object:
    if isinstance(field, RationalField):
        return "rational"
    if isinstance(field, PrimeField):
        return {"prime": field.p}
    raise ValueError(f"unrecognized field {field!r}")
