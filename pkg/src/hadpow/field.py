"""Exact scalar fields: the rationals and prime fields GF(p).

Matrices store *raw* values for speed (``Fraction`` over Q, ``int`` residues
over GF(p)); :class:`FieldSpec` supplies the arithmetic on raw values and
:class:`Scalar` is the user-facing immutable value that carries its field.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

RATIONAL = "rational"
PRIME = "prime"

# Deterministic Miller-Rabin: these bases are exact for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3317044064679887385961981

_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")
_RESIDUE_RE = re.compile(r"^\+?\d+$")


class FieldMismatch(TypeError):
    """Binary operation across two different fields."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    if n >= _MR_LIMIT:
        # no deterministic witness set is known past this bound
        from sympy import isprime

        return bool(isprime(n))
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``p == 0``) or the prime field GF(p)."""

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind == RATIONAL:
            if self.p != 0:
                raise ValueError("the rational field takes no modulus")
        elif self.kind == PRIME:
            if not isinstance(self.p, int) or not is_prime(self.p):
                raise ValueError(f"GF(p) needs a prime modulus, got {self.p!r}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rational(cls) -> "FieldSpec":
        return cls(RATIONAL)

    @classmethod
    def gf(cls, p: int) -> "FieldSpec":
        return cls(PRIME, p)

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_rational(self) -> bool:
        return self.kind == RATIONAL

    def __str__(self):
        return "rational" if self.is_rational else f"gf {self.p}"

    # -- raw arithmetic -------------------------------------------------
    # Raw values are Fraction (Q) or int in [0, p) (GF(p)).

    @property
    def zero(self):
        return Fraction(0) if self.is_rational else 0

    @property
    def one(self):
        return Fraction(1) if self.is_rational else 1

    def convert(self, value):
        """Coerce an int, Fraction, numeric string or Scalar to a raw value."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"{value.field} scalar used in {self}")
            return value.value
        if isinstance(value, str):
            return parse_scalar(value, self).value
        if isinstance(value, bool):
            value = int(value)
        if self.is_rational:
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
            raise TypeError(f"cannot convert {type(value).__name__} to a rational")
        if isinstance(value, Fraction):
            if value.denominator != 1:
                return value.numerator % self.p * pow(value.denominator, -1, self.p) % self.p
            value = value.numerator
        if isinstance(value, int):
            return value % self.p
        raise TypeError(f"cannot convert {type(value).__name__} to GF({self.p})")

    def add(self, a, b):
        return a + b if self.is_rational else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.is_rational else (a - b) % self.p

    def neg(self, a):
        return -a if self.is_rational else (-a) % self.p

    def mul(self, a, b):
        return a * b if self.is_rational else a * b % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational:
            return 1 / a
        return _inv_mod(a, self.p)

    def pow(self, a, r: int):
        return a**r if self.is_rational else pow(a, r, self.p)

    def element(self, value) -> "Scalar":
        return Scalar(self, self.convert(value))


def _inv_mod(a: int, p: int) -> int:
    # extended Euclid
    r0, r1, s0, s1 = p, a % p, 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r0 != 1:
        raise ZeroDivisionError(f"{a} is not invertible mod {p}")
    return s0 % p


Q = FieldSpec.rational()


def characteristic_admits(field: FieldSpec, n: int) -> bool:
    """True iff the characteristic of ``field`` is zero or exceeds ``n``."""
    if n < 1:
        raise ValueError("n must be positive")
    return field.characteristic == 0 or field.characteristic > n


class Scalar:
    """Immutable exact field element."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine {self.field} and {other.field}")
            return other.value
        if isinstance(other, int):
            return self.field.convert(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field, self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Scalar(self.field, self.field.mul(self.value, self.field.inv(b)))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __pow__(self, r: int):
        if r < 0:
            return self.inverse() ** (-r)
        return Scalar(self.field, self.field.pow(self.value, r))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return not self.value

    def is_one(self) -> bool:
        return self.value == 1

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == self.field.convert(other)
            except (TypeError, ZeroDivisionError):
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return f"Scalar({render_scalar(self)!r}, {self.field})"

    def __str__(self):
        return render_scalar(self)


ScalarLike = Union[Scalar, int, Fraction, str]


def parse_scalar(text: str, field: FieldSpec) -> Scalar:
    """Parse ``"int"`` / ``"int/uint"`` over Q, or a nonnegative integer over GF(p)."""
    text = text.strip()
    if field.is_rational:
        match = _RATIONAL_RE.match(text)
        if not match:
            raise ValueError(f"malformed rational {text!r}")
        num = int(match.group(1))
        den = int(match.group(2)) if match.group(2) is not None else 1
        if den == 0:
            raise ZeroDivisionError(f"zero denominator in {text!r}")
        return Scalar(field, Fraction(num, den))
    if not _RESIDUE_RE.match(text):
        raise ValueError(f"malformed GF({field.p}) element {text!r}")
    return Scalar(field, int(text) % field.p)


def render_raw(value, field: FieldSpec) -> str:
    if field.is_rational:
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    return str(value)


def render_scalar(s: Scalar) -> str:
    return render_raw(s.value, s.field)
