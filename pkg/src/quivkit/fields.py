"""Exact scalar arithmetic: the rationals and prime fields GF(p).

Rational scalars are ``fractions.Fraction`` instances; prime-field scalars
are plain ints in ``range(p)``.  All linear algebra in the package goes
through a :class:`Field` object so the two cases share one code path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

MAX_CHARACTERISTIC = 2**31


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Base-field choice: kind is 'rationals' or 'prime-field'."""

    kind: str
    characteristic: int

    def __post_init__(self):
        if self.kind == "rationals":
            if self.characteristic != 0:
                raise ValueError("rationals have characteristic 0")
        elif self.kind == "prime-field":
            p = self.characteristic
            if not (2 <= p <= MAX_CHARACTERISTIC and _is_prime(p)):
                raise ValueError(f"characteristic must be a prime <= 2^31, got {p}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    def field(self) -> "Field":
        return Field(self.characteristic)


class Field:
    """Arithmetic over Q (char 0) or GF(p).

    Scalars are falsy exactly when zero in both representations, which
    the linear algebra exploits in its inner loops.  Over Q the bound
    operations are the raw C-level operators.
    """

    def __init__(self, char: int = 0):
        self.char = char
        if char == 0:
            import operator

            self.add = operator.add
            self.sub = operator.sub
            self.mul = operator.mul
            self.neg = operator.neg

    def __eq__(self, other):
        return isinstance(other, Field) and self.char == other.char

    def __repr__(self):
        return "Field(Q)" if self.char == 0 else f"Field(GF({self.char}))"

    @property
    def zero(self):
        return Fraction(0) if self.char == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.char == 0 else 1

    def from_fraction(self, q: Fraction):
        if self.char == 0:
            return Fraction(q)
        num, den = q.numerator % self.char, q.denominator % self.char
        if den == 0:
            raise ZeroDivisionError(f"denominator divisible by {self.char}")
        return num * pow(den, self.char - 2, self.char) % self.char

    def from_int(self, n: int):
        return Fraction(n) if self.char == 0 else n % self.char

    def add(self, a, b):
        return a + b if self.char == 0 else (a + b) % self.char

    def sub(self, a, b):
        return a - b if self.char == 0 else (a - b) % self.char

    def mul(self, a, b):
        return a * b if self.char == 0 else (a * b) % self.char

    def neg(self, a):
        return -a if self.char == 0 else (-a) % self.char

    def inv(self, a):
        if self.char == 0:
            return Fraction(1) / a
        if a % self.char == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.char - 2, self.char)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def scalar_str(self, a) -> str:
        if self.char == 0:
            return str(a)
        return str(a % self.char)
