"""Coefficient domains: the rationals and prime fields of odd characteristic.

A field object is a tag carried by every polynomial. Coefficients are plain
Python values (``Fraction`` over Q, ``int`` in ``[0, p)`` over F_p) so that
the inner loops of polynomial arithmetic stay cheap; the field object knows
how to combine them.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


def binom(n: int, k: int) -> int:
    """Binomial coefficient C(n, k), zero when k lies outside [0, n]."""
    if n < 0 or k < 0 or k > n:
        return 0
    k = min(k, n - k)
    out = 1
    for i in range(1, k + 1):
        out = out * (n - k + i) // i
    return out


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24, trial division below 1000."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    if n < 1681:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """Abstract coefficient domain."""

    characteristic: int = 0

    def __call__(self, value):
        raise NotImplementedError

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def is_zero(self, a) -> bool:
        return a == 0

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def parse(self, token: str):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def header(self) -> str:
        raise NotImplementedError


class RationalField(Field):
    """The field Q with ``Fraction`` coefficients."""

    characteristic = 0

    def __call__(self, value) -> Fraction:
        if isinstance(value, PrimeFieldElement):
            raise TypeError("cannot coerce a prime-field element into Q")
        if isinstance(value, float):
            raise TypeError("floating point coefficients are not allowed")
        return Fraction(value)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def parse(self, token: str) -> Fraction:
        return Fraction(token)

    def format(self, a) -> str:
        return str(a)

    def header(self) -> str:
        return "field=Q"

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")


QQ = RationalField()


class PrimeField(Field):
    """The field F_p for an odd prime p, coefficients stored as ints in [0, p)."""

    def __init__(self, p: int):
        if p == 2:
            raise ValueError("characteristic 2 is not supported")
        if not is_prime(p):
            raise ValueError(f"{p} is not a prime")
        self.p = p
        self.characteristic = p

    def __call__(self, value) -> int:
        if isinstance(value, PrimeFieldElement):
            if value.p != self.p:
                raise TypeError("mismatched prime fields")
            return value.value
        if isinstance(value, float):
            raise TypeError("floating point coefficients are not allowed")
        if isinstance(value, Fraction):
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def element(self, value) -> PrimeFieldElement:
        return PrimeFieldElement(self(value), self.p)

    def parse(self, token: str) -> int:
        return self(Fraction(token))

    def format(self, a) -> str:
        return str(a)

    def header(self) -> str:
        return f"field=Fp p={self.p}"

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    """Cached constructor so that equal primes share one field object."""
    return PrimeField(p)


class PrimeFieldElement:
    """A standalone element of F_p with operator overloading.

    Polynomials store bare ints; this wrapper is for user-facing arithmetic.
    """

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        if p == 2 or not is_prime(p):
            raise ValueError("modulus must be an odd prime")
        self.value = int(value) % p
        self.p = p

    def _other(self, other) -> int:
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise TypeError("mismatched prime fields")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(o - self.value, self.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElement(-self.value, self.p)

    def inverse(self) -> PrimeFieldElement:
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero")
        return PrimeFieldElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * PrimeFieldElement(o, self.p).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return PrimeFieldElement(pow(self.value, k, self.p), self.p)

    def __eq__(self, other) -> bool:
        if isinstance(other, PrimeFieldElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.p))

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.p})"
