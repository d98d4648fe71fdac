"""Sparse multivariate polynomials over QQ or a prime field.

Terms are kept in a dict mapping exponent tuples to nonzero coefficients.
Canonical iteration uses the graded reverse lexicographic order, which is
the single monomial order of the package.
"""
from __future__ import annotations

import operator
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .fields import Field, PrimeField, binom


def grevlex_key(e: Sequence[int]) -> tuple:
    """Sort key: a larger key means a larger monomial under grevlex."""
    return (sum(e), tuple(-x for x in reversed(e)))


def monomials_of_degree(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of the given total degree, grevlex descending."""
    if degree < 0:
        return []
    if nvars == 0:
        return [()] if degree == 0 else []
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], left: int, slots: int) -> None:
        if slots == 1:
            out.append(tuple(prefix + [left]))
            return
        for k in range(left, -1, -1):
            prefix.append(k)
            rec(prefix, left - k, slots - 1)
            prefix.pop()

    rec([], degree, nvars)
    out.sort(key=grevlex_key, reverse=True)
    return out


def _modulus(field: Field) -> int:
    return field.p if isinstance(field, PrimeField) else 0


def _clean(terms: dict, p: int) -> dict:
    if p:
        return {e: c % p for e, c in terms.items() if c % p}
    return {e: c for e, c in terms.items() if c}


def _mul_raw(a: dict, b: dict, p: int) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    add = operator.add
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = tuple(map(add, ea, eb))
            out[e] = get(e, 0) + ca * cb
    return _clean(out, p)


def _add_raw(a: dict, b: dict, p: int, sign: int = 1) -> dict:
    out = dict(a)
    get = out.get
    for e, c in b.items():
        out[e] = get(e, 0) + sign * c
    return _clean(out, p)


class MultiPoly:
    """Immutable sparse polynomial in ``nvars`` variables over ``field``."""

    __slots__ = ("field", "nvars", "_terms", "_hash")

    def __init__(self, field: Field, nvars: int, terms: Mapping | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e} for {nvars} variables")
            c = field(c)
            if c != 0:
                clean[e] = c
        self.field = field
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _make(cls, field: Field, nvars: int, terms: dict) -> MultiPoly:
        # trusted constructor: terms already reduced and free of zeros
        obj = cls.__new__(cls)
        obj.field = field
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def from_terms(cls, field: Field, nvars: int, pairs: Iterable) -> MultiPoly:
        """Build from (exponent, coefficient) pairs, rejecting repeated exponents."""
        seen: dict = {}
        for e, c in pairs:
            e = tuple(e)
            if e in seen:
                raise ValueError(f"duplicate exponent vector {e}")
            seen[e] = c
        return cls(field, nvars, seen)

    @classmethod
    def zero(cls, field: Field, nvars: int) -> MultiPoly:
        return cls._make(field, nvars, {})

    @classmethod
    def constant(cls, field: Field, nvars: int, c) -> MultiPoly:
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, field: Field, nvars: int, i: int) -> MultiPoly:
        e = [0] * nvars
        e[i] = 1
        return cls._make(field, nvars, {tuple(e): field(1)})

    @classmethod
    def monomial(cls, field: Field, nvars: int, exp: Sequence[int], c=1) -> MultiPoly:
        return cls(field, nvars, {tuple(exp): c})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def coefficient(self, exp: Sequence[int]):
        return self._terms.get(tuple(exp), self.field(0))

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        """Terms in grevlex descending order."""
        return sorted(self._terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[tuple[int, ...], object]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms, key=grevlex_key)
        return e, self._terms[e]

    def linear_coefficients(self) -> list:
        """Coefficient vector of a homogeneous linear form."""
        if self._terms and (self.degree() != 1 or not self.is_homogeneous()):
            raise ValueError("not a linear form")
        out = [self.field(0)] * self.nvars
        for e, c in self._terms.items():
            out[e.index(1)] = c
        return out

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: MultiPoly) -> None:
        if self.field != other.field:
            raise TypeError(f"coefficient domain mismatch: {self.field} vs {other.field}")
        if self.nvars != other.nvars:
            raise ValueError(f"nvars mismatch: {self.nvars} vs {other.nvars}")

    def _lift(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.field, self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return MultiPoly._make(self.field, self.nvars,
                               _add_raw(self._terms, other._terms, _modulus(self.field)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return MultiPoly._make(self.field, self.nvars,
                               _add_raw(self._terms, other._terms, _modulus(self.field), -1))

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> MultiPoly:
        c = self.field(c)
        p = _modulus(self.field)
        return MultiPoly._make(self.field, self.nvars,
                               _clean({e: v * c for e, v in self._terms.items()}, p))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return MultiPoly._make(self.field, self.nvars,
                               _mul_raw(self._terms, other._terms, _modulus(self.field)))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MultiPoly:
        if k < 0:
            raise ValueError("negative exponent")
        result = MultiPoly.constant(self.field, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return (self.field == other.field and self.nvars == other.nvars
                    and self._terms == other._terms)
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(self.field, self.nvars, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self.nvars, frozenset(self._terms.items())))
        return self._hash

    def monic(self) -> MultiPoly:
        if not self._terms:
            return self
        _, c = self.leading_term()
        return self.scale(self.field.inv(c))

    # -- evaluation and calculus ------------------------------------------

    def evaluate(self, point: Sequence):
        if len(point) != self.nvars:
            raise ValueError("point has the wrong number of coordinates")
        f = self.field
        vals = [f(v) for v in point]
        total = 0
        for e, c in self._terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t = t * v ** k
            total += t
        return f(total)

    def derivative(self, i: int) -> MultiPoly:
        out = {}
        for e, c in self._terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                out[ne] = c * k
        return MultiPoly._make(self.field, self.nvars, _clean(out, _modulus(self.field)))

    def gradient(self) -> list[MultiPoly]:
        return [self.derivative(i) for i in range(self.nvars)]

    def homogeneous_components(self) -> list[MultiPoly]:
        """Components indexed by degree 0..deg f; ``[0]`` for the zero polynomial."""
        top = max(self.degree(), 0)
        parts: list[dict] = [{} for _ in range(top + 1)]
        for e, c in self._terms.items():
            parts[sum(e)][e] = c
        return [MultiPoly._make(self.field, self.nvars, t) for t in parts]

    def homogeneous_part(self, k: int) -> MultiPoly:
        return MultiPoly._make(self.field, self.nvars,
                               {e: c for e, c in self._terms.items() if sum(e) == k})

    # -- substitutions ----------------------------------------------------

    def substitute_linear(self, images: Sequence[MultiPoly]) -> MultiPoly:
        """Replace variable i by ``images[i]``; every image has degree at most 1."""
        if len(images) != self.nvars:
            raise ValueError(f"expected {self.nvars} images, got {len(images)}")
        if self.nvars == 0:
            raise ValueError("cannot infer the target ring from an empty image list")
        target = images[0].nvars
        for g in images:
            if g.field != self.field:
                raise TypeError("coefficient domain mismatch in images")
            if g.nvars != target:
                raise ValueError("images live in different rings")
            if g.degree() > 1:
                raise ValueError("images must have degree at most 1")
        return self.substitute(images)

    def substitute(self, images: Sequence[MultiPoly]) -> MultiPoly:
        """Composition with arbitrary polynomial images (Horner per variable)."""
        if len(images) != self.nvars:
            raise ValueError(f"expected {self.nvars} images, got {len(images)}")
        field = self.field
        target = images[0].nvars if images else 0
        p = _modulus(field)
        if not self._terms:
            return MultiPoly.zero(field, target)
        simple = all(len(g._terms) <= 1 for g in images)
        if simple:
            return self._substitute_monomial(images, target, p)
        img = [g._terms for g in images]
        one = (0,) * target

        def rec(terms: dict, i: int) -> dict:
            if i == self.nvars:
                c = sum(terms.values())
                return {one: c} if (c % p if p else c) else {}
            groups: dict = {}
            for e, c in terms.items():
                groups.setdefault(e[i], {})[e] = c
            acc: dict = {}
            for k in range(max(groups), -1, -1):
                if acc:
                    acc = _mul_raw(acc, img[i], p)
                if k in groups:
                    acc = _add_raw(acc, rec(groups[k], i + 1), p)
            return acc

        return MultiPoly._make(field, target, rec(dict(self._terms), 0))

    def _substitute_monomial(self, images, target: int, p: int) -> MultiPoly:
        # each image is zero or a single scaled monomial
        single = [next(iter(g._terms.items()), None) for g in images]
        out: dict = {}
        for e, c in self._terms.items():
            exp = [0] * target
            coef = c
            for k, s in zip(e, single):
                if not k:
                    continue
                if s is None:
                    coef = 0
                    break
                se, sc = s
                coef = coef * sc ** k
                for j, x in enumerate(se):
                    if x:
                        exp[j] += x * k
            if coef:
                t = tuple(exp)
                out[t] = out.get(t, 0) + coef
        return MultiPoly._make(self.field, target, _clean(out, p))

    def translate(self, shifts: Sequence) -> MultiPoly:
        """Return f(x + shifts), expanding one variable at a time."""
        if len(shifts) != self.nvars:
            raise ValueError("shift vector has the wrong length")
        p = _modulus(self.field)
        terms = dict(self._terms)
        for i, s in enumerate(shifts):
            s = self.field(s)
            if s == 0:
                continue
            new: dict = {}
            get = new.get
            for e, c in terms.items():
                k = e[i]
                if k == 0:
                    new[e] = get(e, 0) + c
                    continue
                head, tail = e[:i], e[i + 1:]
                spow = 1
                for j in range(k, -1, -1):
                    ne = head + (j,) + tail
                    new[ne] = get(ne, 0) + c * binom(k, j) * spow
                    spow = spow * s
                    if p:
                        spow %= p
            terms = _clean(new, p)
        return MultiPoly._make(self.field, self.nvars, terms)

    def dehomogenize(self, k: int) -> MultiPoly:
        """Set variable k to 1 and drop it."""
        p = _modulus(self.field)
        out: dict = {}
        for e, c in self._terms.items():
            ne = e[:k] + e[k + 1:]
            out[ne] = out.get(ne, 0) + c
        return MultiPoly._make(self.field, self.nvars - 1, _clean(out, p))

    def homogenize(self) -> MultiPoly:
        """Append a homogenizing variable as the last coordinate."""
        top = self.degree()
        out = {e + (top - sum(e),): c for e, c in self._terms.items()}
        return MultiPoly._make(self.field, self.nvars + 1, out)

    def add_variables(self, extra: int) -> MultiPoly:
        """View the polynomial in a ring with ``extra`` trailing variables."""
        pad = (0,) * extra
        return MultiPoly._make(self.field, self.nvars + extra,
                               {e + pad: c for e, c in self._terms.items()})

    # -- display ----------------------------------------------------------

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            if not mono:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(mono)
            else:
                pieces.append(f"{c}*{mono}")
        return " + ".join(pieces)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"MultiPoly({self.field!r}, {self.nvars}, {self.to_str()})"


def variables(field: Field, nvars: int) -> list[MultiPoly]:
    return [MultiPoly.var(field, nvars, i) for i in range(nvars)]


def linear_form(field: Field, coeffs: Sequence, constant=0) -> MultiPoly:
    """The polynomial constant + sum coeffs[i]*x_i."""
    n = len(coeffs)
    terms = {}
    for i, c in enumerate(coeffs):
        e = [0] * n
        e[i] = 1
        terms[tuple(e)] = c
    if constant:
        terms[(0,) * n] = constant
    return MultiPoly(field, n, terms)


def poly_mul(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return a * b


def homogeneous_components(f: MultiPoly) -> list[MultiPoly]:
    return f.homogeneous_components()


def substitute_linear(f: MultiPoly, images: Sequence[MultiPoly]) -> MultiPoly:
    return f.substitute_linear(images)
