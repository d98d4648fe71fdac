"""Quadratic forms as symmetric matrices, with exact rank."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .algebra.fields import Field, PrimeField
from .algebra.poly import MultiPoly


@dataclass(frozen=True)
class QuadForm:
    """Symmetric n x n matrix over ``field``; x^T M x is the form."""

    field: Field
    entries: tuple[tuple, ...]

    def __post_init__(self):
        if self.field.characteristic == 2:
            raise ValueError("characteristic 2 is not supported")
        n = len(self.entries)
        for i in range(n):
            if len(self.entries[i]) != n:
                raise ValueError("matrix is not square")
            for j in range(i):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError("matrix is not symmetric")

    @property
    def n(self) -> int:
        return len(self.entries)

    def evaluate(self, x: Sequence):
        f = self.field
        v = [f(t) for t in x]
        total = 0
        for i, row in enumerate(self.entries):
            for j, m in enumerate(row):
                if m:
                    total += m * v[i] * v[j]
        return f(total)

    def to_poly(self) -> MultiPoly:
        f = self.field
        n = self.n
        terms = {}
        for i in range(n):
            for j in range(i, n):
                c = self.entries[i][j] if i == j else 2 * self.entries[i][j]
                e = [0] * n
                e[i] += 1
                e[j] += 1
                terms[tuple(e)] = c
        return MultiPoly(f, n, terms)

    def congruent(self, g: Sequence[Sequence]) -> QuadForm:
        """The form G^T M G."""
        f = self.field
        n = self.n
        m = self.entries
        k = len(g[0]) if n else 0
        mg = [[f(sum(m[i][t] * g[t][j] for t in range(n))) for j in range(k)] for i in range(n)]
        out = [[f(sum(g[t][i] * mg[t][j] for t in range(n))) for j in range(k)] for i in range(k)]
        return QuadForm(f, tuple(tuple(r) for r in out))


def from_degree2(f: MultiPoly) -> QuadForm:
    if f.field.characteristic == 2:
        raise ValueError("characteristic 2 is not supported")
    if not f.is_zero() and (f.degree() != 2 or not f.is_homogeneous()):
        raise ValueError("expected a homogeneous quadratic form")
    fld = f.field
    n = f.nvars
    m = [[fld(0)] * n for _ in range(n)]
    half = fld.inv(fld(2))
    for e, c in f.terms.items():
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        i, j = idx
        if i == j:
            m[i][i] = c
        else:
            h = fld.mul(c, half)
            m[i][j] = h
            m[j][i] = h
    return QuadForm(fld, tuple(tuple(r) for r in m))


def matrix_rank(rows: Sequence[Sequence], field: Field) -> int:
    """Exact rank: Bareiss over Q (after clearing denominators), elimination over F_p."""
    if isinstance(field, PrimeField):
        return _rank_mod_p([list(r) for r in rows], field.p)
    return _rank_bareiss(rows)


def _rank_mod_p(a: list[list[int]], p: int) -> int:
    rank = 0
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if a[r][col] % p), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][col], -1, p)
        prow = [x * inv % p for x in a[rank]]
        a[rank] = prow
        for r in range(nrows):
            if r != rank and a[r][col] % p:
                c = a[r][col]
                a[r] = [(x - c * y) % p for x, y in zip(a[r], prow)]
        rank += 1
    return rank


def _rank_bareiss(rows: Sequence[Sequence]) -> int:
    # clear denominators row by row; rank is unchanged by nonzero row scaling
    a = []
    for r in rows:
        fr = [Fraction(x) for x in r]
        den = lcm(*(x.denominator for x in fr)) if fr else 1
        a.append([int(x * den) for x in fr])
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if a[r][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        pv = a[rank][col]
        for r in range(rank + 1, nrows):
            for c in range(col + 1, ncols):
                a[r][c] = (pv * a[r][c] - a[r][col] * a[rank][c]) // prev
            a[r][col] = 0
        prev = pv
        rank += 1
    return rank


def rank(q: QuadForm) -> int:
    return matrix_rank(q.entries, q.field)


def hyperplane_basis(lam: MultiPoly) -> list[list]:
    """Columns spanning {lam = 0}: an n x (n-1) matrix."""
    coeffs = lam.linear_coefficients()
    f = lam.field
    n = len(coeffs)
    k = next((i for i, c in enumerate(coeffs) if c != 0), None)
    if k is None:
        raise ValueError("the linear form is zero")
    inv = f.inv(coeffs[k])
    cols = []
    for j in range(n):
        if j == k:
            continue
        v = [f(0)] * n
        v[j] = f(1)
        v[k] = f.neg(f.mul(coeffs[j], inv))
        cols.append(v)
    return [[cols[c][r] for c in range(n - 1)] for r in range(n)]


def rank_on_hyperplane(q: QuadForm, lam: MultiPoly) -> int:
    if lam.nvars != q.n:
        raise ValueError("linear form and quadratic form live in different spaces")
    if lam.is_zero():
        raise ValueError("the linear form is zero")
    if lam.field != q.field:
        raise TypeError("coefficient domain mismatch")
    b = hyperplane_basis(lam)
    if q.n == 1:
        return 0
    return rank(q.congruent(b))
