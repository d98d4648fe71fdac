"""Homogeneous ideals over prime fields: Buchberger under grevlex, dimension
from the leading-term staircase, and regular-sequence tests.

The engine works on raw ``{exponent: int}`` dicts for speed and converts to
``MultiPoly`` at the boundary.
"""
from __future__ import annotations

import heapq
import operator
from dataclasses import dataclass
from typing import Sequence

from .algebra.fields import PrimeField
from .algebra.poly import MultiPoly, grevlex_key

REGULAR = "REGULAR"
NOT_REGULAR = "NOT_REGULAR"
INDETERMINATE = "INDETERMINATE"


def _hkey(e: tuple) -> tuple:
    # min-heap key that pops the grevlex-largest monomial first
    return (-sum(e),) + tuple(reversed(e))


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(map(max, a, b))


def _coprime(a: tuple, b: tuple) -> bool:
    return not any(x and y for x, y in zip(a, b))


class _Poly:
    """Monic basis element: leading exponent plus grevlex-sorted tail."""

    __slots__ = ("lt", "tail", "terms")

    def __init__(self, terms: dict):
        items = sorted(terms.items(), key=lambda t: _hkey(t[0]))
        self.lt = items[0][0]
        self.tail = items[1:]
        self.terms = terms


def _reduce(f: dict, basis: Sequence[_Poly], p: int) -> dict:
    """Full reduction of f by the basis; returns the remainder."""
    f = dict(f)
    heap = [(_hkey(e), e) for e in f]
    heapq.heapify(heap)
    rem = {}
    add = operator.add
    while heap:
        _, e = heapq.heappop(heap)
        c = f.pop(e, 0)
        if not c:
            continue
        for g in basis:
            lt = g.lt
            if all(x >= y for x, y in zip(e, lt)):
                q = tuple(x - y for x, y in zip(e, lt))
                for te, tc in g.tail:
                    ne = tuple(map(add, te, q))
                    old = f.get(ne)
                    if old is None:
                        f[ne] = -c * tc % p
                        heapq.heappush(heap, (_hkey(ne), ne))
                    else:
                        f[ne] = (old - c * tc) % p
                break
        else:
            rem[e] = c
    return rem


def _monic(f: dict, p: int) -> dict:
    lt = min(f, key=_hkey)
    inv = pow(f[lt], -1, p)
    return {e: c * inv % p for e, c in f.items()}


def _spoly(f: _Poly, g: _Poly, p: int) -> dict:
    m = _lcm(f.lt, g.lt)
    qf = tuple(x - y for x, y in zip(m, f.lt))
    qg = tuple(x - y for x, y in zip(m, g.lt))
    out: dict = {}
    for e, c in f.tail:
        ne = tuple(map(operator.add, e, qf))
        out[ne] = (out.get(ne, 0) + c) % p
    for e, c in g.tail:
        ne = tuple(map(operator.add, e, qg))
        out[ne] = (out.get(ne, 0) - c) % p
    return {e: c for e, c in out.items() if c}


class GroebnerEngine:
    """Incremental Buchberger with Gebauer-Moeller pair updates.

    Pairs whose S-polynomial degree exceeds ``degree_cap`` stay pending and
    the engine reports itself truncated while any remain.
    """

    def __init__(self, nvars: int, p: int, degree_cap: int | None = None):
        self.nvars = nvars
        self.p = p
        self.degree_cap = degree_cap
        self.polys: list[_Poly] = []
        self.active: list[int] = []
        self.pairs: list[tuple[int, int, tuple]] = []
        self.reductions = 0

    @property
    def truncated(self) -> bool:
        return bool(self.pairs)

    def add(self, terms: dict) -> None:
        red = _reduce(terms, [self.polys[i] for i in self.active], self.p)
        if red:
            self._update(_Poly(_monic(red, self.p)))
        self._run()

    def _update(self, h: _Poly) -> None:
        t = len(self.polys)
        self.polys.append(h)
        lt_h = h.lt
        cand = [(i, _lcm(self.polys[i].lt, lt_h)) for i in self.active]
        kept = []
        for idx, (i, m) in enumerate(cand):
            if _coprime(self.polys[i].lt, lt_h):
                kept.append((i, m, True))
                continue
            others = [mm for _, mm in cand[idx + 1:]] + [mm for _, mm, _ in kept]
            if not any(_divides(mm, m) for mm in others):
                kept.append((i, m, False))
        new_pairs = [(i, t, m) for i, m, cop in kept if not cop]
        old = []
        for i, j, m in self.pairs:
            if (_divides(lt_h, m)
                    and _lcm(self.polys[i].lt, lt_h) != m
                    and _lcm(self.polys[j].lt, lt_h) != m):
                continue
            old.append((i, j, m))
        self.pairs = old + new_pairs
        self.active = [i for i in self.active if not _divides(lt_h, self.polys[i].lt)] + [t]

    def _run(self) -> None:
        while self.pairs:
            # normal strategy: smallest lcm first (degree, then grevlex)
            k = min(range(len(self.pairs)), key=lambda n: grevlex_key(self.pairs[n][2]))
            i, j, m = self.pairs[k]
            if self.degree_cap is not None and sum(m) > self.degree_cap:
                return
            self.pairs.pop(k)
            s = _spoly(self.polys[i], self.polys[j], self.p)
            self.reductions += 1
            if not s:
                continue
            red = _reduce(s, [self.polys[a] for a in self.active], self.p)
            if red:
                self._update(_Poly(_monic(red, self.p)))

    def leading_exponents(self) -> list[tuple]:
        return [self.polys[i].lt for i in self.active]

    def reduced_basis(self) -> list[dict]:
        basis = [self.polys[i] for i in self.active]
        out = []
        for k, g in enumerate(basis):
            others = basis[:k] + basis[k + 1:]
            tail = _reduce(dict(g.tail), others, self.p)
            tail[g.lt] = 1
            out.append(tail)
        out.sort(key=lambda t: _hkey(min(t, key=_hkey)))
        return out

    def normal_form(self, terms: dict) -> dict:
        return _reduce(terms, [self.polys[i] for i in self.active], self.p)


@dataclass(frozen=True)
class IdealBasis:
    generators: tuple[MultiPoly, ...]
    groebner: tuple[MultiPoly, ...] | None = None
    degree_cap: int | None = None
    truncated: bool = False

    @property
    def nvars(self) -> int:
        return self.generators[0].nvars

    @property
    def field(self):
        return self.generators[0].field

    def leading_exponents(self) -> list[tuple]:
        if self.groebner is None:
            raise ValueError("no Groebner basis computed")
        return [g.leading_term()[0] for g in self.groebner]


def _validate(gens: Sequence[MultiPoly], allow_zero: bool = False) -> None:
    if not gens:
        raise ValueError("empty generator list")
    f0 = gens[0]
    if not isinstance(f0.field, PrimeField):
        raise TypeError("ideals are supported over prime fields only")
    for g in gens:
        if g.field != f0.field:
            raise TypeError("coefficient domain mismatch")
        if g.nvars != f0.nvars:
            raise ValueError("nvars mismatch")
        if g.is_zero():
            if not allow_zero:
                raise ValueError("zero generator")
            continue
        if not g.is_homogeneous():
            raise ValueError("generators must be homogeneous")


def groebner(gens: Sequence[MultiPoly], degree_cap: int | None = None) -> IdealBasis:
    _validate(gens)
    f0 = gens[0]
    eng = GroebnerEngine(f0.nvars, f0.field.p, degree_cap)
    for g in sorted(gens, key=lambda g: g.degree()):
        eng.add(dict(g.terms))
    basis = tuple(MultiPoly._make(f0.field, f0.nvars, t) for t in eng.reduced_basis())
    return IdealBasis(tuple(gens), basis, degree_cap, eng.truncated)


def min_hitting_set(supports: Sequence[int], nvars: int) -> int:
    """Smallest number of variables meeting every support bitmask."""
    sets = sorted(set(supports), key=lambda s: bin(s).count("1"))
    # drop supersets: hitting a subset already hits the superset
    minimal: list[int] = []
    for s in sets:
        if not any(m & s == m for m in minimal):
            minimal.append(s)
    best = [nvars + 1]

    def rec(chosen: int, size: int) -> None:
        if size >= best[0]:
            return
        unhit = [s for s in minimal if not s & chosen]
        if not unhit:
            best[0] = size
            return
        s = min(unhit, key=lambda t: bin(t).count("1"))
        for v in range(nvars):
            if s >> v & 1:
                rec(chosen | (1 << v), size + 1)

    rec(0, 0)
    return best[0]


def dimension_from_leading(exps: Sequence[tuple], nvars: int) -> int:
    """Projective dimension of the staircase of a monomial ideal."""
    supports = []
    for e in exps:
        mask = 0
        for i, x in enumerate(e):
            if x:
                mask |= 1 << i
        if mask == 0:
            return -1
        supports.append(mask)
    if not supports:
        return nvars - 1
    return nvars - min_hitting_set(supports, nvars) - 1


def projective_dimension(ideal: IdealBasis) -> int:
    if ideal.groebner is None:
        ideal = groebner(list(ideal.generators), ideal.degree_cap)
    if ideal.truncated:
        raise ValueError("truncated Groebner basis: dimension not certified")
    return dimension_from_leading(ideal.leading_exponents(), ideal.nvars)


def linear_part_dimension(gens: Sequence[MultiPoly]) -> int:
    """Dimension of the degree-1 piece of a homogeneous ideal."""
    _validate(gens)
    f0 = gens[0]
    eng = GroebnerEngine(f0.nvars, f0.field.p, degree_cap=1)
    for g in gens:
        if g.degree() == 1:
            eng.add(dict(g.terms))
    return sum(1 for e in eng.leading_exponents() if sum(e) == 1)


@dataclass(frozen=True)
class RegularityResult:
    """Outcome of a regular-sequence test.

    ``index`` is the 1-based prefix length of the first failure for
    NOT_REGULAR. ``dims`` lists, per prefix, the projective dimension of the
    vanishing set (an upper bound once ``truncated`` is set).
    """

    status: str
    index: int | None = None
    dims: tuple[int, ...] = ()
    truncated: bool = False
    degree_cap: int | None = None
    certified_prefix: int = 0

    @property
    def regular(self) -> bool:
        return self.status == REGULAR


def is_regular_sequence(seq: Sequence[MultiPoly], degree_cap: int | None = None) -> RegularityResult:
    """Homogeneous regular-sequence test via prefix dimensions.

    Each prefix of length j must cut out a set of projective dimension
    nvars - 1 - j. A truncated basis gives only an upper bound on the
    dimension, which still certifies a prefix when it meets the expected
    value; otherwise the answer is INDETERMINATE.
    """
    if not seq:
        return RegularityResult(REGULAR)
    _validate(seq, allow_zero=True)
    n = seq[0].nvars
    if len(seq) > n:
        raise ValueError(f"sequence of length {len(seq)} exceeds nvars = {n}")
    for f in seq:
        if not f.is_zero() and f.degree() < 1:
            raise ValueError("sequence elements need positive degree")
    if degree_cap is None:
        degree_cap = 3 + sum(max(f.degree(), 0) for f in seq)
    eng = GroebnerEngine(n, seq[0].field.p, degree_cap)
    dims: list[int] = []
    certified = 0
    ever_truncated = False
    for j, f in enumerate(seq, 1):
        if f.is_zero():
            dims.append(dims[-1] if dims else n - 1)
            return RegularityResult(NOT_REGULAR, j, tuple(dims), ever_truncated, degree_cap, certified)
        eng.add(dict(f.terms))
        dim = dimension_from_leading(eng.leading_exponents(), n)
        dims.append(dim)
        expected = n - 1 - j
        if eng.truncated:
            ever_truncated = True
        if dim == expected:
            # an upper bound meeting the Krull lower bound is exact, and a
            # complete intersection certifies every shorter prefix as well
            certified = j
        elif not ever_truncated:
            return RegularityResult(NOT_REGULAR, j, tuple(dims), False, degree_cap, certified)
    if certified == len(seq):
        return RegularityResult(REGULAR, None, tuple(dims), ever_truncated, degree_cap, certified)
    return RegularityResult(INDETERMINATE, None, tuple(dims), True, degree_cap, certified)


def is_regular_sequence_affine(seq: Sequence[MultiPoly], degree_cap: int | None = None) -> RegularityResult:
    """Diagnostic for non-homogeneous sequences through the origin.

    Homogenizes with an extra variable. Codimension len(seq) for the
    homogenized ideal bounds the affine codimension, so it certifies the
    affine sequence as regular; excess dimension may come from points at
    infinity, so anything else is INDETERMINATE.
    """
    if not seq:
        return RegularityResult(REGULAR)
    hom = [f.homogenize() if not f.is_zero() else MultiPoly.zero(f.field, f.nvars + 1) for f in seq]
    res = is_regular_sequence(hom, degree_cap)
    if res.status == REGULAR:
        return res
    return RegularityResult(INDETERMINATE, None, res.dims, res.truncated, res.degree_cap,
                            res.certified_prefix)
