"""Plane-curve slices and their squarefree / irreducibility certificates.

A set cut out by one or two equations in affine space is sliced by a random
affine subspace of the right dimension and projected to a plane curve
g(u, v) = 0. The curve is normalized so that g is monic in v of full degree;
then

* one squarefree specialization g(c, v) proves g squarefree,
* one irreducible specialization g(c, v) proves g irreducible over F_p,
* otherwise a u-adic Hensel factorization with exhaustive recombination
  gives the complete factorization over F_p (a reducibility witness), and
  a verified bivariate gcd(g, dg/dv) witnesses a repeated factor.

Bivariate polynomials are dicts {(i, j): c} for c * u^i * v^j.
"""
from __future__ import annotations

import itertools
import random
from math import comb
from dataclasses import dataclass, field
from typing import Sequence

from ..algebra import upoly
from ..algebra.poly import MultiPoly

IRREDUCIBLE = "IRREDUCIBLE"
REDUCIBLE = "REDUCIBLE"
NON_REDUCED = "NON_REDUCED"
UNDECIDED = "UNDECIDED"


# -- bivariate helpers ------------------------------------------------------

def bclean(g: dict, p: int) -> dict:
    return {k: c % p for k, c in g.items() if c % p}


def bmul(a: dict, b: dict, p: int) -> dict:
    out: dict = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            k = (i1 + i2, j1 + j2)
            out[k] = out.get(k, 0) + c1 * c2
    return bclean(out, p)


def bdeg_v(g: dict) -> int:
    return max((j for _, j in g), default=-1)


def bdeg_u(g: dict) -> int:
    return max((i for i, _ in g), default=-1)


def btotal(g: dict) -> int:
    return max((i + j for i, j in g), default=-1)


def to_vmajor(g: dict) -> list[list[int]]:
    """List over v-degree of univariate polynomials in u."""
    n = bdeg_v(g) + 1
    cols: list[list[int]] = [[] for _ in range(n)]
    for (i, j), c in g.items():
        col = cols[j]
        if len(col) <= i:
            col.extend([0] * (i + 1 - len(col)))
        col[i] = c
    return [upoly.trim(c) for c in cols]


def from_vmajor(cols: Sequence[Sequence[int]]) -> dict:
    return {(i, j): c for j, col in enumerate(cols) for i, c in enumerate(col) if c}


def to_umajor(g: dict) -> list[list[int]]:
    """List over u-degree of univariate polynomials in v."""
    return to_vmajor({(j, i): c for (i, j), c in g.items()})


def from_umajor(rows: Sequence[Sequence[int]]) -> dict:
    return {(i, j): c for i, row in enumerate(rows) for j, c in enumerate(row) if c}


def specialize_u(g: dict, c: int, p: int) -> list[int]:
    """g(c, v) as a univariate polynomial in v."""
    return upoly.normalize([upoly.evaluate(col, c, p) for col in to_vmajor(g)], p)


def bderiv_v(g: dict, p: int) -> dict:
    return bclean({(i, j - 1): c * j for (i, j), c in g.items() if j}, p)


def bshift_u(g: dict, c: int, p: int) -> dict:
    """g(u + c, v)."""
    out: dict = {}
    for (i, j), a in g.items():
        for k in range(i + 1):
            key = (k, j)
            out[key] = (out.get(key, 0) + a * comb(i, k) * pow(c, i - k, p)) % p
    return bclean(out, p)


def bdivmod_monic_v(a: dict, b: dict, p: int) -> tuple[dict, dict]:
    """Division in F_p[u][v] by b whose leading v-coefficient is 1."""
    bcols = to_vmajor(b)
    db = len(bcols) - 1
    if db < 0 or bcols[-1] != [1]:
        raise ValueError("divisor must be monic in v")
    r = [list(c) for c in to_vmajor(a)]
    q: list[list[int]] = [[] for _ in range(max(len(r) - db, 0))]
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if not c:
            continue
        q[k - db] = c
        for j in range(db + 1):
            r[k - db + j] = upoly.sub(r[k - db + j], upoly.mul(c, bcols[j], p), p)
    return from_vmajor(q), from_vmajor(r[:db] if db else [])


def bdivides(b: dict, a: dict, p: int) -> bool:
    return not bdivmod_monic_v(a, b, p)[1]


def bmonic_v(g: dict, p: int) -> dict | None:
    """Scale so the v-leading coefficient is 1; None if it is not constant."""
    top = bdeg_v(g)
    lead = {i: c for (i, j), c in g.items() if j == top}
    if set(lead) != {0}:
        return None
    inv = pow(lead[0], -1, p)
    return {k: c * inv % p for k, c in g.items()}


# -- slicing ----------------------------------------------------------------

@dataclass(frozen=True)
class PlaneSlice:
    """Random affine subspace base + sum t_j dirs[j], and the resulting curve."""

    base: tuple
    dirs: tuple
    curve: dict = field(compare=False)

    def to_json(self) -> dict:
        return {"base": list(self.base), "directions": [list(d) for d in self.dirs]}


def _restrict_affine(f: MultiPoly, base, dirs) -> MultiPoly:
    fld = f.field
    k = len(dirs)
    images = []
    for i in range(f.nvars):
        terms = {(0,) * k: base[i]}
        for j, d in enumerate(dirs):
            e = [0] * k
            e[j] = 1
            terms[tuple(e)] = d[i]
        images.append(MultiPoly(fld, k, terms))
    return f.substitute(images)


def _as_bivariate(f: MultiPoly) -> dict:
    return {(e[0], e[1]): c for e, c in f.terms.items()}


def _lead_w(f: MultiPoly, w: int, deg: int) -> bool:
    """True if the coefficient of w^deg in f is a nonzero constant."""
    top = [e for e in f.terms if e[w] == deg]
    return top == [tuple(deg if i == w else 0 for i in range(f.nvars))]


def curve_from_slice(equations: Sequence[MultiPoly], base, dirs) -> dict | None:
    """Project the sliced set to the (u, v)-plane; None if degenerate."""
    fld = equations[0].field
    p = fld.p
    restricted = [_restrict_affine(f, base, dirs) for f in equations]
    if any(r.is_zero() for r in restricted):
        return None
    if len(restricted) == 1:
        g = _as_bivariate(restricted[0])
    elif len(restricted) == 2:
        g = _resultant_w(restricted[0], restricted[1], p)
        if g is None:
            return None
    else:
        raise ValueError("slices handle one or two equations")
    g = bmonic_v(g, p)
    if g is None or bdeg_v(g) != btotal(g) or btotal(g) < 1:
        return None
    return g


def _resultant_w(Q: MultiPoly, G: MultiPoly, p: int) -> dict | None:
    """Res_w(Q, G) in (u, v) by evaluation on a grid and interpolation."""
    dq, dg = Q.degree(), G.degree()
    if dq < 1 or dg < 1 or not _lead_w(Q, 2, dq) or not _lead_w(G, 2, dg):
        return None
    D = dq * dg
    if p <= D:
        raise ValueError(f"p = {p} too small to interpolate a degree-{D} resultant")

    def wcoeffs(f: MultiPoly) -> list[dict]:
        cols: list[dict] = [{} for _ in range(f.degree() + 1)]
        for (i, j, k), c in f.terms.items():
            cols[k][(i, j)] = c
        return cols

    qc, gc = wcoeffs(Q), wcoeffs(G)

    def ev(col: dict, u: int, v: int) -> int:
        return sum(c * pow(u, i, p) * pow(v, j, p) for (i, j), c in col.items()) % p

    nodes = list(range(D + 1))
    rows = []
    for u in nodes:
        vals = []
        for v in nodes:
            a = upoly.trim([ev(c, u, v) for c in qc])
            b = upoly.trim([ev(c, u, v) for c in gc])
            vals.append(upoly.resultant(a, b, p))
        rows.append(upoly.interpolate(nodes, vals, p))  # polynomial in v at this u
    out: dict = {}
    width = max((len(r) for r in rows), default=0)
    for j in range(width):
        col = upoly.interpolate(nodes, [r[j] if j < len(r) else 0 for r in rows], p)
        for i, c in enumerate(col):
            if c:
                out[(i, j)] = c
    return out


def random_slice(equations: Sequence[MultiPoly], rng: random.Random,
                 attempts: int = 20) -> PlaneSlice | None:
    fld = equations[0].field
    p = fld.p
    n = equations[0].nvars
    k = len(equations) + 1
    if n < k:
        raise ValueError("the set has dimension below one; nothing to slice")
    for _ in range(attempts):
        base = tuple(rng.randrange(p) for _ in range(n))
        dirs = tuple(tuple(rng.randrange(p) for _ in range(n)) for _ in range(k))
        g = curve_from_slice(equations, base, dirs)
        if g is not None:
            return PlaneSlice(base, dirs, g)
    return None


# -- curve analysis ---------------------------------------------------------

@dataclass(frozen=True)
class CurveVerdict:
    status: str
    reason: str
    witness: dict = field(default_factory=dict)


def _spec_points(p: int, limit: int, rng: random.Random) -> list[int]:
    if p <= limit:
        return list(range(p))
    return rng.sample(range(p), limit)


def squarefree_specialization(g: dict, p: int, points: Sequence[int]) -> int | None:
    for c in points:
        if upoly.is_squarefree(specialize_u(g, c, p), p):
            return c
    return None


def repeated_factor(g: dict, p: int, points: Sequence[int]) -> dict | None:
    """Verified nonconstant h = gcd(g, dg/dv), or None."""
    gv = bderiv_v(g, p)
    if not gv:
        return None
    per: dict[int, list[int]] = {}
    for c in points:
        per[c] = upoly.gcd(specialize_u(g, c, p), specialize_u(gv, c, p), p)
    if not per:
        return None
    delta = min(len(h) - 1 for h in per.values())
    if delta < 1:
        return None
    good = [c for c, h in per.items() if len(h) - 1 == delta]
    need = bdeg_u(g) + 1
    if len(good) < need:
        return None
    good = good[:need]
    cols = []
    for j in range(delta + 1):
        cols.append(upoly.interpolate(good, [per[c][j] for c in good], p))
    h = from_vmajor(cols)
    if bmonic_v(h, p) is None:
        return None
    if bdivides(h, g, p) and bdivides(h, gv, p):
        return h
    return None


def _ext_gcd(a, b, p):
    """s, t with s*a + t*b = 1 for coprime a, b."""
    r0, r1 = a, b
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = upoly.divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, upoly.sub(s0, upoly.mul(q, s1, p), p)
        t0, t1 = t1, upoly.sub(t0, upoly.mul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    if len(r0) != 1:
        raise ValueError("factors are not coprime")
    return upoly.scale(s0, inv, p), upoly.scale(t0, inv, p)


def _coeff_u(rows: list[list[int]], k: int) -> list[int]:
    return rows[k] if k < len(rows) else []


def _mul_umajor(A, B, K, p):
    out = []
    for k in range(K):
        acc: list[int] = []
        for i in range(k + 1):
            if i < len(A) and k - i < len(B) and A[i] and B[k - i]:
                acc = upoly.add(acc, upoly.mul(A[i], B[k - i], p), p)
        out.append(acc)
    return out


def _hensel_two(G: list[list[int]], a0, b0, K: int, p: int):
    """Lift G = a0*b0 (mod u) to G = A*B (mod u^K), A and B monic in v."""
    s, t = _ext_gcd(a0, b0, p)
    A = [a0] + [[] for _ in range(K - 1)]
    B = [b0] + [[] for _ in range(K - 1)]
    for k in range(1, K):
        prod_k: list[int] = []
        for i in range(k + 1):
            if A[i] and B[k - i]:
                prod_k = upoly.add(prod_k, upoly.mul(A[i], B[k - i], p), p)
        err = upoly.sub(_coeff_u(G, k), prod_k, p)
        if not err:
            continue
        dA = upoly.mod(upoly.mul(err, t, p), a0, p)
        dB, rem = upoly.divmod_(upoly.sub(err, upoly.mul(dA, b0, p), p), a0, p)
        if rem:
            raise ArithmeticError("Hensel step failed")
        A[k], B[k] = dA, dB
    return A, B


def _hensel_multi(G, factors, K, p):
    if len(factors) == 1:
        return [G[:K] + [[] for _ in range(K - len(G))]]
    half = len(factors) // 2
    left, right = factors[:half], factors[half:]
    a0 = [1]
    for f in left:
        a0 = upoly.mul(a0, f, p)
    b0 = [1]
    for f in right:
        b0 = upoly.mul(b0, f, p)
    A, B = _hensel_two(G, a0, b0, K, p)
    return _hensel_multi(A, left, K, p) + _hensel_multi(B, right, K, p)


def hensel_factor(g: dict, p: int, c0: int, rng: random.Random) -> list[dict]:
    """Complete factorization over F_p of a squarefree g monic in v.

    ``c0`` must give a squarefree specialization g(c0, v).
    """
    gs = bshift_u(g, c0, p)
    K = bdeg_u(gs) + 1
    base = [f for f, _ in upoly.factor(specialize_u(gs, 0, p), p, rng)]
    if len(base) == 1:
        return [g]
    G = to_umajor(gs)
    lifted = _hensel_multi(G, base, K, p)
    lifted = [from_umajor(L) for L in lifted]
    remaining = list(range(len(lifted)))
    rest = gs
    found = []
    size = 1
    while 2 * size <= len(remaining):
        hit = None
        for S in itertools.combinations(remaining, size):
            cand: dict = {(0, 0): 1}
            for i in S:
                cand = {k: v for k, v in bmul(cand, lifted[i], p).items() if k[0] < K}
            q, r = bdivmod_monic_v(rest, cand, p)
            if not r:
                hit = (S, cand, q)
                break
        if hit is None:
            size += 1
            continue
        S, cand, q = hit
        found.append(cand)
        rest = q
        remaining = [i for i in remaining if i not in S]
    found.append(rest)
    return [bshift_u(f, -c0 % p, p) for f in found]


def analyze_curve(g: dict, p: int, rng: random.Random, max_specializations: int = 40) -> CurveVerdict:
    """Squarefree and irreducibility certificates for a curve monic in v."""
    pts = _spec_points(p, max_specializations, rng)
    c_sf = squarefree_specialization(g, p, pts)
    if c_sf is None:
        h = repeated_factor(g, p, pts if p <= max_specializations else list(range(min(p, 4 * btotal(g) + 8))))
        if h is not None:
            return CurveVerdict(NON_REDUCED, "repeated factor", {"gcd": _bjson(h)})
        return CurveVerdict(UNDECIDED, "no squarefree specialization found")
    for c in pts:
        if upoly.is_irreducible(specialize_u(g, c, p), p):
            return CurveVerdict(IRREDUCIBLE, "irreducible specialization",
                                {"specialization": c, "squarefree_at": c_sf})
    factors = hensel_factor(g, p, c_sf, rng)
    prod_: dict = {(0, 0): 1}
    for f in factors:
        prod_ = bmul(prod_, f, p)
    if prod_ != bclean(g, p):
        return CurveVerdict(UNDECIDED, "factorization did not verify")
    if len(factors) == 1:
        return CurveVerdict(IRREDUCIBLE, "Hensel factorization has one factor",
                            {"squarefree_at": c_sf})
    return CurveVerdict(REDUCIBLE, f"{len(factors)} factors over F_{p}",
                        {"factors": [_bjson(f) for f in factors]})


def _bjson(g: dict) -> list[list[int]]:
    """[[i, j, c], ...] sorted, for reports."""
    return [[i, j, c] for (i, j), c in sorted(g.items())]


def bfrom_json(rows) -> dict:
    return {(i, j): c for i, j, c in rows}


def verify_factorization(g: dict, factors: Sequence[dict], p: int) -> bool:
    if len(factors) < 2 or any(btotal(f) < 1 for f in factors):
        return False
    prod_: dict = {(0, 0): 1}
    for f in factors:
        prod_ = bmul(prod_, f, p)
    return prod_ == bclean(g, p)


def verify_repeated_factor(g: dict, h: dict, p: int) -> bool:
    if bdeg_v(h) < 1 or bmonic_v(h, p) is None:
        return False
    return bdivides(h, g, p) and bdivides(h, bderiv_v(g, p), p)
