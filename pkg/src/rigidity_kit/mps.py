"""Multiple projective space models V = {xi^d + A_1 xi^(d-1) + ... + A_d = 0}.

The weighted ambient space is never built. All geometry happens on the
sections V_gamma = {F(x, gamma(x)) = 0}, ordinary hypersurfaces of degree
d*l in P^M.
"""
from __future__ import annotations

import itertools
import random
import warnings
from dataclasses import dataclass, field
from typing import Sequence

from .algebra.fields import Field, PrimeField, GF, binom
from .algebra.poly import MultiPoly, linear_form, monomials_of_degree
from .algebra.textio import PolyFormatError, format_polynomial, parse_polynomials
from .algebra import upoly
from .ideals import GroebnerEngine, dimension_from_leading
from .quadform import from_degree2, matrix_rank, rank
from .thresholds.tables import check_admissible

MAX_RANDOM_TERMS = 500_000


@dataclass(frozen=True)
class MPSParams:
    d: int
    l: int
    toy_mode: bool = False
    M: int = field(init=False)

    def __post_init__(self):
        if self.d < 2 or self.l < 1:
            raise ValueError("need d >= 2 and l >= 1")
        if not self.toy_mode:
            check_admissible(self.d, self.l)
        object.__setattr__(self, "M", (self.d - 1) * self.l)


@dataclass(frozen=True)
class MPSModel:
    """``A[i-1]`` is the coefficient form A_i of degree i*l in M+1 variables."""

    params: MPSParams
    field: Field
    A: tuple[MultiPoly, ...]

    def __post_init__(self):
        d, l, M = self.params.d, self.params.l, self.params.M
        if len(self.A) != d:
            raise ValueError(f"expected {d} coefficient forms, got {len(self.A)}")
        for i, a in enumerate(self.A, 1):
            if a.field != self.field or a.nvars != M + 1:
                raise ValueError(f"A_{i} must be a form in {M + 1} variables over {self.field}")
            if not a.is_zero() and (a.degree() != i * l or not a.is_homogeneous()):
                raise ValueError(f"A_{i} must be homogeneous of degree {i * l}")

    @property
    def nvars(self) -> int:
        return self.params.M + 1

    def evaluate(self, x: Sequence, xi):
        f = self.field
        acc = f(1)
        for a in self.A:
            acc = f.add(f.mul(acc, f(xi)), a.evaluate(x))
        return acc

    def equation(self) -> MultiPoly:
        """F(x, xi) in M+2 variables, xi last."""
        n = self.nvars
        xi = MultiPoly.var(self.field, n + 1, n)
        acc = MultiPoly.constant(self.field, n + 1, 1)
        for a in self.A:
            acc = acc * xi + a.add_variables(1)
        return acc


def _random_form(fld: Field, nvars: int, degree: int, rng: random.Random) -> MultiPoly:
    p = fld.p
    terms = {e: rng.randrange(p) for e in monomials_of_degree(nvars, degree)}
    return MultiPoly(fld, nvars, terms)


def random_model(params: MPSParams, p: int, seed: int) -> MPSModel:
    """Uniform coefficients for every monomial of every A_i, seeded."""
    fld = GF(p)
    if p <= params.d * params.l:
        warnings.warn(f"p = {p} does not exceed d*l = {params.d * params.l}; "
                      "results may show characteristic artifacts", stacklevel=2)
    n = params.M + 1
    total = sum(binom(i * params.l + n - 1, n - 1) for i in range(1, params.d + 1))
    if total > MAX_RANDOM_TERMS:
        raise ValueError(f"model would have {total} terms; beyond desk scale")
    rng = random.Random(seed)
    forms = tuple(_random_form(fld, n, i * params.l, rng) for i in range(1, params.d + 1))
    return MPSModel(params, fld, forms)


def random_form(fld: Field, nvars: int, degree: int, rng: random.Random) -> MultiPoly:
    return _random_form(fld, nvars, degree, rng)


def section_gamma(m: MPSModel, gamma: MultiPoly) -> MultiPoly:
    """F(x, gamma(x)), the equation of V_gamma in P^M (Horner in gamma)."""
    if gamma.field != m.field or gamma.nvars != m.nvars:
        raise ValueError("gamma must be a form in the model's variables")
    if not gamma.is_zero() and (gamma.degree() != m.params.l or not gamma.is_homogeneous()):
        raise ValueError(f"gamma must be homogeneous of degree {m.params.l}")
    acc = MultiPoly.constant(m.field, m.nvars, 1)
    for a in m.A:
        acc = acc * gamma + a
    return acc


def gamma_through(m: MPSModel, x: Sequence, xi, rng: random.Random) -> MultiPoly:
    """A random gamma of degree l with gamma(x) = xi."""
    fld = m.field
    g0 = _random_form(fld, m.nvars, m.params.l, rng)
    k = next(i for i, v in enumerate(x) if fld(v) != 0)
    e = [0] * m.nvars
    e[k] = m.params.l
    corr = fld.div(fld.sub(fld(xi), g0.evaluate(x)), fld(x[k]) ** m.params.l)
    return g0 + MultiPoly.monomial(fld, m.nvars, e, corr)


# -- model files ------------------------------------------------------------

def format_model(m: MPSModel) -> str:
    toy = " toy=1" if m.params.toy_mode else ""
    head = f"# mps d={m.params.d} l={m.params.l} p={m.field.p}{toy}\n"
    return head + "".join(format_polynomial(a) for a in m.A)


def parse_model(text: str, toy: bool | None = None) -> MPSModel:
    first = next((ln for ln in text.splitlines() if ln.strip()), "")
    toks = first.lstrip("#").split()
    if not toks or toks[0] != "mps":
        raise PolyFormatError("model file must start with '# mps d=<d> l=<l> p=<p>'")
    kv = dict(t.split("=", 1) for t in toks[1:] if "=" in t)
    try:
        d, l, p = int(kv["d"]), int(kv["l"]), int(kv["p"])
    except (KeyError, ValueError) as exc:
        raise PolyFormatError(f"bad model header {first!r}") from exc
    toy_mode = bool(int(kv.get("toy", "0"))) if toy is None else toy
    params = MPSParams(d, l, toy_mode)
    forms = parse_polynomials(text)
    if any(f.field != GF(p) for f in forms):
        raise PolyFormatError("coefficient blocks must be over F_p with the header's p")
    return MPSModel(params, GF(p), tuple(forms))


# -- local expansions -------------------------------------------------------

@dataclass(frozen=True)
class AffineExpansion:
    """Homogeneous components of a local equation at an origin.

    ``components[i]`` is q_i (``components[0]`` is zero). ``origin`` is the
    expansion point in the original projective coordinates, normalized so
    that coordinate ``chart`` equals 1. ``basis`` maps the current affine
    coordinates to the chart coordinates (one column per current variable).
    """

    components: tuple[MultiPoly, ...]
    origin: tuple = ()
    chart: int = 0
    basis: tuple[tuple, ...] | None = None

    def __post_init__(self):
        if not self.components:
            raise ValueError("expansion needs at least the constant component")
        if not self.components[0].is_zero():
            raise ValueError("the origin is not on the hypersurface (q0 != 0)")

    @property
    def field(self) -> Field:
        return self.components[0].field

    @property
    def nvars(self) -> int:
        return self.components[0].nvars

    def q(self, i: int) -> MultiPoly:
        if 0 <= i < len(self.components):
            return self.components[i]
        return MultiPoly.zero(self.field, self.nvars)

    @property
    def top_degree(self) -> int:
        return len(self.components) - 1

    def equation(self) -> MultiPoly:
        acc = MultiPoly.zero(self.field, self.nvars)
        for c in self.components:
            acc = acc + c
        return acc

    def is_singular(self) -> bool:
        return self.q(1).is_zero()

    def to_chart(self, z: Sequence) -> list:
        f = self.field
        if self.basis is None:
            return [f(v) for v in z]
        return [f(sum(row[j] * z[j] for j in range(len(z)))) for row in self.basis]

    def to_projective(self, z: Sequence) -> list:
        """Map current affine coordinates back to the original projective space."""
        if not self.origin:
            raise ValueError("expansion carries no origin")
        f = self.field
        w = self.to_chart(z)
        out = []
        it = iter(w)
        for i, o in enumerate(self.origin):
            out.append(f(1) if i == self.chart else f.add(f(o), next(it)))
        return out


def expansion_from_polynomial(f: MultiPoly, origin: tuple = (), chart: int = 0) -> AffineExpansion:
    """Split an affine polynomial vanishing at 0 into homogeneous components."""
    return AffineExpansion(tuple(f.homogeneous_components()), tuple(origin), chart)


def normalize_point(point: Sequence, fld: Field) -> tuple:
    """Scale a projective point so its first nonzero coordinate is 1."""
    vals = [fld(v) for v in point]
    k = next((i for i, v in enumerate(vals) if v != 0), None)
    if k is None:
        raise ValueError("the zero vector is not a projective point")
    inv = fld.inv(vals[k])
    return tuple(fld.mul(v, inv) for v in vals)


def localize(h: MultiPoly, o: Sequence) -> AffineExpansion:
    """Expand a homogeneous hypersurface at a point on it.

    The chart is x_k = 1 for the first nonzero coordinate k of o; the other
    coordinates are shifted so that o becomes the origin.
    """
    if not h.is_homogeneous():
        raise ValueError("hypersurface equation must be homogeneous")
    if len(o) != h.nvars:
        raise ValueError("point has the wrong number of coordinates")
    fld = h.field
    pt = normalize_point(o, fld)
    if h.evaluate(pt) != 0:
        raise ValueError("point is not on the hypersurface")
    k = next(i for i, v in enumerate(pt) if v != 0)
    shifts = [v for i, v in enumerate(pt) if i != k]
    local = h.dehomogenize(k).translate(shifts)
    return AffineExpansion(tuple(local.homogeneous_components()), pt, k)


def _images_from_matrix(mat: Sequence[Sequence], fld: Field) -> list[MultiPoly]:
    return [linear_form(fld, row) for row in mat]


def _matrix_from_images(images: Sequence[MultiPoly]) -> list[list]:
    rows = []
    for g in images:
        if g.degree() > 1 or (not g.is_zero() and g.min_degree() < 1):
            raise ValueError("subspace images must be linear forms through the origin")
        rows.append(g.linear_coefficients() if not g.is_zero() else [g.field(0)] * g.nvars)
    return rows


def restrict_to_subspace(e: AffineExpansion, P) -> AffineExpansion:
    """Restrict every q_i to the subspace parametrized by P.

    P is either an n x m matrix (rows are the images of the current
    variables) or a list of n linear forms in m new variables.
    """
    fld = e.field
    if P and isinstance(P[0], MultiPoly):
        mat = _matrix_from_images(P)
    else:
        mat = [[fld(v) for v in row] for row in P]
    if len(mat) != e.nvars:
        raise ValueError(f"parametrization must have {e.nvars} rows")
    m = len(mat[0]) if mat else 0
    if m == 0:
        raise ValueError("empty parametrization")
    if matrix_rank(mat, fld) != m:
        raise ValueError("parametrization columns are dependent")
    images = _images_from_matrix(mat, fld)
    comps = tuple(q.substitute_linear(images) if not q.is_zero() else MultiPoly.zero(fld, m)
                  for q in e.components)
    if e.basis is None:
        basis = tuple(tuple(r) for r in mat)
    else:
        basis = tuple(tuple(fld(sum(row[t] * mat[t][j] for t in range(len(mat))))
                            for j in range(m)) for row in e.basis)
    return AffineExpansion(comps, e.origin, e.chart, basis)


def hyperplane_matrix(lam: MultiPoly) -> list[list]:
    from .quadform import hyperplane_basis
    return hyperplane_basis(lam)


def random_subspace(n: int, codim: int, fld: Field, rng: random.Random) -> list[list]:
    """A random n x (n - codim) matrix of full column rank."""
    if not 0 <= codim < n:
        raise ValueError("need 0 <= codim < n")
    m = n - codim
    if codim == 0:
        return [[fld(int(i == j)) for j in range(m)] for i in range(n)]
    while True:
        mat = [[fld(rng.randrange(fld.p)) for _ in range(m)] for _ in range(n)]
        if matrix_rank(mat, fld) == m:
            return mat


# -- points -----------------------------------------------------------------

def line_restriction(h: MultiPoly, a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Coefficients of t -> h(a + t b) by evaluation and interpolation."""
    p = h.field.p
    D = max(h.degree(), 0)
    if p <= D:
        raise ValueError("field too small to interpolate the line restriction")
    ts = list(range(D + 1))
    ys = [h.evaluate([(ai + t * bi) % p for ai, bi in zip(a, b)]) for t in ts]
    return upoly.interpolate(ts, ys, p)


def sample_points(h: MultiPoly, count: int, rng: random.Random, max_lines: int = 1000) -> list[tuple]:
    """Distinct F_p-points of {h = 0} found on random lines, normalized."""
    p = h.field.p
    n = h.nvars
    seen: dict[tuple, None] = {}
    for _ in range(max_lines):
        if len(seen) >= count:
            break
        a = [rng.randrange(p) for _ in range(n)]
        b = [rng.randrange(p) for _ in range(n)]
        if not any(a) or matrix_rank([a, b], h.field) < 2:
            continue
        u = line_restriction(h, a, b)
        if not u:
            continue  # the line lies on the hypersurface
        for t in upoly.roots(u, p, rng):
            pt = normalize_point([(ai + t * bi) % p for ai, bi in zip(a, b)], h.field)
            seen.setdefault(pt)
            if len(seen) >= count:
                break
    return list(seen)


def is_singular_point(h: MultiPoly, pt: Sequence) -> bool:
    return h.evaluate(pt) == 0 and all(g.evaluate(pt) == 0 for g in h.gradient())


@dataclass(frozen=True)
class SingularPoint:
    point: tuple
    rank: int


def projective_point_count(n: int, p: int) -> int:
    return (p ** n - 1) // (p - 1)


def _all_points(n: int, p: int):
    for k in range(n):
        for tail in itertools.product(range(p), repeat=n - k - 1):
            yield (0,) * k + (1,) + tail


def smoothness_certificate(h: MultiPoly, degree_cap: int | None = None) -> bool:
    """True if the gradient ideal is certified to have no projective zeros."""
    grads = [g for g in h.gradient() if not g.is_zero()]
    if not grads:
        return False
    # a cheap cap: decisive for low degree, inconclusive (never wrong) beyond
    cap = degree_cap if degree_cap is not None else h.degree() + 1
    eng = GroebnerEngine(h.nvars, h.field.p, cap)
    for g in grads:
        eng.add(dict(g.terms))
    return dimension_from_leading(eng.leading_exponents(), h.nvars) == -1


def find_singular_points(h: MultiPoly, budget: int, rng: random.Random,
                         certify: bool = True) -> list[SingularPoint]:
    """Singular F_p-points of {h = 0} within a budget.

    Exhaustive when the projective space has at most ``budget`` points,
    otherwise ``budget`` random lines. A Groebner certificate of smoothness
    (capped) short-circuits the search.
    """
    fld = h.field
    p = fld.p
    n = h.nvars
    if certify and smoothness_certificate(h):
        return []
    found: dict[tuple, None] = {}
    grads = h.gradient()
    if projective_point_count(n, p) <= budget:
        for pt in _all_points(n, p):
            if all(g.evaluate(pt) == 0 for g in grads) and h.evaluate(pt) == 0:
                found.setdefault(pt)
    else:
        for _ in range(budget):
            a = [rng.randrange(p) for _ in range(n)]
            b = [rng.randrange(p) for _ in range(n)]
            if matrix_rank([a, b], fld) < 2:
                continue
            u = line_restriction(h, a, b)
            cand = range(p) if not u else upoly.roots(u, p, rng)
            for t in cand:
                pt = normalize_point([(ai + t * bi) % p for ai, bi in zip(a, b)], fld)
                if is_singular_point(h, pt):
                    found.setdefault(pt)
    out = []
    for pt in sorted(found):
        e = localize(h, pt)
        out.append(SingularPoint(pt, rank(from_degree2(e.q(2)))))
    return out


def find_singular_sample(m: MPSModel, gamma: MultiPoly, budget: int, seed: int = 0) -> list[SingularPoint]:
    return find_singular_points(section_gamma(m, gamma), budget, random.Random(seed))
