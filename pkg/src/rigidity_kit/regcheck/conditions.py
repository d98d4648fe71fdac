"""Executable regularity conditions with three-valued verdicts.

Universal quantifiers over subspaces P and linear forms lambda are sampled:
PASS means no counterexample was found within the recorded budget. FAIL
always carries a witness, and :func:`reverify` re-runs the failing sub-check
from that witness alone.

Sequence lengths are read off the expansion: an expansion in n affine
variables is tested with n - 3 forms. On a codimension-(rho - 1) subspace of
the M-dimensional chart that is M - rho - 2 (smooth case); on a
codimension-(rho + 2) subspace it is M - rho - 5 forms q_2, q_3, ... (singular
case); on the chart of P^N it is N - 3.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from ..algebra.poly import MultiPoly, linear_form
from ..ideals import INDETERMINATE as GB_INDETERMINATE
from ..ideals import NOT_REGULAR, is_regular_sequence, linear_part_dimension
from ..mps import (
    AffineExpansion,
    gamma_through,
    hyperplane_matrix,
    localize,
    random_subspace,
    restrict_to_subspace,
    section_gamma,
)
from ..quadform import from_degree2, rank, rank_on_hyperplane
from . import curves

PASS = "PASS"
FAIL = "FAIL"
INDETERMINATE = "INDETERMINATE"
NOT_APPLICABLE = "NOT_APPLICABLE"

CONDITIONS = ("R1.1", "R1.2", "R1.3", "R1.4", "R2.1", "R2.2", "N1", "N2", "N3")

MAX_TANGENT_RESAMPLES = 20


@dataclass(frozen=True)
class CheckConfig:
    """Sampling budget. ``slice_seed`` seeds every random choice."""

    trials_P: int = 8
    trials_lambda: int = 8
    prefix_cap: int = 6
    slice_seed: int = 0

    def __post_init__(self):
        for name in ("trials_P", "trials_lambda", "prefix_cap"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if not 0 <= self.slice_seed < 2 ** 64:
            raise ValueError("slice_seed must be a 64-bit unsigned integer")

    def rng(self, *tags) -> random.Random:
        # one independent stream per (seed, tags): adding trials never
        # changes the draws of earlier ones
        return random.Random("/".join(map(str, (self.slice_seed,) + tags)))

    def budget(self) -> dict:
        return {"trials_P": self.trials_P, "trials_lambda": self.trials_lambda,
                "prefix_cap": self.prefix_cap, "slice_seed": self.slice_seed}


@dataclass(frozen=True)
class Verdict:
    status: str
    code: str = ""
    reason: str = ""
    witness: dict | None = None
    budget: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in (PASS, FAIL, INDETERMINATE, NOT_APPLICABLE):
            raise ValueError(f"unknown verdict {self.status!r}")
        if self.status == FAIL and not self.witness:
            raise ValueError("a FAIL verdict needs a witness")

    def to_json(self) -> dict:
        out = {"verdict": self.status, "code": self.code, "reason": self.reason,
               "budget": dict(self.budget)}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _num(v):
    return v if isinstance(v, int) else str(v)


def _vec(v) -> list:
    return [_num(x) for x in v]


def _mat(m) -> list:
    return [_vec(r) for r in m]


def combine(verdicts: Sequence[Verdict], budget: dict | None = None) -> Verdict:
    """FAIL if any trial failed, else INDETERMINATE if any was, else PASS."""
    budget = budget or {}
    for v in verdicts:
        if v.status == FAIL:
            return Verdict(FAIL, v.code, v.reason, v.witness, {**v.budget, **budget})
    for v in verdicts:
        if v.status == INDETERMINATE:
            return Verdict(INDETERMINATE, v.code, v.reason, v.witness, {**v.budget, **budget})
    if verdicts and all(v.status == NOT_APPLICABLE for v in verdicts):
        return Verdict(NOT_APPLICABLE, verdicts[0].code, verdicts[0].reason, None, budget)
    reason = verdicts[0].reason if verdicts else "no trials"
    code = verdicts[0].code if verdicts else ""
    return Verdict(PASS, code, reason, None, {**(verdicts[0].budget if verdicts else {}), **budget})


# -- linear algebra on expansions --------------------------------------------

def kernel_matrix(rows: Sequence[Sequence], fld) -> list[list]:
    """Columns spanning the common kernel of linear forms (an n x k matrix)."""
    n = len(rows[0])
    a = [[fld(v) for v in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = fld.inv(a[r][c])
        a[r] = [fld.mul(x, inv) for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [fld.sub(x, fld.mul(f, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    cols = []
    for fc in free:
        v = [fld(0)] * n
        v[fc] = fld(1)
        for i, pc in enumerate(pivots):
            v[pc] = fld.neg(a[i][fc])
        cols.append(v)
    return [[cols[j][i] for j in range(len(cols))] for i in range(n)]


def _images(mat, fld) -> list[MultiPoly]:
    return [linear_form(fld, row) for row in mat]


def _restrict(f: MultiPoly, images: Sequence[MultiPoly]) -> MultiPoly:
    m = images[0].nvars
    if f.is_zero():
        return MultiPoly.zero(f.field, m)
    return f.substitute_linear(images)


def _random_lambda(q1: MultiPoly, rng: random.Random) -> MultiPoly:
    """A random linear form independent of q1."""
    fld = q1.field
    c1 = q1.linear_coefficients()
    n = q1.nvars
    while True:
        lam = [fld(rng.randrange(fld.p)) for _ in range(n)]
        if _independent(c1, lam, fld):
            return linear_form(fld, lam)


def _independent(a, b, fld) -> bool:
    n = len(a)
    return any(fld.sub(fld.mul(a[i], b[j]), fld.mul(a[j], b[i])) != 0
               for i in range(n) for j in range(i + 1, n))


def _need_prime(e: AffineExpansion) -> None:
    if e.field.characteristic == 0:
        raise ValueError("regularity checks run over a prime field F_p")


def _need_smooth(e: AffineExpansion) -> MultiPoly:
    q1 = e.q(1)
    if q1.is_zero():
        raise ValueError("q1 = 0: the point is singular")
    return q1


# -- R1.1 / N1 ---------------------------------------------------------------

def _regular_on_hyperplane(e: AffineExpansion, lam: MultiPoly, k: int):
    images = _images(hyperplane_matrix(lam), e.field)
    seq = [_restrict(e.q(i), images) for i in range(1, k + 1)]
    return is_regular_sequence(seq)


def check_R11(e: AffineExpansion, rho: int, cfg: CheckConfig,
              lambdas: Sequence[MultiPoly] | None = None,
              rng: random.Random | None = None) -> Verdict:
    """q_1, ..., q_L restricted to {lambda = 0} is regular, L = nvars - 3."""
    _need_prime(e)
    q1 = _need_smooth(e)
    L = e.nvars - 3
    k = min(L, cfg.prefix_cap)
    budget = {**cfg.budget(), "sequence_length": max(L, 0), "certified_length": max(k, 0),
              "rho": rho}
    if L < 1:
        return Verdict(PASS, "vacuous", "sequence length below one", None, budget)
    if lambdas is None:
        rng = rng or cfg.rng("R1.1")
        lambdas = [_random_lambda(q1, rng) for _ in range(cfg.trials_lambda)]
    capped = False
    for t, lam in enumerate(lambdas):
        if not _independent(q1.linear_coefficients(), lam.linear_coefficients(), e.field):
            raise ValueError("lambda must not be proportional to q1")
        res = _regular_on_hyperplane(e, lam, k)
        if res.status == NOT_REGULAR:
            return Verdict(FAIL, "not-regular",
                           f"prefix {res.index} of the restricted sequence drops no dimension",
                           {"lambda": _vec(lam.linear_coefficients()), "prefix": res.index,
                            "trial": t, "dims": list(res.dims)}, budget)
        if res.status == GB_INDETERMINATE:
            capped = True
    budget["trials_run"] = len(lambdas)
    if capped:
        return Verdict(INDETERMINATE, "groebner-capped",
                       "Groebner degree cap reached before certification", None, budget)
    if k < L:
        return Verdict(INDETERMINATE, "capped",
                       f"certified {k} of {L} forms (prefix_cap)", None, budget)
    return Verdict(PASS, "regular", f"{len(lambdas)} linear forms certified", None, budget)


# -- slice helpers (R1.2 / R1.3) ---------------------------------------------

def _slice_analysis(eqs: Sequence[MultiPoly], rng: random.Random):
    """(slice, CurveVerdict) or (None, reason)."""
    try:
        sl = curves.random_slice(eqs, rng)
    except ValueError as exc:
        return None, str(exc)
    if sl is None:
        return None, "no slice gave a curve of the expected degree"
    return sl, curves.analyze_curve(sl.curve, eqs[0].field.p, rng)


def _confirmed_defect(eqs, rng) -> tuple:
    """Analyze one slice; a defect must show up again on an independent slice."""
    sl, cv = _slice_analysis(eqs, rng)
    if sl is None:
        return None, None, cv
    if cv.status in (curves.REDUCIBLE, curves.NON_REDUCED):
        sl2, cv2 = _slice_analysis(eqs, rng)
        if sl2 is None or cv2.status != cv.status:
            return sl, curves.CurveVerdict(curves.UNDECIDED, "defect not confirmed by a second slice"), None
        return sl, cv, sl2
    return sl, cv, None


# -- R1.2 / N2 ---------------------------------------------------------------

def check_R12(e: AffineExpansion, cfg: CheckConfig, rng: random.Random | None = None) -> Verdict:
    """Every component of {q1 = q2 = q3 = 0} spans the hyperplane {q1 = 0}.

    Reduced to: codimension 3, the set is irreducible and reduced (slice
    certificate), and no linear form outside <q1> lies in the ideal.
    """
    _need_prime(e)
    q1 = _need_smooth(e)
    n = e.nvars
    budget = cfg.budget()
    rng = rng or cfg.rng("R1.2")
    if n < 3:
        return Verdict(INDETERMINATE, "degenerate", f"only {n} variables", None, budget)
    res = is_regular_sequence([q1, e.q(2), e.q(3)])
    if res.status == NOT_REGULAR:
        return Verdict(FAIL, "codimension",
                       f"{{q1 = q2 = q3 = 0}} has codimension below 3 (prefix {res.index})",
                       {"prefix": res.index, "dims": list(res.dims)}, budget)
    if res.status == GB_INDETERMINATE:
        return Verdict(INDETERMINATE, "groebner-capped", "codimension not certified", None, budget)
    if n - 4 < 1:
        return Verdict(INDETERMINATE, "degenerate",
                       "the set is finite; component spans are not tested", None, budget)
    images = _images(hyperplane_matrix(q1), e.field)
    eqs = [_restrict(e.q(2), images), _restrict(e.q(3), images)]
    sl, cv, _ = _confirmed_defect(eqs, rng)
    if sl is None:
        return Verdict(INDETERMINATE, "no-slice", cv, None, budget)
    if cv.status == curves.NON_REDUCED:
        return Verdict(INDETERMINATE, "non-reduced", "the set is not reduced; spans undecided",
                       None, budget)
    if cv.status == curves.REDUCIBLE:
        return Verdict(INDETERMINATE, "reducible",
                       "reducible over F_p; components not separated", None, budget)
    if cv.status != curves.IRREDUCIBLE:
        return Verdict(INDETERMINATE, "reducible-undecided", cv.reason, None, budget)
    k = linear_part_dimension([q1, e.q(2), e.q(3)])
    if k != 1:
        return Verdict(FAIL, "span", f"{k} independent linear forms in the ideal",
                       {"linear_part_dimension": k}, budget)
    return Verdict(PASS, "irreducible-spanning",
                   "irreducible over F_p, reduced, spans {q1 = 0}", None, budget)


# -- R1.3 / N3 ---------------------------------------------------------------

def _r13_equations(e: AffineExpansion, f: MultiPoly, lam: MultiPoly):
    fld = e.field
    mat = kernel_matrix([e.q(1).linear_coefficients(), lam.linear_coefficients()], fld)
    images = _images(mat, fld)
    Q = _restrict(e.q(2), images)
    G = _restrict(f - e.q(1) - e.q(2), images)
    return [Q] if G.is_zero() else [Q, G]


def check_R13(e: AffineExpansion, full_equation: MultiPoly | None = None,
              cfg: CheckConfig | None = None, lambdas: Sequence[MultiPoly] | None = None,
              rng: random.Random | None = None) -> Verdict:
    """The set {f = q1 = q2 = lambda = 0} is irreducible and reduced.

    Irreducibility is over the base field F_p.
    """
    cfg = cfg or CheckConfig()
    _need_prime(e)
    q1 = _need_smooth(e)
    f = full_equation if full_equation is not None else e.equation()
    if f.nvars != e.nvars or f.field != e.field:
        raise ValueError("full equation must live in the expansion's ring")
    rng = rng or cfg.rng("R1.3")
    if lambdas is None:
        lambdas = [_random_lambda(q1, rng) for _ in range(cfg.trials_lambda)]
    budget = {**cfg.budget(), "trials_run": len(lambdas)}
    verdicts = []
    for t, lam in enumerate(lambdas):
        eqs = _r13_equations(e, f, lam)
        lam_w = _vec(lam.linear_coefficients())
        if eqs[0].is_zero():
            verdicts.append(Verdict(INDETERMINATE, "degenerate", "q2 vanishes on {q1 = lambda = 0}"))
            continue
        dim = eqs[0].nvars - len(eqs)
        if dim < 1:
            verdicts.append(Verdict(INDETERMINATE, "degenerate",
                                    f"the set has dimension {dim}; nothing to slice"))
            continue
        sl, cv, sl2 = _confirmed_defect(eqs, rng)
        if sl is None:
            verdicts.append(Verdict(INDETERMINATE, "no-slice", cv))
            continue
        if sl2 is not None:
            code = "non-reduced" if cv.status == curves.NON_REDUCED else "reducible"
            wit = {"lambda": lam_w, "trial": t, "slice": sl.to_json(),
                   "confirmed_slice": sl2.to_json(), **cv.witness}
            verdicts.append(Verdict(FAIL, code, cv.reason, wit))
            break
        if cv.status != curves.IRREDUCIBLE:
            verdicts.append(Verdict(INDETERMINATE, "undecided", cv.reason))
            continue
        verdicts.append(Verdict(PASS, "irreducible-reduced",
                                f"{len(lambdas)} slices irreducible over F_p and squarefree"))
    return combine(verdicts, budget)


# -- R1.4 --------------------------------------------------------------------

def r14_threshold(rho: int) -> int:
    return 8 + 2 * (rho - 2)


def r21_threshold(rho: int) -> int:
    return 2 * rho + 6


def _q2_form(e: AffineExpansion):
    q2 = e.q(2)
    return from_degree2(q2)


def check_R14(e: AffineExpansion, rho: int) -> Verdict:
    """rank of q2 on {q1 = 0} is at least 8 + 2(rho - 2); vacuous for rho = 1."""
    if rho < 1:
        raise ValueError("rho must be positive")
    q1 = _need_smooth(e)
    if rho == 1:
        return Verdict(PASS, "vacuous", "no rank condition for rho = 1", None, {"rho": 1})
    thr = r14_threshold(rho)
    r = rank_on_hyperplane(_q2_form(e), q1)
    budget = {"rho": rho, "threshold": thr}
    if r >= thr:
        return Verdict(PASS, "rank", f"rank {r} >= {thr}", None, {**budget, "rank": r})
    return Verdict(FAIL, "rank", f"rank {r} < {thr}", {"rank": r, "threshold": thr}, budget)


# -- R2.1 / R2.2 ---------------------------------------------------------------

def check_R21(e: AffineExpansion, rho: int) -> Verdict:
    if not e.q(1).is_zero():
        raise ValueError("q1 != 0: the point is smooth")
    thr = r21_threshold(rho)
    r = rank(_q2_form(e))
    budget = {"rho": rho, "threshold": thr}
    if r >= thr:
        return Verdict(PASS, "rank", f"rank {r} >= {thr}", None, {**budget, "rank": r})
    return Verdict(FAIL, "rank", f"rank {r} < {thr}", {"rank": r, "threshold": thr}, budget)


def _r22_one(e: AffineExpansion, cap: int):
    L = e.nvars - 3
    k = min(L, cap)
    if L < 1:
        return None, L, k
    return is_regular_sequence([e.q(i) for i in range(2, k + 2)]), L, k


def check_R22(e: AffineExpansion, rho: int, cfg: CheckConfig,
              subspaces: Sequence | None = None, restricted: bool = False,
              rng: random.Random | None = None) -> Verdict:
    """q2, q3, ... is regular on sampled codimension-(rho + 2) subspaces.

    With ``restricted`` the expansion is taken to live on P already.
    """
    _need_prime(e)
    if not e.q(1).is_zero():
        raise ValueError("q1 != 0: the point is smooth")
    budget = {**cfg.budget(), "rho": rho}
    codim = rho + 2
    if restricted:
        targets = [(None, e)]
    else:
        if e.nvars - codim < 1:
            return Verdict(INDETERMINATE, "degenerate",
                           f"no codimension-{codim} subspace of a {e.nvars}-space", None, budget)
        if subspaces is None:
            rng = rng or cfg.rng("R2.2")
            subspaces = [random_subspace(e.nvars, codim, e.field, rng) for _ in range(cfg.trials_P)]
        targets = [(P, restrict_to_subspace(e, P)) for P in subspaces]
    capped = gb_capped = False
    L = k = 0
    for t, (P, eP) in enumerate(targets):
        res, L, k = _r22_one(eP, cfg.prefix_cap)
        if res is None:
            continue
        if res.status == NOT_REGULAR:
            wit = {"prefix": res.index, "trial": t, "dims": list(res.dims)}
            if P is not None:
                wit["subspace"] = _mat(P)
            return Verdict(FAIL, "not-regular",
                           f"q2.. fails at prefix {res.index}", wit,
                           {**budget, "sequence_length": L, "certified_length": k})
        gb_capped |= res.status == GB_INDETERMINATE
        capped |= k < L
    budget.update(sequence_length=max(L, 0), certified_length=max(k, 0), trials_run=len(targets))
    if L < 1:
        return Verdict(PASS, "vacuous", "sequence length below one", None, budget)
    if gb_capped:
        return Verdict(INDETERMINATE, "groebner-capped",
                       "Groebner degree cap reached before certification", None, budget)
    if capped:
        return Verdict(INDETERMINATE, "capped", f"certified {k} of {L} forms (prefix_cap)",
                       None, budget)
    return Verdict(PASS, "regular", f"{len(targets)} subspaces certified", None, budget)


def check_R21_R22(e: AffineExpansion, rho: int, cfg: CheckConfig, subspaces=None,
                  restricted: bool = False, rng: random.Random | None = None) -> tuple[Verdict, Verdict]:
    return check_R21(e, rho), check_R22(e, rho, cfg, subspaces, restricted, rng)


# -- N1 / N2 / N3 --------------------------------------------------------------

def degree_window(degX: int, N: int) -> tuple[bool, int, str]:
    lo = N - 2
    ok = lo <= degX and 2 * degX <= 3 * (N - 3)
    return ok, lo, f"{3 * (N - 3)}/2"


def check_N_conditions(e: AffineExpansion, degX: int, N: int, cfg: CheckConfig,
                       rng_tag: str = "N") -> tuple[Verdict, Verdict, Verdict]:
    ok, lo, hi = degree_window(degX, N)
    if not ok:
        v = Verdict(FAIL, "degree-window", f"deg X = {degX} outside [{lo}, {hi}]",
                    {"degX": degX, "N": N, "lower": lo, "upper": hi})
        return v, v, v
    if e.nvars != N:
        raise ValueError(f"expansion must live on the {N}-dimensional chart")
    n1 = check_R11(e, 0, cfg, rng=cfg.rng(rng_tag, "N1"))
    n2 = check_R12(e, cfg, rng=cfg.rng(rng_tag, "N2"))
    n3 = check_R13(e, None, cfg, rng=cfg.rng(rng_tag, "N3"))
    drop = lambda v: Verdict(v.status, v.code, v.reason, v.witness,
                             {k: x for k, x in v.budget.items() if k != "rho"})
    return drop(n1), drop(n2), drop(n3)


# -- witnesses ---------------------------------------------------------------

def _lam_from(e: AffineExpansion, coeffs) -> MultiPoly:
    return linear_form(e.field, [e.field(int(c)) for c in coeffs])


def reverify(e: AffineExpansion, condition: str, verdict: Verdict, rho: int | None = None,
             full_equation: MultiPoly | None = None) -> bool:
    """Re-run the failing sub-check on the stored witness alone.

    ``e`` is the expansion the condition was evaluated on; a witness that
    records a subspace is applied to it first.
    """
    if verdict.status != FAIL:
        raise ValueError("only FAIL verdicts carry witnesses")
    w = verdict.witness
    if verdict.code == "degree-window":
        return not degree_window(w["degX"], w["N"])[0]
    if "subspace" in w and condition in ("R1.1", "R1.2", "R1.3"):
        e = restrict_to_subspace(e, [[e.field(int(v)) for v in r] for r in w["subspace"]])
        full_equation = e.equation()
    if condition in ("R1.1", "N1"):
        lam = _lam_from(e, w["lambda"])
        return _regular_on_hyperplane(e, lam, w["prefix"]).index == w["prefix"]
    if condition in ("R1.2", "N2"):
        if verdict.code == "codimension":
            res = is_regular_sequence([e.q(1), e.q(2), e.q(3)][: w["prefix"]])
            return res.status == NOT_REGULAR and res.index == w["prefix"]
        return linear_part_dimension([e.q(1), e.q(2), e.q(3)]) == w["linear_part_dimension"] != 1
    if condition in ("R1.3", "N3"):
        f = full_equation if full_equation is not None else e.equation()
        eqs = _r13_equations(e, f, _lam_from(e, w["lambda"]))
        p = e.field.p
        ok = True
        for key in ("slice", "confirmed_slice"):
            s = w[key]
            g = curves.curve_from_slice(eqs, tuple(s["base"]), tuple(tuple(d) for d in s["directions"]))
            if g is None:
                return False
            if key == "slice":
                if verdict.code == "non-reduced":
                    ok &= curves.verify_repeated_factor(g, curves.bfrom_json(w["gcd"]), p)
                else:
                    ok &= curves.verify_factorization(g, [curves.bfrom_json(f) for f in w["factors"]], p)
            else:
                cv = curves.analyze_curve(g, p, random.Random(0))
                ok &= cv.status == (curves.NON_REDUCED if verdict.code == "non-reduced"
                                    else curves.REDUCIBLE)
        return ok
    if condition == "R1.4":
        return rank_on_hyperplane(_q2_form(e), e.q(1)) == w["rank"] < w["threshold"]
    if condition == "R2.1":
        return rank(_q2_form(e)) == w["rank"] < w["threshold"]
    if condition == "R2.2":
        if "subspace" in w:
            e = restrict_to_subspace(e, [[e.field(int(v)) for v in r] for r in w["subspace"]])
        res = is_regular_sequence([e.q(i) for i in range(2, w["prefix"] + 2)])
        return res.status == NOT_REGULAR and res.index == w["prefix"]
    raise ValueError(f"unknown condition {condition!r}")


# -- whole point -------------------------------------------------------------

def _smooth_subspace(e: AffineExpansion, codim: int, rng: random.Random, notes: list):
    if codim == 0:
        return None, e
    for attempt in range(MAX_TANGENT_RESAMPLES):
        P = random_subspace(e.nvars, codim, e.field, rng)
        eP = restrict_to_subspace(e, P)
        if not eP.q(1).is_zero():
            return P, eP
        notes.append("sampled subspace inside the tangent hyperplane; resampled")
    raise RuntimeError("could not sample a subspace transverse to the tangent hyperplane")


def check_point(m, o: Sequence, rho: int, cfg: CheckConfig):
    """Sample gamma through o = (x_0, ..., x_M, xi), localize, run the battery."""
    from .report import RegularityReport

    fld = m.field
    if len(o) != m.nvars + 1:
        raise ValueError(f"point needs {m.nvars} coordinates plus xi")
    x, xi = [fld(v) for v in o[:-1]], fld(o[-1])
    if not any(x):
        raise ValueError("x must be a nonzero vector")
    if m.evaluate(x, xi) != 0:
        raise ValueError("point is not on the variety")
    tag = tuple(int(v) for v in o)
    gamma = gamma_through(m, x, xi, cfg.rng("gamma", tag))
    h = section_gamma(m, gamma)
    e = localize(h, x)
    notes: list[str] = []
    if m.params.d == 5:
        notes.append("d=5: the rho value is printed on two table rows; both agree")
    verdicts: dict[str, Verdict] = {}
    na = lambda why: Verdict(NOT_APPLICABLE, "", why)
    subspaces = []
    if not e.is_singular():
        per = {"R1.1": [], "R1.2": [], "R1.3": []}
        rng = cfg.rng("P", tag)
        for t in range(cfg.trials_P):
            P, eP = _smooth_subspace(e, rho - 1, rng, notes)
            if P is not None:
                subspaces.append(_mat(P))
            for name, fn in (("R1.1", lambda: check_R11(eP, rho, cfg, rng=cfg.rng("R1.1", tag, t))),
                             ("R1.2", lambda: check_R12(eP, cfg, rng=cfg.rng("R1.2", tag, t))),
                             ("R1.3", lambda: check_R13(eP, None, cfg, rng=cfg.rng("R1.3", tag, t)))):
                v = fn()
                if v.status == FAIL and P is not None:
                    v = Verdict(v.status, v.code, v.reason, {**v.witness, "subspace": _mat(P)}, v.budget)
                per[name].append(v)
            if rho == 1:
                break  # P is the whole chart: every trial would repeat the first
        for name, vs in per.items():
            verdicts[name] = combine(vs, {"subspaces": len(vs)})
        verdicts["R1.4"] = check_R14(e, rho)
        for name in ("R2.1", "R2.2"):
            verdicts[name] = na("smooth point")
    else:
        for name in ("R1.1", "R1.2", "R1.3", "R1.4"):
            verdicts[name] = na("singular point")
        verdicts["R2.1"] = check_R21(e, rho)
        rng = cfg.rng("R2.2", tag)
        if e.nvars - (rho + 2) >= 1:
            Ps = [random_subspace(e.nvars, rho + 2, fld, rng) for _ in range(cfg.trials_P)]
            subspaces = [_mat(P) for P in Ps]
        else:
            Ps = None
        verdicts["R2.2"] = check_R22(e, rho, cfg, subspaces=Ps, rng=rng)
    for name in ("N1", "N2", "N3"):
        verdicts[name] = na("N-conditions apply to the reduction targets, not to points of V")
    samples = {"subspaces": len(subspaces), "trials_lambda": cfg.trials_lambda,
               "prefix_cap": cfg.prefix_cap}
    return RegularityReport(tuple(int(v) for v in o), gamma, rho, verdicts, samples,
                            subspaces, notes, e)
