"""Exact audits of the numeric claims: codimension bounds, Hilbert functions
of a quadric, and the multiplicity/degree inequality chains.

Audits report; they never assert. A failing comparison is returned with
``holds=False`` and both sides intact.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Any

from ..algebra.fields import binom
from .tables import EPSILON_COEFFS, epsilon_from, rho_of


@dataclass(frozen=True)
class AuditResult:
    claim_id: str
    computed: Fraction | int
    threshold: Fraction | int
    holds: bool
    context: dict = field(default_factory=dict)
    relation: str = ">="
    note: str | None = None
    details: dict | None = None

    def sort_key(self) -> tuple:
        return (self.context.get("d", 0), self.context.get("l", 0), self.claim_id)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "claim_id": self.claim_id,
            "computed": fmt(self.computed),
            "threshold": fmt(self.threshold),
            "relation": self.relation,
            "holds": self.holds,
            "context": {k: _jsonable(v) for k, v in self.context.items()},
        }
        if self.note:
            out["note"] = self.note
        if self.details:
            out["details"] = _jsonable(self.details)
        return out


def fmt(x) -> str:
    """Exact value as 'a/b' (or 'a' for integers)."""
    return str(Fraction(x))


def _jsonable(v):
    if isinstance(v, Fraction):
        return fmt(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


# -- basic quantities -------------------------------------------------------

def alpha(k: int) -> Fraction:
    """alpha_0 = 1, alpha_{k+1} = alpha_k/2 + 1; equals 2 - 2^-k."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    a = Fraction(1)
    for _ in range(k):
        a = a / 2 + 1
    closed = 2 - Fraction(1, 2 ** k)
    if a != closed:
        raise ArithmeticError(f"alpha recursion {a} disagrees with closed form {closed}")
    return a


# (b, c) in (M^2 - b*M + c)/2 as functions of rho, keyed by condition id
_PROP13 = {
    "1.1": lambda r: (4 * r + 5, 3 * r * r + 3 * r),
    "1.2": lambda r: (4 * r + 11, 3 * r * r - 15 * r + 32),
    "1.3": lambda r: (4 * r + 13, 3 * r * r + 11 * r + 42),
    "1.4": lambda r: (4 * r + 9, 4 * r * r + 14 * r + 16),
    "2.1": lambda r: (6 * r + 7, 4 * r * r + 14 * r + 12),
    "2.2": lambda r: (4 * r + 1, 3 * r * r - r),
}
PROP13_IDS = tuple(_PROP13)


def prop13_coefficients(which: str, rho: int) -> tuple[int, int]:
    which = _condition_id(which)
    if rho not in (1, 2, 3, 4):
        raise ValueError("rho must be in {1, 2, 3, 4}")
    return _PROP13[which](rho)


def _condition_id(which) -> str:
    if isinstance(which, float):
        which = f"{which:.1f}"
    which = str(which)
    if which not in _PROP13:
        raise ValueError(f"unknown condition id {which!r}")
    return which


def prop13_bound(which, M: int, rho: int) -> Fraction:
    b, c = prop13_coefficients(which, rho)
    return Fraction(M * M - b * M + c, 2)


def _ctx(d: int, l: int, rho: int | None = None, **extra) -> dict:
    out = {"d": d, "l": l, "M": (d - 1) * l}
    if rho is not None:
        out["rho"] = rho
    out.update(extra)
    return out


def epsilon_min_audit(d: int, l: int) -> AuditResult:
    rho = rho_of(d, l)
    M = (d - 1) * l
    values = {w: prop13_bound(w, M, rho) for w in PROP13_IDS}
    low = min(values.values())
    argmin = [w for w in PROP13_IDS if values[w] == low]
    eps = epsilon_from(M, rho)
    note = None
    if low != eps:
        note = f"minimum {fmt(low)} attained by {','.join(argmin)} differs from epsilon {fmt(eps)}"
    return AuditResult("epsilon-min", low, eps, low == eps, _ctx(d, l, rho),
                       relation="==", note=note,
                       details={"bounds": values, "argmin": argmin})


def rank_stratum_codim(N: int, r: int) -> int:
    if not 1 <= r <= N:
        raise ValueError("need 1 <= r <= N")
    return binom(N - r + 1, 2)


def hilbert_quadric(N: int, m: int) -> int:
    """Hilbert function of a quadric in N variables, closed form and oracle."""
    if N < 4 or m < 1:
        raise ValueError("need N >= 4 and m >= 1")
    closed = Fraction(prod(m + j for j in range(1, N - 2)), factorial(N - 2)) * (2 * m + N - 2)
    oracle = binom(m + N - 1, N - 1) - binom(m - 2 + N - 1, N - 1)
    if closed != oracle:
        raise ArithmeticError(f"h_Q({N},{m}): closed form {closed} != oracle {oracle}")
    return oracle


def hilbert_convexity_audit(N: int, m: int, s: int, t: int) -> AuditResult:
    if not (0 < s < t and 2 * t <= m):
        raise ValueError("need 0 < s < t <= m/2")
    lhs = hilbert_quadric(N, t) + hilbert_quadric(N, m - t)
    rhs = hilbert_quadric(N, s) + hilbert_quadric(N, m - s)
    return AuditResult("hilbert-convexity", lhs, rhs, lhs < rhs,
                       {"N": N, "m": m, "s": s, "t": t}, relation="<")


def reducible_divisor_codim_audit(N: int, m: int) -> AuditResult:
    if m < 4:
        raise ValueError("need m >= 4")
    codim = hilbert_quadric(N, m) - hilbert_quadric(N, m - 1) - hilbert_quadric(N, 1)
    expanded = Fraction(prod(m + j for j in range(1, N - 3)), factorial(N - 3)) * (2 * m + N - 3) - N
    bound = 2 * binom(m + N - 4, N - 3)
    agree = expanded == codim
    note = None if agree else f"expanded form gives {fmt(expanded)}"
    return AuditResult("reducible-divisor-codim", codim, bound, codim >= bound and agree,
                       {"N": N, "m": m}, note=note,
                       details={"expanded": expanded, "forms_agree": agree})


def pair_codim_audit(N: int) -> AuditResult:
    if N < 5:
        raise ValueError("need N >= 5")
    value = binom(N + 2, 3) - binom(N + 1, 2) - 2 * N + 2
    bound = binom(N - 3, 2)
    return AuditResult("pair-codim", value, bound, value >= bound, {"N": N})


def prop15_codim(N: int) -> int:
    if N < 2:
        raise ValueError("need N >= 2")
    return binom(N + 1, 2)


def _range_product(lo: int, hi: int) -> int:
    """lo * (lo+1) * ... * hi by a balanced product tree."""
    if hi - lo < 16:
        return prod(range(lo, hi + 1))
    mid = (lo + hi) // 2
    return _range_product(lo, mid) * _range_product(mid + 1, hi)


def telescoping_product(first: int, last: int) -> Fraction:
    """prod_{k=first}^{last} (k+1)/k, checked against (last+1)/first."""
    if not 2 <= first <= last:
        raise ValueError("need 2 <= first <= last")
    # multiply the factors out as two integer products before cancelling
    p = Fraction(_range_product(first + 1, last + 1), _range_product(first, last))
    if p != Fraction(last + 1, first):
        raise ArithmeticError("telescoping identity failed")
    return p


# -- inequality chains ------------------------------------------------------

def exclusion_main_value(d: int, l: int, rho: int) -> Fraction:
    M = (d - 1) * l
    return Fraction(3 * (M - rho - 1), 4 * d * l) * alpha(rho)


def exclusion_main_audit(d: int, l: int, rho: int | None = None) -> AuditResult:
    """mult/deg bound 3(M-rho-1)/(4dl) * alpha_rho against 1.

    ``rho`` may be forced for toy parameters; otherwise it comes from the
    table and (d, l) must be admissible.
    """
    forced = rho is not None
    if not forced:
        rho = rho_of(d, l)
    M = (d - 1) * l
    value = exclusion_main_value(d, l, rho)
    last = M - rho - 2
    if last >= 4:
        tail = telescoping_product(4, last)
    else:
        tail = Fraction(last + 1, 4)
    chain = 2 * alpha(rho) * Fraction(3, 2) * tail / (d * l)
    if chain != value:
        raise ArithmeticError(f"chain {chain} disagrees with closed form {value}")
    note = "rho forced" if forced else None
    return AuditResult("exclusion-main", value, Fraction(1), value >= 1, _ctx(d, l, rho),
                       note=note, details={"alpha": alpha(rho), "chain": chain})


def exclusion_smooth_audit(N: int, degX: int) -> AuditResult:
    if degX <= 0:
        raise ValueError("degX must be positive")
    lo, hi = N - 2, Fraction(3 * (N - 3), 2)
    window = lo <= degX <= hi
    value = Fraction(6, degX) * Fraction(N - 3, 4)
    # the upper end of the window is exactly where the value reaches 1
    implied = all(Fraction(6, k) * Fraction(N - 3, 4) >= 1
                  for k in range(max(lo, 1), int(hi) + 1))
    note = None if window else "degree window violated"
    return AuditResult("exclusion-smooth", value, Fraction(1), window and value >= 1,
                       {"N": N, "degX": degX}, note=note,
                       details={"window": [lo, hi], "window_holds": window,
                                "window_implies_inequality": implied})


def exclusion_s3_value(d: int, l: int, rho: int) -> Fraction:
    M = (d - 1) * l
    return Fraction(3 * (M - rho - 4), 2 * d * l)


def exclusion_s3_audit(d: int, l: int) -> AuditResult:
    rho = rho_of(d, l)
    value = exclusion_s3_value(d, l, rho)
    return AuditResult("exclusion-s3", value, Fraction(1), value > 1, _ctx(d, l, rho), relation=">")


def degree_window_audit(d: int, l: int) -> AuditResult:
    rho = rho_of(d, l)
    M = (d - 1) * l
    dl = d * l
    rows = []
    for i in range(rho):
        lo, hi = M - i - 2, Fraction(3 * (M - i - 3), 2)
        rows.append({"i": i, "lower": lo, "upper": hi, "ok": lo <= dl <= hi})
    ok = all(r["ok"] for r in rows)
    bad = [r["i"] for r in rows if not r["ok"]]
    note = None if ok else f"window fails at i={','.join(map(str, bad))}"
    return AuditResult("degree-window", dl, min(r["upper"] for r in rows), ok,
                       _ctx(d, l, rho), relation="window", note=note, details={"per_i": rows})


def reduction_step_audit(samples: int, seed: int, denominator: int = 2520) -> AuditResult:
    """Sample both reduction cases and test alpha_Delta > alpha/2 + 1.

    Values are numerators over a common denominator D, so all comparisons
    are exact integer arithmetic. Hypotheses are sampled constructively and
    the strict ones enforced by rejection; ``samples`` counts accepted
    tuples per case.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    rng = random.Random(seed)
    D = denominator
    counter: dict[str, Any] = {}
    attempts = {"general": 0, "special": 0}
    accepted = {"general": 0, "special": 0}

    def witness(case, a_, mu, beta, aa):
        return {"case": case, "alpha": Fraction(a_, D), "mu_S": Fraction(mu, D),
                "beta": Fraction(beta, D), "a": Fraction(aa, D)}

    while accepted["general"] < samples:
        attempts["general"] += 1
        al = rng.randint(D + 1, 2 * D - 1)
        a = rng.randint(0, 2 * D)
        mu = rng.randint(0, (al + a) // 2)
        beta = rng.randint(0, mu)
        if mu + beta + a <= 2 * D:
            continue
        accepted["general"] += 1
        # alpha_Delta = alpha + a must beat alpha/2 + 1
        if not 2 * (al + a) > al + 2 * D and "general" not in counter:
            counter["general"] = witness("general", al, mu, beta, a)

    while accepted["special"] < samples:
        attempts["special"] += 1
        al = rng.randint(D + 1, 2 * D - 1)
        a = rng.randint(0, 2 * D)
        s = rng.randint(0, (al + a) // 2)
        mu = rng.randint(0, s)
        beta = s - mu
        if s + 2 * a <= 2 * D:
            continue
        accepted["special"] += 1
        ok = (5 * (al + a) > 4 * al + 4 * D            # alpha + a > (4alpha+4)/5
              and 2 * (4 * al + 4 * D) > 5 * (al + 2 * D)  # (4alpha+4)/5 > alpha/2+1
              and 2 * (al + a) > al + 2 * D)
        if not ok and "special" not in counter:
            counter["special"] = witness("special", al, mu, beta, a)

    # the dominance of the special-case bound also holds at the closed end alpha = 1
    boundary = Fraction(8, 5) > Fraction(3, 2)
    n_bad = len(counter)
    return AuditResult("reduction-step", n_bad, 0, n_bad == 0 and boundary,
                       {"samples": samples, "seed": seed}, relation="==",
                       details={"accepted": accepted, "attempts": attempts,
                                "denominator": D, "alpha_one_dominance": boundary,
                                "counterexamples": list(counter.values())})


def reduction_step_check(alpha_: Fraction, mu: Fraction, beta: Fraction, a: Fraction) -> dict:
    """Evaluate both case hypotheses and conclusions at one exact tuple."""
    general_h = mu + beta + a > 2 and beta <= mu and 2 * mu <= alpha_ + a and a >= 0
    special_h = mu + beta + 2 * a > 2 and 2 * (mu + beta) <= alpha_ + a and a >= 0
    target = alpha_ / 2 + 1
    return {"general_hypotheses": general_h, "special_hypotheses": special_h,
            "alpha_delta": alpha_ + a, "target": target,
            "special_bound": (4 * alpha_ + 4) / 5,
            "conclusion": alpha_ + a > target}


def epsilon_coefficients_recovered(rho: int, Ms: tuple[int, int, int]) -> tuple[Fraction, Fraction, Fraction]:
    """Fit (A, B, C) in A*M^2 + B*M + C through three epsilon values."""
    (m0, m1, m2) = Ms
    y = [epsilon_from(m, rho) for m in Ms]
    # Newton divided differences
    d01 = (y[1] - y[0]) / (m1 - m0)
    d12 = (y[2] - y[1]) / (m2 - m1)
    A = (d12 - d01) / (m2 - m0)
    B = d01 - A * (m0 + m1)
    C = y[0] - A * m0 * m0 - B * m0
    return A, B, C


def epsilon_formula_audit(rho: int) -> AuditResult:
    b, c = EPSILON_COEFFS[rho]
    A, B, C = epsilon_coefficients_recovered(rho, (20, 37, 101))
    expected = (Fraction(1, 2), Fraction(-b, 2), Fraction(c, 2))
    ok = (A, B, C) == expected
    return AuditResult("epsilon-formula", int(ok), 1, ok, {"rho": rho}, relation="==",
                       details={"recovered": [A, B, C], "expected": list(expected)})
