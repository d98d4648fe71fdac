from __future__ import annotations

import random
from fractions import Fraction
from math import comb, factorial, prod

import pytest

from rigidity_kit.cli import load_known_flags
from rigidity_kit.thresholds import (
    PROP13_IDS,
    admissible_pairs,
    alpha,
    degree_window_audit,
    epsilon_min_audit,
    epsilon_of,
    exclusion_main_audit,
    exclusion_s3_audit,
    exclusion_smooth_audit,
    hilbert_convexity_audit,
    hilbert_quadric,
    pair_codim_audit,
    prop13_bound,
    prop13_coefficients,
    prop15_codim,
    rank_stratum_codim,
    reducible_divisor_codim_audit,
    reduction_step_audit,
    reduction_step_check,
    rho_of,
    telescoping_product,
    verify_all_tables,
)
from rigidity_kit.thresholds.tables import EPSILON_COEFFS

Fr = Fraction


def test_alpha_values_and_recursion():
    assert alpha(0) == 1
    assert alpha(3) == Fr(15, 8)
    assert alpha(10) == Fr(2047, 1024)
    for k in range(31):
        assert alpha(k + 1) == alpha(k) / 2 + 1
        assert alpha(k) == 2 - Fr(1, 2 ** k)
    with pytest.raises(ValueError):
        alpha(-1)


def test_rho_of_examples():
    assert rho_of(4, 21) == 4
    assert rho_of(6, 7) == 2
    assert rho_of(14, 4) == 1
    assert [rho_of(4, l) for l in range(21, 26)] == [4] * 5
    assert rho_of(18, 2) == 1
    for bad in ((4, 20), (3, 100), (5, 4), (11, 1)):
        with pytest.raises(ValueError):
            rho_of(*bad)


def test_epsilon_of_examples():
    assert epsilon_of(18, 2) == 317
    assert epsilon_of(4, 21) == 1074
    # rho = 2 row reads (M^2 - 21M + 76)/2
    assert rho_of(6, 7) == 2
    M = 35
    assert epsilon_of(6, 7) == Fr(M * M - 21 * M + 76, 2)


def test_prop13_examples():
    assert prop13_bound("1.1", 34, 1) == 428
    for M in (10, 34, 77, 1000):
        assert prop13_bound("1.3", M, 2) == Fr(M * M - 21 * M + 76, 2)
    assert prop13_bound("2.1", 20, 3) == -5
    assert prop13_bound(1.1, 34, 1) == 428
    with pytest.raises(ValueError):
        prop13_bound("3.1", 20, 1)
    with pytest.raises(ValueError):
        prop13_bound("1.1", 20, 5)


def test_prop13_coefficients_as_printed():
    # (i) and (vi) have the closed shapes (4rho+5, 3rho^2+3rho) and (4rho+1, 3rho^2-rho)
    for r in (1, 2, 3, 4):
        assert prop13_coefficients("1.1", r) == (4 * r + 5, 3 * r * r + 3 * r)
        assert prop13_coefficients("2.2", r) == (4 * r + 1, 3 * r * r - r)


def test_epsilon_matches_prop13_row_13_for_rho_1_and_2():
    assert prop13_coefficients("1.3", 1) == EPSILON_COEFFS[1] == (17, 56)
    assert prop13_coefficients("1.3", 2) == EPSILON_COEFFS[2] == (21, 76)


def test_epsilon_min_examples():
    r = epsilon_min_audit(18, 2)
    assert r.holds and r.computed == 317 and "1.3" in r.details["argmin"]
    r = epsilon_min_audit(5, 5)
    assert not r.holds
    assert r.computed == -23 and r.threshold == -5
    assert r.details["bounds"]["1.2"] == -23
    # asymptotically the (iii) row is the minimum for rho = 2
    vals = {w: prop13_bound(w, 1000, 2) for w in PROP13_IDS}
    assert min(vals.values()) == vals["1.3"] == Fr(1000 ** 2 - 21 * 1000 + 76, 2)


def test_rank_stratum_codim():
    assert rank_stratum_codim(10, 4) == 21
    assert rank_stratum_codim(9, 9) == 0
    assert rank_stratum_codim(8, 3) == 15
    with pytest.raises(ValueError):
        rank_stratum_codim(8, 0)
    with pytest.raises(ValueError):
        rank_stratum_codim(8, 9)


def _h_oracle(N, m):
    return comb(m + N - 1, N - 1) - comb(m - 2 + N - 1, N - 1)


def test_hilbert_quadric_examples_and_grid():
    assert hilbert_quadric(5, 2) == 14
    assert hilbert_quadric(8, 4) == 294
    for N in range(4, 21):
        assert hilbert_quadric(N, 1) == N
        for m in range(1, 31):
            h = hilbert_quadric(N, m)
            assert h == _h_oracle(N, m)
            # printed product form, evaluated independently
            assert h * factorial(N - 2) == prod(range(m + 1, m + N - 2)) * (2 * m + N - 2)
    with pytest.raises(ValueError):
        hilbert_quadric(3, 2)


def test_hilbert_convexity_examples():
    assert hilbert_convexity_audit(8, 10, 1, 2).holds
    assert hilbert_convexity_audit(5, 6, 1, 3).holds
    with pytest.raises(ValueError):
        hilbert_convexity_audit(8, 10, 2, 2)
    with pytest.raises(ValueError):
        hilbert_convexity_audit(8, 10, 1, 6)


def test_reducible_divisor_codim_examples():
    r = reducible_divisor_codim_audit(8, 4)
    assert r.computed == 174 and r.threshold == 112 and r.holds
    assert 14 * 13 - 8 == 174
    r = reducible_divisor_codim_audit(5, 4)
    assert r.computed == _h_oracle(5, 4) - _h_oracle(5, 3) - _h_oracle(5, 1) == 20
    assert r.threshold == 20 and r.holds
    with pytest.raises(ValueError):
        reducible_divisor_codim_audit(8, 3)


def test_pair_codim_examples_and_sweep():
    r = pair_codim_audit(8)
    assert (r.computed, r.threshold, r.holds) == (70, 10, True)
    r = pair_codim_audit(5)
    assert (r.computed, r.threshold, r.holds) == (12, 1, True)
    assert all(pair_codim_audit(N).holds for N in range(5, 61))
    with pytest.raises(ValueError):
        pair_codim_audit(4)


def test_prop15_codim():
    assert prop15_codim(5) == 15
    assert prop15_codim(2) == 3
    assert prop15_codim(10) == 55


def test_telescoping_product():
    assert telescoping_product(4, 9) == Fr(5, 2)
    M, rho = 63, 4
    assert telescoping_product(4, M - rho - 2) == Fr(M - rho - 1, 4)
    assert telescoping_product(7, 7) == Fr(8, 7)
    rng = random.Random(500)
    for _ in range(500):
        a = rng.randint(2, 300)
        b = rng.randint(a, 400)
        assert telescoping_product(a, b) == Fr(b + 1, a)
    with pytest.raises(ValueError):
        telescoping_product(1, 5)
    with pytest.raises(ValueError):
        telescoping_product(6, 5)


def test_exclusion_main_examples():
    r = exclusion_main_audit(11, 2)
    assert r.computed == Fr(357, 352) and r.holds
    assert r.computed == Fr(51, 88) * Fr(7, 4)
    r = exclusion_main_audit(4, 25)
    assert r.computed == Fr(651, 640) and r.holds
    r = exclusion_main_audit(4, 5, rho=4)
    # M = 15: 3 * (15 - 4 - 1) / 80 = 3/8, times alpha_4 = 31/16
    assert r.computed == Fr(3, 8) * Fr(31, 16) == Fr(93, 128)
    assert not r.holds and r.note == "rho forced"
    assert exclusion_main_audit(4, 21).computed == Fr(899, 896)


def test_exclusion_main_is_exact_in_any_order():
    for d, l in admissible_pairs(40, 18):
        rho = rho_of(d, l)
        M = (d - 1) * l
        other = Fr(3 * (M - rho - 1) * (2 ** (rho + 1) - 1), 4 * d * l * 2 ** rho)
        assert exclusion_main_audit(d, l).computed == other


def test_exclusion_main_increases_in_l():
    for d in range(4, 19):
        by_rho = {}
        for l in range(2, 120):
            try:
                rho = rho_of(d, l)
            except ValueError:
                continue
            by_rho.setdefault(rho, []).append(exclusion_main_audit(d, l).computed)
        for vals in by_rho.values():
            assert all(a < b for a, b in zip(vals, vals[1:]))


def test_exclusion_smooth_examples():
    r = exclusion_smooth_audit(8, 7)
    assert r.holds and r.computed == Fr(30, 28)
    r = exclusion_smooth_audit(8, 9)
    assert not r.holds and not r.details["window_holds"]
    r = exclusion_smooth_audit(9, 9)  # 3(N-3)/2 = 9
    assert r.computed == 1 and r.holds
    assert all(exclusion_smooth_audit(N, N - 2).details["window_implies_inequality"]
               for N in range(5, 60))


def test_exclusion_s3_examples():
    r = exclusion_s3_audit(4, 25)
    assert r.computed == Fr(201, 200) and r.holds
    r = exclusion_s3_audit(4, 21)
    assert r.computed == Fr(165, 168) and not r.holds
    r = exclusion_s3_audit(11, 2)
    assert r.computed == Fr(42, 44) and not r.holds
    # strict comparison: an exact 1 is flagged
    assert exclusion_s3_audit(4, 24).computed == 1 and not exclusion_s3_audit(4, 24).holds


def test_degree_window_examples():
    r = degree_window_audit(11, 2)
    assert r.holds
    assert [(x["lower"], x["upper"]) for x in r.details["per_i"]] == [(18, Fr(51, 2)), (17, 24)]
    r = degree_window_audit(5, 5)
    assert not r.holds
    per = {x["i"]: x for x in r.details["per_i"]}
    assert per[2]["lower"] == 16 and per[2]["upper"] == Fr(45, 2) and not per[2]["ok"]
    r = degree_window_audit(18, 2)
    assert r.holds and r.details["per_i"][0]["upper"] == Fr(93, 2)


def test_reduction_step_examples():
    c = reduction_step_check(Fr(3, 2), Fr(9, 10), Fr(17, 20), Fr(3, 10))
    assert c["general_hypotheses"]
    assert c["alpha_delta"] == Fr(9, 5) and c["target"] == Fr(7, 4) and c["conclusion"]
    c = reduction_step_check(Fr(1), Fr(0), Fr(0), Fr(0))
    assert c["special_bound"] == Fr(8, 5) > Fr(3, 2) == c["target"]


def test_reduction_step_audit_small_run():
    r = reduction_step_audit(2000, seed=7)
    assert r.holds and r.computed == 0
    assert r.details["accepted"] == {"general": 2000, "special": 2000}
    assert reduction_step_audit(2000, seed=7).to_dict() == r.to_dict()
    with pytest.raises(ValueError):
        reduction_step_audit(0, seed=1)


# -- sweep -----------------------------------------------------------------------

def _flags(results, l_max, d_max):
    return {(r.claim_id, r.context["d"], r.context["l"]) for r in results
            if not r.holds and r.claim_id in ("exclusion-main", "exclusion-s3",
                                              "degree-window", "epsilon-min")
            and r.context["l"] <= l_max and r.context["d"] <= d_max}


def test_sweep_flags_equal_the_ledger():
    known = load_known_flags(None)
    res = verify_all_tables(30)
    assert _flags(res, 30, 18) == {k for k in known if k[2] <= 30 and k[1] <= 18}
    assert ("exclusion-s3", 4, 21) in known and ("exclusion-s3", 11, 2) in known
    assert ("epsilon-min", 5, 5) in known and ("degree-window", 5, 5) in known


def test_sweep_contains_rho4_rows_and_tails_hold():
    res = verify_all_tables(30)
    rows = {(r.context["d"], r.context["l"]): r.context["rho"]
            for r in res if r.claim_id == "param-row"}
    assert all(rows[(4, l)] == 4 for l in range(21, 26))
    assert rows[(4, 26)] == 3
    for r in res:
        if r.claim_id in ("rho-table", "rho-default", "epsilon-formula"):
            assert r.holds, r
        if r.claim_id.endswith("-tail") and r.claim_id != "exclusion-s3-tail":
            assert r.holds, r
    s3 = [r for r in res if r.claim_id == "exclusion-s3" and not r.holds]
    assert len(s3) > 0


def test_sweep_is_deterministic_and_rejects_small_bounds():
    a = [r.to_dict() for r in verify_all_tables(12)]
    b = [r.to_dict() for r in verify_all_tables(12)]
    assert a == b
    with pytest.raises(ValueError):
        verify_all_tables(1)
