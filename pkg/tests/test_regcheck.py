from __future__ import annotations

import json
import random

import pytest

from rigidity_kit.algebra import GF, MultiPoly, variables
from rigidity_kit.mps import AffineExpansion, MPSParams, localize, random_form, random_model
from rigidity_kit.regcheck import (
    FAIL,
    INDETERMINATE,
    NOT_APPLICABLE,
    PASS,
    CheckConfig,
    check_N_conditions,
    check_point,
    check_R11,
    check_R12,
    check_R13,
    check_R14,
    check_R21,
    check_R21_R22,
    check_R22,
    degree_window,
    r14_threshold,
    r21_threshold,
    reverify,
)

from _models import (
    PLANTED_POINT_CONE,
    PLANTED_POINT_R11,
    planted_cone_model,
    planted_r11_model,
    smooth_points,
    toy_model,
)

F = GF(101)
CFG = CheckConfig(trials_P=2, trials_lambda=3)


def expansion(*qs):
    """AffineExpansion with components q1, q2, ... (q0 = 0)."""
    n = qs[0].nvars
    return AffineExpansion((MultiPoly.zero(F, n),) + tuple(qs))


def squares(zs):
    return sum((z * z for z in zs), MultiPoly.zero(F, zs[0].nvars))


# -- configuration -------------------------------------------------------------

def test_config_validation():
    with pytest.raises(ValueError):
        CheckConfig(trials_P=0)
    with pytest.raises(ValueError):
        CheckConfig(trials_lambda=-1)
    with pytest.raises(ValueError):
        CheckConfig(prefix_cap=0)
    with pytest.raises(ValueError):
        CheckConfig(slice_seed=-1)
    with pytest.raises(ValueError):
        CheckConfig(slice_seed=2 ** 64)
    cfg = CheckConfig(slice_seed=2 ** 64 - 1)
    assert cfg.rng("a").random() == cfg.rng("a").random()
    assert cfg.rng("a").random() != cfg.rng("b").random()


# -- R1.1 ----------------------------------------------------------------------

def test_r11_coordinate_forms_pass():
    z = variables(F, 5)
    e = expansion(z[0], z[1] ** 2, z[2] ** 3, z[3] ** 4)
    v = check_R11(e, 1, CFG, lambdas=[z[4]])
    assert v.status == PASS
    assert check_R11(e, 1, CFG).status == PASS


def test_r11_planted_product_fails_at_prefix_two():
    z = variables(F, 5)
    e = expansion(z[0], z[0] * z[1], z[2] ** 3, z[3] ** 4)
    v = check_R11(e, 1, CFG)
    assert v.status == FAIL and v.witness["prefix"] == 2
    assert reverify(e, "R1.1", v)


def test_r11_rejects_singular_expansion_and_bad_lambda():
    z = variables(F, 5)
    with pytest.raises(ValueError):
        check_R11(expansion(MultiPoly.zero(F, 5), z[0] * z[1]), 1, CFG)
    e = expansion(z[0], z[1] ** 2)
    with pytest.raises(ValueError):
        check_R11(e, 1, CFG, lambdas=[3 * z[0]])


def test_r11_prefix_cap_gives_capped_indeterminate():
    # random smooth expansion in 9 variables: the sequence has 6 forms
    rng = random.Random(1)
    qs = [random_form(F, 9, k, rng) for k in range(1, 8)]
    e = expansion(*qs)
    v = check_R11(e, 1, CheckConfig(trials_lambda=1, prefix_cap=4))
    assert v.status == INDETERMINATE and v.code == "capped"
    assert v.budget["sequence_length"] == 6 and v.budget["certified_length"] == 4


def test_r11_capped_on_toy_model_point():
    m = random_model(MPSParams(4, 2, toy_mode=True), 101, 3)
    o = smooth_points(m, 1)[0]
    rep = check_point(m, o, 1, CheckConfig(trials_P=1, trials_lambda=1, prefix_cap=2))
    v = rep.verdicts["R1.1"]
    # M = 6, rho = 1: the sequence has M - rho - 2 = 3 forms
    assert v.status == INDETERMINATE and v.code == "capped"
    assert v.budget["sequence_length"] == 3


# -- R1.2 ----------------------------------------------------------------------

def test_r12_generic_intersection_passes():
    z = variables(F, 5)
    q3 = random_form(F, 5, 3, random.Random(2))
    e = expansion(z[0], squares(z[1:]), q3)
    assert check_R12(e, CFG).status == PASS


def test_r12_visible_factorization_is_not_passed():
    z = variables(F, 5)
    e = expansion(z[0], z[1] * z[2], z[1] * z[3])
    v = check_R12(e, CFG)
    assert v.status == FAIL or (v.status == INDETERMINATE and "reducible" in v.code)
    if v.status == FAIL:
        assert reverify(e, "R1.2", v)


def test_r12_zero_cubic_fails_codimension():
    z = variables(F, 5)
    e = expansion(z[0], squares(z[1:]))
    v = check_R12(e, CFG)
    assert v.status == FAIL and v.code == "codimension"
    assert reverify(e, "R1.2", v)


def test_r12_reducible_set_is_indeterminate():
    # q2 = z2 z3 restricted to {z1 = 0} is a pair of hyperplanes
    z = variables(F, 6)
    q3 = random_form(F, 6, 3, random.Random(4))
    v = check_R12(expansion(z[0], z[1] * z[2], q3), CFG)
    assert v.status == INDETERMINATE and v.code == "reducible"


# -- R1.3 ----------------------------------------------------------------------

def _smooth_quadric_p7():
    x = variables(F, 8)
    h = x[0] * x[1] + squares(x[2:])
    return localize(h, (1, 0, 0, 0, 0, 0, 0, 0))


def test_r13_smooth_quadric_passes():
    e = _smooth_quadric_p7()
    assert not e.is_singular()
    v = check_R13(e, e.equation(), CheckConfig(trials_lambda=6))
    assert v.status == PASS


def test_r13_isotropic_lambda_on_a_small_quadric_is_non_reduced():
    # on x0 x1 + x2^2 + x3^2 + x4^2 the form q2 has rank 3 on {q1 = 0}; on a
    # hyperplane tangent to that cone it drops to rank 1, a double line
    x = variables(F, 5)
    e = localize(x[0] * x[1] + squares(x[2:]), (1, 0, 0, 0, 0))
    z = variables(F, 4)
    lam = 10 * z[1] + z[3]  # 10^2 + 1 = 0 mod 101
    v = check_R13(e, None, CFG, lambdas=[lam])
    assert v.status == FAIL and v.code == "non-reduced"
    assert reverify(e, "R1.3", v)


def test_r13_repeated_factor_is_non_reduced():
    z = variables(F, 5)
    e = expansion(z[0], z[1] * z[1])
    v = check_R13(e, e.equation(), CFG)
    assert v.status == FAIL and v.code == "non-reduced"
    assert reverify(e, "R1.3", v, full_equation=e.equation())


def test_r13_planted_factor_is_reducible():
    z = variables(F, 5)
    e = expansion(z[0], z[1] * z[2])
    v = check_R13(e, e.equation(), CFG)
    assert v.status == FAIL and v.code == "reducible"
    assert reverify(e, "R1.3", v)


# -- rank conditions -----------------------------------------------------------

def _rank_expansion(r, n=16):
    z = variables(F, n)
    return expansion(z[0], squares(z[1:r + 1]))


def _cone_expansion(r, n=16):
    z = variables(F, n)
    return expansion(MultiPoly.zero(F, n), squares(z[:r]))


def test_r14_examples():
    assert check_R14(_rank_expansion(8), 2).status == PASS
    v = check_R14(_rank_expansion(11), 4)
    assert v.status == FAIL and v.witness == {"rank": 11, "threshold": 12}
    assert reverify(_rank_expansion(11), "R1.4", v)
    v = check_R14(_rank_expansion(2), 1)
    assert v.status == PASS and v.code == "vacuous"


def test_r21_examples():
    assert check_R21(_cone_expansion(8), 1).status == PASS
    v = check_R21(_cone_expansion(13), 4)
    assert v.status == FAIL and v.witness == {"rank": 13, "threshold": 14}
    assert reverify(_cone_expansion(13), "R2.1", v)
    with pytest.raises(ValueError):
        check_R21(_rank_expansion(8), 1)


@pytest.mark.parametrize("rho,r14,r21", [(1, None, 8), (2, 8, 10), (3, 10, 12), (4, 12, 14)])
def test_rank_thresholds_table(rho, r14, r21):
    assert r21_threshold(rho) == 2 * rho + 6 == r21
    assert check_R21(_cone_expansion(r21), rho).status == PASS
    assert check_R21(_cone_expansion(r21 - 1), rho).status == FAIL
    if r14 is None:
        assert check_R14(_rank_expansion(1), rho).code == "vacuous"
        return
    assert r14_threshold(rho) == 8 + 2 * (rho - 2) == r14
    assert check_R14(_rank_expansion(r14), rho).status == PASS
    assert check_R14(_rank_expansion(r14 - 1), rho).status == FAIL


def test_r22_prefix_two_failure():
    z = variables(F, 6)
    e = AffineExpansion((MultiPoly.zero(F, 6), MultiPoly.zero(F, 6),
                         z[0] * z[1], z[0] * z[2], z[3] ** 3))
    v = check_R22(e, 1, CFG, restricted=True)
    assert v.status == FAIL and v.witness["prefix"] == 2
    assert reverify(e, "R2.2", v)
    r21, r22 = check_R21_R22(e, 1, CFG, restricted=True)
    assert r21.status == FAIL and r22.status == FAIL


def test_r22_generic_pass_on_sampled_subspaces():
    rng = random.Random(8)
    n = 8
    comps = [MultiPoly.zero(F, n), MultiPoly.zero(F, n)] + [random_form(F, n, k, rng) for k in (2, 3)]
    e = AffineExpansion(tuple(comps))
    # rho = 1: codimension-3 subspaces of an 8-space leave 2 forms q2, q3
    v = check_R22(e, 1, CFG)
    assert v.status == PASS and v.budget["sequence_length"] == 2


# -- N-conditions ----------------------------------------------------------------

def test_degree_window_examples():
    assert degree_window(7, 8)[0]
    assert not degree_window(5, 8)[0]
    assert not degree_window(9, 8)[0]


def test_n_conditions_window_failure():
    z = variables(F, 8)
    e = expansion(*[z[i] ** (i + 1) for i in range(8)])
    n1, n2, n3 = check_N_conditions(e, 5, 8, CFG)
    assert n1.status == n2.status == n3.status == FAIL
    assert n1.code == "degree-window"
    assert reverify(e, "N1", n1)


def test_n_conditions_proceed_inside_window():
    z = variables(F, 8)
    e = expansion(*[z[i] ** (i + 1) for i in range(8)])
    n1, n2, n3 = check_N_conditions(e, 7, 8, CFG)
    assert n1.status == PASS
    assert n1.budget["sequence_length"] == 5
    for v in (n2, n3):
        assert v.code != "degree-window"


# -- whole points ----------------------------------------------------------------

def test_check_point_on_toy_smooth_points():
    m = toy_model()
    for o in smooth_points(m, 2):
        rep = check_point(m, o, 1, CFG)
        for c in ("R1.1", "R1.2", "R1.3", "R1.4"):
            assert rep.verdicts[c].status in (PASS, INDETERMINATE)
        for c in ("R2.1", "R2.2", "N1", "N2", "N3"):
            assert rep.verdicts[c].status == NOT_APPLICABLE
        assert not rep.failures


def test_check_point_planted_cone():
    m = planted_cone_model()
    rep = check_point(m, PLANTED_POINT_CONE, 1, CFG)
    v = rep.verdicts["R2.1"]
    assert v.status == FAIL and v.witness == {"rank": 4, "threshold": 8}
    assert reverify(rep.expansion, "R2.1", v)
    assert rep.verdicts["R1.1"].status == NOT_APPLICABLE


def test_check_point_planted_r11_witness_reverifies():
    m = planted_r11_model()
    rep = check_point(m, PLANTED_POINT_R11, 1, CFG)
    v = rep.verdicts["R1.1"]
    assert v.status == FAIL and v.witness["prefix"] == 2
    assert reverify(rep.expansion, "R1.1", v)
    for name in rep.failures:
        assert reverify(rep.expansion, name, rep.verdicts[name], rho=1)


def test_tampered_witness_does_not_reverify():
    m = planted_cone_model()
    rep = check_point(m, PLANTED_POINT_CONE, 1, CFG)
    v = rep.verdicts["R2.1"]
    forged = type(v)(v.status, v.code, v.reason, {"rank": 3, "threshold": 8}, v.budget)
    assert not reverify(rep.expansion, "R2.1", forged)


def test_check_point_off_variety():
    m = toy_model()
    with pytest.raises(ValueError):
        check_point(m, (1, 0, 0, 0, 0, 1), 1, CFG)
    with pytest.raises(ValueError):
        check_point(m, (1, 0, 0), 1, CFG)


def test_reports_are_deterministic():
    m = toy_model()
    o = smooth_points(m, 1)[0]
    a = json.dumps(check_point(m, o, 1, CFG).to_json(), sort_keys=True)
    b = json.dumps(check_point(m, o, 1, CFG).to_json(), sort_keys=True)
    assert a == b
    c = json.dumps(check_point(m, o, 1, CheckConfig(2, 3, 6, 99)).to_json(), sort_keys=True)
    assert json.loads(c)["point"] == json.loads(a)["point"]


def test_fail_is_monotone_in_resources():
    m = planted_r11_model()
    small = CheckConfig(trials_P=1, trials_lambda=1, prefix_cap=2)
    base = check_point(m, PLANTED_POINT_R11, 1, small)
    assert base.verdicts["R1.1"].status == FAIL
    for cfg in (CheckConfig(1, 4, 2), CheckConfig(2, 1, 4), CheckConfig(2, 3, 6)):
        rep = check_point(m, PLANTED_POINT_R11, 1, cfg)
        for name in base.failures:
            assert rep.verdicts[name].status == FAIL
    # direct: more lambda trials keep the failing first trial
    z = variables(F, 5)
    e = expansion(z[0], z[0] * z[1], z[2] ** 3)
    for k in range(1, 6):
        assert check_R11(e, 1, CheckConfig(trials_lambda=k)).status == FAIL


def test_report_json_schema():
    m = toy_model()
    o = smooth_points(m, 1)[0]
    d = check_point(m, o, 1, CFG).to_json()
    assert set(d) == {"point", "rho", "gamma", "conditions", "samples_used", "subspaces_used", "notes"}
    assert set(d["conditions"]) == {"R1.1", "R1.2", "R1.3", "R1.4", "R2.1", "R2.2", "N1", "N2", "N3"}
    for v in d["conditions"].values():
        assert {"verdict", "code", "reason", "budget"} <= set(v)
    assert json.loads(json.dumps(d)) == d


def test_d5_reports_carry_the_duplicate_row_note():
    m = random_model(MPSParams(5, 1, toy_mode=True), 101, 2)
    o = smooth_points(m, 1)[0]
    rep = check_point(m, o, 1, CheckConfig(1, 1, 2))
    assert any("d=5" in n for n in rep.to_json()["notes"])
