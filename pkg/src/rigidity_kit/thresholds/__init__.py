"""Exact audits of the parameter tables and inequality chains."""
from __future__ import annotations

from .audits import (
    PROP13_IDS,
    AuditResult,
    alpha,
    degree_window_audit,
    epsilon_formula_audit,
    epsilon_min_audit,
    exclusion_main_audit,
    exclusion_main_value,
    exclusion_s3_audit,
    exclusion_s3_value,
    exclusion_smooth_audit,
    fmt,
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
    telescoping_product,
)
from .sweep import rho_table_audits, summarize, tail_audits, verify_all_tables
from .tables import (
    EPSILON_COEFFS,
    RHO_ROWS,
    ParamRow,
    admissible_pairs,
    check_admissible,
    epsilon_from,
    epsilon_of,
    is_admissible,
    min_l,
    rho_of,
)
