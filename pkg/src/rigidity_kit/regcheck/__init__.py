"""Regularity conditions at points of a multiple projective space model."""
from __future__ import annotations

from .conditions import (
    CONDITIONS,
    FAIL,
    INDETERMINATE,
    NOT_APPLICABLE,
    PASS,
    CheckConfig,
    Verdict,
    check_N_conditions,
    check_point,
    check_R11,
    check_R12,
    check_R13,
    check_R14,
    check_R21,
    check_R21_R22,
    check_R22,
    combine,
    degree_window,
    kernel_matrix,
    r14_threshold,
    r21_threshold,
    reverify,
)
from .report import RegularityReport

__all__ = [
    "CONDITIONS", "FAIL", "INDETERMINATE", "NOT_APPLICABLE", "PASS", "CheckConfig",
    "Verdict", "check_N_conditions", "check_point", "check_R11", "check_R12", "check_R13",
    "check_R14", "check_R21", "check_R21_R22", "check_R22", "combine", "degree_window",
    "kernel_matrix", "r14_threshold", "r21_threshold", "reverify", "RegularityReport",
]
