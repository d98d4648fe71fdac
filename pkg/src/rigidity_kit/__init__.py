"""Exact audits of canonical-threshold inequalities for multiple projective
spaces, plus desk-scale regularity checkers for sampled varieties."""
from __future__ import annotations

__version__ = "0.1.0"
