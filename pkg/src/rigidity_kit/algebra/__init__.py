"""Exact arithmetic: rationals, prime fields, sparse polynomials."""
from __future__ import annotations

from fractions import Fraction as Rational

from .fields import GF, QQ, Field, PrimeField, PrimeFieldElement, RationalField, binom, is_prime
from .poly import (
    MultiPoly,
    grevlex_key,
    homogeneous_components,
    linear_form,
    monomials_of_degree,
    poly_mul,
    substitute_linear,
    variables,
)
from .textio import PolyFormatError, format_polynomial, format_polynomials, parse_polynomials

__all__ = [
    "Rational", "GF", "QQ", "Field", "PrimeField", "PrimeFieldElement", "RationalField",
    "binom", "is_prime", "MultiPoly", "grevlex_key", "homogeneous_components",
    "linear_form", "monomials_of_degree", "poly_mul", "substitute_linear", "variables",
    "PolyFormatError", "format_polynomial", "format_polynomials", "parse_polynomials",
]
