"""Plain-text polynomial format.

A block starts with a header ``# field=Q nvars=<n>`` or
``# field=Fp p=<prime> nvars=<n>`` and is followed by one term per line,
``<coeff> <e1> ... <en>``. Other lines starting with ``#`` are comments and
blank lines are ignored. A block with no term lines is the zero polynomial.
"""
from __future__ import annotations

from typing import Sequence

from .fields import GF, QQ, Field
from .poly import MultiPoly


class PolyFormatError(ValueError):
    """Raised on malformed polynomial text."""


def parse_header(line: str) -> tuple[Field, int] | None:
    """Return (field, nvars) if the line is a block header, else None."""
    body = line.lstrip("#").split()
    fields = dict(tok.split("=", 1) for tok in body if "=" in tok)
    if "field" not in fields:
        return None
    try:
        nvars = int(fields["nvars"])
        if fields["field"] == "Q":
            field: Field = QQ
        elif fields["field"] == "Fp":
            field = GF(int(fields["p"]))
        else:
            raise PolyFormatError(f"unknown field {fields['field']!r}")
    except (KeyError, ValueError) as exc:
        raise PolyFormatError(f"bad header {line.strip()!r}: {exc}") from exc
    if nvars < 1:
        raise PolyFormatError("nvars must be positive")
    return field, nvars


def parse_polynomials(text: str) -> list[MultiPoly]:
    polys: list[MultiPoly] = []
    current: dict | None = None
    field: Field | None = None
    nvars = 0

    def flush():
        if current is not None:
            polys.append(MultiPoly(field, nvars, current))

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            head = parse_header(line)
            if head is not None:
                flush()
                field, nvars = head
                current = {}
            continue
        if current is None:
            raise PolyFormatError(f"line {lineno}: term before any header")
        toks = line.split()
        if len(toks) != nvars + 1:
            raise PolyFormatError(f"line {lineno}: expected {nvars} exponents")
        try:
            coeff = field.parse(toks[0])
            exp = tuple(int(t) for t in toks[1:])
        except (ValueError, ZeroDivisionError) as exc:
            raise PolyFormatError(f"line {lineno}: {exc}") from exc
        if any(x < 0 for x in exp):
            raise PolyFormatError(f"line {lineno}: negative exponent")
        if exp in current:
            raise PolyFormatError(f"line {lineno}: duplicate exponent vector {exp}")
        current[exp] = coeff
    flush()
    return polys


def format_polynomial(f: MultiPoly) -> str:
    lines = [f"# {f.field.header()} nvars={f.nvars}"]
    for e, c in f.sorted_terms():
        lines.append(" ".join([f.field.format(c)] + [str(x) for x in e]))
    return "\n".join(lines) + "\n"


def format_polynomials(polys: Sequence[MultiPoly]) -> str:
    return "".join(format_polynomial(f) for f in polys)
