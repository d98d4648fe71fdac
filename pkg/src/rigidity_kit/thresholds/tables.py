"""Parameter tables: admissible (d, l), the reduction count rho, epsilon(d, l)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

# smallest admissible l for each cover degree d; every l >= 2 works for d >= 11
MIN_L = {4: 21, 5: 5, 6: 6, 7: 4, 8: 4, 9: 3, 10: 3}
GENERIC_MIN_L = 2
GENERIC_D = 11

RHO_ONE_FROM_D = 18


@dataclass(frozen=True)
class RhoRow:
    """One printed row; ``l_hi`` is None for open-ended rows."""

    d: int
    l_lo: int
    l_hi: int | None
    rho: int

    def contains(self, d: int, l: int) -> bool:
        return d == self.d and l >= self.l_lo and (self.l_hi is None or l <= self.l_hi)

    def label(self) -> str:
        hi = "inf" if self.l_hi is None else str(self.l_hi)
        return f"d={self.d} l={self.l_lo}..{hi} rho={self.rho}"


# The d=5 value appears on two printed rows; both are kept as printed.
RHO_ROWS: tuple[RhoRow, ...] = (
    RhoRow(4, 21, 25, 4),
    RhoRow(4, 26, None, 3),
    RhoRow(5, 5, 15, 3),
    RhoRow(5, 16, None, 3),
    RhoRow(6, 6, 6, 3),
    RhoRow(6, 7, None, 2),
    RhoRow(7, 4, 4, 3),
    RhoRow(7, 5, None, 2),
    RhoRow(8, 4, None, 2),
    RhoRow(9, 3, None, 2),
    RhoRow(10, 3, 17, 2),
    RhoRow(11, 2, 8, 2),
    RhoRow(12, 2, 5, 2),
    RhoRow(13, 2, 4, 2),
    RhoRow(14, 2, 3, 2),
    RhoRow(15, 2, 2, 2),
    RhoRow(16, 2, 2, 2),
    RhoRow(17, 2, 2, 2),
)

# epsilon = (M^2 - b*M + c)/2 for each rho
EPSILON_COEFFS = {1: (17, 56), 2: (21, 76), 3: (25, 90), 4: (31, 132)}


def min_l(d: int) -> int | None:
    if d < 4:
        return None
    return MIN_L.get(d, GENERIC_MIN_L)


def is_admissible(d: int, l: int) -> bool:
    lo = min_l(d)
    return lo is not None and l >= lo


def check_admissible(d: int, l: int) -> None:
    if not is_admissible(d, l):
        lo = min_l(d)
        need = "d >= 4" if lo is None else f"l >= {lo}"
        raise ValueError(f"(d, l) = ({d}, {l}) is not admissible ({need})")


def rho_of(d: int, l: int) -> int:
    check_admissible(d, l)
    if d >= RHO_ONE_FROM_D:
        return 1
    for row in RHO_ROWS:
        if row.contains(d, l):
            return row.rho
    return 1


def epsilon_from(M: int, rho: int) -> Fraction:
    b, c = EPSILON_COEFFS[rho]
    return Fraction(M * M - b * M + c, 2)


def epsilon_of(d: int, l: int) -> Fraction:
    rho = rho_of(d, l)
    return epsilon_from((d - 1) * l, rho)


@dataclass(frozen=True)
class ParamRow:
    d: int
    l: int
    M: int
    rho: int
    epsilon: Fraction

    @classmethod
    def of(cls, d: int, l: int) -> ParamRow:
        return cls(d, l, (d - 1) * l, rho_of(d, l), epsilon_of(d, l))


def admissible_pairs(l_max: int, d_max: int) -> list[tuple[int, int]]:
    out = []
    for d in range(4, d_max + 1):
        for l in range(min_l(d), l_max + 1):
            out.append((d, l))
    return out
