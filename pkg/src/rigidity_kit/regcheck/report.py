"""RegularityReport: one point's verdicts as a stable JSON object.

Schema (keys sorted on output)::

    {"point": [x_0, ..., x_M, xi],
     "rho": int,
     "gamma": [[exponents, coefficient], ...],
     "conditions": {"R1.1": {"verdict", "code", "reason", "budget", "witness"?}, ...},
     "samples_used": {...},
     "subspaces_used": [matrix, ...],
     "notes": [str, ...]}
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..algebra.poly import MultiPoly
from .conditions import CONDITIONS, FAIL, INDETERMINATE, PASS, Verdict


@dataclass
class RegularityReport:
    point: tuple
    gamma: MultiPoly
    rho: int
    verdicts: dict[str, Verdict]
    samples_used: dict
    subspaces_used: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    expansion: object = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        missing = [c for c in CONDITIONS if c not in self.verdicts]
        if missing:
            raise ValueError(f"report lacks verdicts for {missing}")

    @property
    def failures(self) -> list[str]:
        return [c for c in CONDITIONS if self.verdicts[c].status == FAIL]

    def counts(self) -> dict:
        out = {PASS: 0, FAIL: 0, INDETERMINATE: 0}
        for v in self.verdicts.values():
            if v.status in out:
                out[v.status] += 1
        return out

    def to_json(self) -> dict:
        gamma = [[list(e), int(c)] for e, c in self.gamma.sorted_terms()]
        return {
            "point": list(self.point),
            "rho": self.rho,
            "gamma": gamma,
            "conditions": {c: self.verdicts[c].to_json() for c in CONDITIONS},
            "samples_used": dict(self.samples_used),
            "subspaces_used": list(self.subspaces_used),
            # notes repeat per subspace trial; keep the first occurrence of each
            "notes": list(dict.fromkeys(self.notes)),
        }
