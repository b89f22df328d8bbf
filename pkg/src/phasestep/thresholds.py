"""Closed-form critical step sizes h*(u0, eps) per scheme.

Below h* the numerical trajectory is uniquely solvable and monotonically
converges to the correct equilibrium sign(u0).  The formulas split into
three cases on |u0|: at an equilibrium monotonicity is vacuous, inside
the well (0 < |u0| < 1) the bound is a constant multiple of eps^2, and
outside the well it decays with |u0| for every scheme except implicit
Euler, whose bound depends on eps alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import ModelParams
from .schemes import SchemeId, solvability_bound

# Inside-well constants, as multiples of eps^2.
_INSIDE_WELL = {
    SchemeId.EE: 0.5,
    SchemeId.IE: 1.0,
    SchemeId.CN: 1.0,
    SchemeId.MODCN: 1.0,
    SchemeId.IM: 1.0,
    SchemeId.CSMODCN: 2.0,
}


def _outside_well(s: SchemeId, a: float, eps2: float) -> float:
    """h* for |u0| = a > 1."""
    if s is SchemeId.EE:
        return eps2 / (a * a + a)
    if s is SchemeId.IE:
        return eps2
    if s is SchemeId.CN:
        return 2.0 * eps2 / (a * a + a)
    if s is SchemeId.MODCN:
        return 4.0 * eps2 / (a * a + 2.0 * a + 1.0)
    if s is SchemeId.IM:
        return 8.0 * eps2 / (a * a + 4.0 * a + 3.0)
    if s is SchemeId.CSMODCN:
        return 4.0 * eps2 / (a * a + 2.0 * a - 1.0)
    raise ValueError(f"unknown scheme {s}")


@dataclass(frozen=True)
class ThresholdReport:
    """h* and solvability bound for one (scheme, u0, eps) triple."""

    scheme: SchemeId
    u0: float
    eps: float
    h_star: float
    solvability: float
    binding_case: str  # equilibrium | inside_well | outside_well

    def to_dict(self) -> dict:
        def num(x: float):
            return "inf" if math.isinf(x) else x

        return {
            "scheme": self.scheme.value,
            "u0": self.u0,
            "eps": self.eps,
            "h_star": num(self.h_star),
            "solvability": num(self.solvability),
            "binding_case": self.binding_case,
        }


def critical_step(s: SchemeId, u0: float, p: ModelParams) -> ThresholdReport:
    """The critical step size, with the binding case identified.

    At u0 in {0, +-1} the trajectory is constant and only solvability
    binds; h_star then equals the solvability bound.
    """
    a = abs(u0)
    solv = solvability_bound(s, p)
    if a == 0.0 or a == 1.0:
        return ThresholdReport(s, u0, p.eps, solv, solv, "equilibrium")
    if a < 1.0:
        h_star = _INSIDE_WELL[s] * p.eps2
        case = "inside_well"
    else:
        h_star = _outside_well(s, a, p.eps2)
        case = "outside_well"
    return ThresholdReport(s, u0, p.eps, h_star, solv, case)


def infimum_over_u0(s: SchemeId, p: ModelParams) -> float:
    """inf over all initial values of h*: eps^2 for IE, zero for the rest."""
    if s is SchemeId.IE:
        return p.eps2
    return 0.0
