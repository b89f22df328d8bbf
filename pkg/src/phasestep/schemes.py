"""The six one-step update rules and their unique-solvability bounds.

Scheme identifiers (CLI spellings in parentheses):

* EE (ee): explicit Euler
* IE (ie): implicit Euler
* CN (cn): Crank-Nicolson
* MODCN (modcn): modified Crank-Nicolson, secant form of the nonlinearity
* IM (im): implicit midpoint
* CSMODCN (csmodcn): convex splitting of the modified Crank-Nicolson scheme

Each implicit step is a cubic residual solved by the certified monotone
solver when the step size respects the scheme's solvability bound; beyond
it (force mode) the nearest real root to the previous state is taken and
a multiplicity flag is raised.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .model import ModelParams
from .rootfind import CubicResidual, solve_monotone_cubic, solve_nearest_root


class SchemeId(enum.Enum):
    EE = "ee"
    IE = "ie"
    CN = "cn"
    MODCN = "modcn"
    IM = "im"
    CSMODCN = "csmodcn"

    @classmethod
    def from_name(cls, name: str) -> "SchemeId":
        try:
            return cls(name.lower())
        except ValueError:
            valid = ", ".join(s.value for s in cls)
            raise ValueError(f"unknown scheme {name!r}; expected one of {valid}")


@dataclass(frozen=True)
class StepConfig:
    """Step size plus permission to exceed the solvability bound."""

    h: float
    force_unsafe: bool = False

    def __post_init__(self):
        if not (self.h > 0.0):
            raise ValueError(f"h must be positive, got {self.h}")


class SolverRefusedError(RuntimeError):
    """An implicit step beyond its solvability bound without force mode."""

    def __init__(self, scheme: SchemeId, h: float, bound: float):
        self.scheme = scheme
        self.h = h
        self.bound = bound
        super().__init__(
            f"{scheme.value}: h = {h:g} exceeds solvability bound {bound:g} "
            "(pass force_unsafe to override)"
        )


def solvability_bound(s: SchemeId, p: ModelParams) -> float:
    """Largest h under which the scheme's per-step equation has a unique root."""
    if s in (SchemeId.EE, SchemeId.CSMODCN):
        return math.inf
    if s is SchemeId.IE:
        return p.eps2
    # CN, MODCN, IM
    return 2.0 * p.eps2


def residual(s: SchemeId, u_prev: float, p: ModelParams, h: float) -> CubicResidual:
    """Cubic residual of the implicit update, scaled by h (units of u).

    For IM the residual is posed in the midpoint variable m = (u + u_prev)/2,
    which removes the quadratic term; callers map the root back via
    u = 2m - u_prev.
    """
    r = h / p.eps2
    if s is SchemeId.IE:
        return CubicResidual(r, 1.0 - r, -u_prev)
    if s is SchemeId.CN:
        q = 0.5 * r
        return CubicResidual(q, 1.0 - q, q * (u_prev**3 - u_prev) - u_prev)
    if s is SchemeId.MODCN:
        q = 0.5 * r
        return CubicResidual(
            a3=0.5 * q,
            a2=0.5 * q * u_prev,
            a1=1.0 + q * (0.5 * u_prev * u_prev - 1.0),
            a0=-u_prev + q * (0.5 * u_prev**3 - u_prev),
        )
    if s is SchemeId.IM:
        return CubicResidual(r, 2.0 - r, -2.0 * u_prev)
    if s is SchemeId.CSMODCN:
        q = 0.5 * r
        return CubicResidual(
            a3=0.5 * q,
            a2=0.5 * q * u_prev,
            a1=1.0 + 0.5 * q * u_prev * u_prev,
            a0=-u_prev + 0.5 * q * u_prev**3 - r * u_prev,
        )
    raise ValueError(f"{s} has no implicit residual")


@dataclass(frozen=True)
class StepResult:
    u: float
    multiple_roots: bool = False


def step(s: SchemeId, u_prev: float, p: ModelParams, c: StepConfig) -> StepResult:
    """Advance one step; force mode may see several roots and flags it."""
    if s is SchemeId.EE:
        return StepResult(u_prev - (c.h / p.eps2) * (u_prev**3 - u_prev))
    bound = solvability_bound(s, p)
    forced = c.h > bound
    if forced and not c.force_unsafe:
        raise SolverRefusedError(s, c.h, bound)
    res = residual(s, u_prev, p, c.h)
    scale = max(1.0, abs(u_prev))
    if forced:
        if s is SchemeId.IM:
            roots = [2.0 * m - u_prev for m in res.real_roots()]
            u = min(roots, key=lambda x: (abs(x - u_prev), abs(x)))
            return StepResult(u, len(roots) > 1)
        u, multiple = solve_nearest_root(res, u_prev)
        return StepResult(u, multiple)
    root = solve_monotone_cubic(res, u_prev, scale=scale)
    if s is SchemeId.IM:
        return StepResult(2.0 * root - u_prev)
    return StepResult(root)


def step_ee(u_prev: float, p: ModelParams, c: StepConfig) -> float:
    return step(SchemeId.EE, u_prev, p, c).u


def step_ie(u_prev: float, p: ModelParams, c: StepConfig) -> float:
    return step(SchemeId.IE, u_prev, p, c).u


def step_cn(u_prev: float, p: ModelParams, c: StepConfig) -> float:
    return step(SchemeId.CN, u_prev, p, c).u


def step_modcn(u_prev: float, p: ModelParams, c: StepConfig) -> float:
    return step(SchemeId.MODCN, u_prev, p, c).u


def step_im(u_prev: float, p: ModelParams, c: StepConfig) -> float:
    return step(SchemeId.IM, u_prev, p, c).u


def step_csmodcn(u_prev: float, p: ModelParams, c: StepConfig) -> float:
    return step(SchemeId.CSMODCN, u_prev, p, c).u
