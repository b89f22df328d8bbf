"""Scalar Allen-Cahn ODE: potentials, energy, exact solution, steady states.

The model is u'(t) = -f(u)/eps^2 with the double-well nonlinearity
f(u) = u^3 - u.  Everything here is a pure function of its arguments.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters of the ODE: the interfacial-width scale eps."""

    eps: float

    def __post_init__(self):
        if not (self.eps > 0.0):
            raise ValueError(f"eps must be positive, got {self.eps}")
        if self.eps >= 1.0:
            warnings.warn(
                f"eps = {self.eps} >= 1 is outside the intended range (0, 1)",
                stacklevel=2,
            )

    @property
    def eps2(self) -> float:
        return self.eps * self.eps


@dataclass(frozen=True)
class State:
    """One sample of the (numerical or exact) solution at time t."""

    u: float
    t: float


@dataclass(frozen=True)
class EnergyRecord:
    """Original energy E(u) and, where a scheme defines one, a modified energy."""

    original: float
    modified: float | None = None


def f(u: float) -> float:
    """Double-well force f(u) = u^3 - u."""
    return u * u * u - u


def potential(u: float) -> float:
    """Double-well potential F(u) = (u^2 - 1)^2 / 4, with F' = f."""
    w = u * u - 1.0
    return 0.25 * w * w


def energy(u: float, p: ModelParams) -> float:
    """Free energy E(u) = F(u) / eps^2; nonnegative, zero exactly at u = +-1."""
    return potential(u) / p.eps2


def correct_steady_state(u0: float) -> float:
    """The equilibrium the exact solution reaches from u0: sign(u0) in {-1, 0, 1}."""
    if u0 > 0.0:
        return 1.0
    if u0 < 0.0:
        return -1.0
    return 0.0


# Underflow floor for the closed-form radicand; analytically it is strictly
# positive, so hitting the floor can only mean rounding underflow.
_RADICAND_FLOOR = 1e-300


def exact_solution(u0: float, p: ModelParams, t: float) -> float:
    """Closed-form solution u(t) = u0 / sqrt(e^{-2t/eps^2} + u0^2 (1 - e^{-2t/eps^2})).

    At t = 0 returns u0 exactly; as t -> inf tends to sign(u0).
    """
    if t < 0.0:
        raise ValueError(f"t must be nonnegative, got {t}")
    if u0 == 0.0:
        return 0.0
    if t == 0.0:
        return u0
    decay = math.exp(-2.0 * t / p.eps2)
    radicand = decay + u0 * u0 * (1.0 - decay)
    if radicand < _RADICAND_FLOOR:
        warnings.warn(
            "radicand underflow in exact solution; clamping to floor",
            stacklevel=2,
        )
        radicand = _RADICAND_FLOOR
    return u0 / math.sqrt(radicand)
