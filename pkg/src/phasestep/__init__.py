"""Fixed-step time integration of the scalar Allen-Cahn ODE.

Six one-step schemes, their critical step sizes h*(u0, eps), energy and
monotonicity audits, adversarial initial conditions, and (u0, h) sweeps.
"""

from .analysis import (
    AxisSpec,
    EnergyAudit,
    MonotoneAudit,
    NoRootError,
    Outcome,
    OutcomeKind,
    SweepCell,
    SweepGrid,
    Trajectory,
    UnsupportedSchemeError,
    adversarial_u0,
    audit_energy,
    audit_monotone,
    classify,
    order_estimate,
    simulate,
    sweep,
)
from .model import (
    EnergyRecord,
    ModelParams,
    State,
    correct_steady_state,
    energy,
    exact_solution,
    f,
    potential,
)
from .rootfind import CubicResidual, NoBracketError, solve_monotone_cubic
from .schemes import (
    SchemeId,
    SolverRefusedError,
    StepConfig,
    solvability_bound,
    step,
    step_cn,
    step_csmodcn,
    step_ee,
    step_ie,
    step_im,
    step_modcn,
)
from .thresholds import ThresholdReport, critical_step, infimum_over_u0

__version__ = "0.1.0"

__all__ = [
    "AxisSpec",
    "CubicResidual",
    "EnergyAudit",
    "EnergyRecord",
    "ModelParams",
    "MonotoneAudit",
    "NoBracketError",
    "NoRootError",
    "Outcome",
    "OutcomeKind",
    "SchemeId",
    "SolverRefusedError",
    "State",
    "StepConfig",
    "SweepCell",
    "SweepGrid",
    "ThresholdReport",
    "Trajectory",
    "UnsupportedSchemeError",
    "adversarial_u0",
    "audit_energy",
    "audit_monotone",
    "classify",
    "correct_steady_state",
    "critical_step",
    "energy",
    "exact_solution",
    "f",
    "infimum_over_u0",
    "order_estimate",
    "potential",
    "simulate",
    "solvability_bound",
    "solve_monotone_cubic",
    "step",
    "step_cn",
    "step_csmodcn",
    "step_ee",
    "step_ie",
    "step_im",
    "step_modcn",
    "sweep",
]
