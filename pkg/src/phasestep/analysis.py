"""Trajectories, outcome classification, energy/monotonicity audits,
adversarial initial conditions, convergence orders, and (u0, h) sweeps."""

from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .model import EnergyRecord, ModelParams, State, correct_steady_state, energy
from .model import exact_solution, f
from .rootfind import NoBracketError
from .schemes import SchemeId, SolverRefusedError, StepConfig, solvability_bound, step
from .schemes import step_ee

STOP_TOL = 1e-10
STEADY_TOL = 1e-6
ENERGY_TOL = 1e-12
OVERFLOW_LIMIT = 1e75  # keeps u^4 representable for the energy bookkeeping


class NoRootError(RuntimeError):
    """Backward construction found no initial value (bracket search failed)."""


class UnsupportedSchemeError(ValueError):
    """The requested adversarial construction is not available for this scheme."""


@dataclass
class Trajectory:
    scheme: SchemeId
    params: ModelParams
    h: float
    states: list[State]
    energies: list[EnergyRecord]
    flags: set[str] = field(default_factory=set)
    stop_reason: str = "max_steps"  # steady | max_steps | overflow

    @property
    def values(self) -> list[float]:
        return [s.u for s in self.states]


class OutcomeKind(enum.Enum):
    MONOTONE_CORRECT = "MonotoneCorrect"
    OSCILLATORY_CORRECT = "OscillatoryCorrect"
    WRONG_EQUILIBRIUM = "WrongEquilibrium"
    DIVERGED = "Diverged"
    SOLVER_REFUSED = "SolverRefused"
    UNDECIDED = "Undecided"


@dataclass(frozen=True)
class Outcome:
    kind: OutcomeKind
    limit: float | None = None
    first_crossing: int | None = None

    def summary(self) -> str:
        s = self.kind.value
        if self.limit is not None:
            s += f" limit={self.limit:g}"
        return s


def _modified_energy(
    s: SchemeId, u: float, u_prev: float | None, p: ModelParams, h: float
) -> float | None:
    if s is SchemeId.CN:
        w = u**3 - u
        return energy(u, p) + h / (4.0 * p.eps2 * p.eps2) * w * w
    if s is SchemeId.MODCN:
        if u_prev is None:
            return energy(u, p)
        return energy(u, p) + (u - u_prev) ** 2 / h
    return None


def simulate(
    s: SchemeId,
    u0: float,
    p: ModelParams,
    c: StepConfig,
    max_steps: int,
    stop_tol: float = STOP_TOL,
) -> Trajectory:
    """Step until change and force both fall below stop_tol, divergence, or budget.

    Times are n*h exactly, never accumulated.  The original energy is
    recorded every step; CN and modCN also record their modified energies.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    if not math.isfinite(u0):
        raise ValueError(f"u0 must be finite, got {u0}")
    tr = Trajectory(
        scheme=s,
        params=p,
        h=c.h,
        states=[State(u0, 0.0)],
        energies=[EnergyRecord(energy(u0, p), _modified_energy(s, u0, None, p, c.h))],
    )
    if c.force_unsafe and c.h > solvability_bound(s, p):
        tr.flags.add("forced_unsafe")
    u = u0
    for n in range(1, max_steps + 1):
        result = step(s, u, p, c)
        if result.multiple_roots:
            tr.flags.add("multiplicity_seen")
        u_new = result.u
        if not math.isfinite(u_new) or abs(u_new) > OVERFLOW_LIMIT:
            tr.flags.add("overflow")
            tr.stop_reason = "overflow"
            return tr
        tr.states.append(State(u_new, n * c.h))
        tr.energies.append(
            EnergyRecord(energy(u_new, p), _modified_energy(s, u_new, u, p, c.h))
        )
        if abs(u_new - u) < stop_tol * c.h and abs(f(u_new)) < stop_tol:
            tr.stop_reason = "steady"
            return tr
        u = u_new
    tr.stop_reason = "max_steps"
    return tr


def _first_crossing(values: list[float]) -> int | None:
    """First step n where the trajectory crosses the well boundary or zero."""
    for n in range(1, len(values)):
        a, b = values[n - 1], values[n]
        boundary = (abs(a) - 1.0) * (abs(b) - 1.0) < 0.0
        sign_flip = (a > 0.0 and b < 0.0) or (a < 0.0 and b > 0.0)
        if boundary or sign_flip:
            return n
    return None


def _increments_single_signed(values: list[float]) -> bool:
    seen_pos = seen_neg = False
    for n in range(1, len(values)):
        d = values[n] - values[n - 1]
        if d > 0.0:
            seen_pos = True
        elif d < 0.0:
            seen_neg = True
    return not (seen_pos and seen_neg)


def classify(tr: Trajectory, steady_tol: float = STEADY_TOL) -> Outcome:
    """Asymptotic outcome of a trajectory.

    Monotone-correct demands single-signed increments, no equilibrium
    crossing, and a limit at sign(u0).  A truncated run (budget hit before
    the steady test) is Undecided, never coerced to a verdict.
    """
    if len(tr.states) < 2 and tr.stop_reason != "overflow":
        raise ValueError("classification needs at least two states")
    if "overflow" in tr.flags or tr.stop_reason == "overflow":
        return Outcome(OutcomeKind.DIVERGED, None, _first_crossing(tr.values))
    values = tr.values
    crossing = _first_crossing(values)
    if tr.stop_reason != "steady":
        return Outcome(OutcomeKind.UNDECIDED, values[-1], crossing)
    limit = values[-1]
    target = min((-1.0, 0.0, 1.0), key=lambda v: abs(limit - v))
    if abs(limit - target) >= steady_tol:
        return Outcome(OutcomeKind.UNDECIDED, limit, crossing)
    if target == correct_steady_state(values[0]):
        if _increments_single_signed(values) and crossing is None:
            return Outcome(OutcomeKind.MONOTONE_CORRECT, limit, crossing)
        return Outcome(OutcomeKind.OSCILLATORY_CORRECT, limit, crossing)
    return Outcome(OutcomeKind.WRONG_EQUILIBRIUM, limit, crossing)


@dataclass(frozen=True)
class EnergyAudit:
    original_ok: bool
    original_first_violation: int | None
    modified_ok: bool | None  # None when the scheme defines no modified energy
    modified_first_violation: int | None
    per_step_original: list[bool]
    per_step_modified: list[bool] | None

    def to_dict(self) -> dict:
        return {
            "original_ok": self.original_ok,
            "original_first_violation": self.original_first_violation,
            "modified_ok": self.modified_ok,
            "modified_first_violation": self.modified_first_violation,
            "per_step_original": self.per_step_original,
            "per_step_modified": self.per_step_modified,
        }


def audit_energy(tr: Trajectory, tol: float = ENERGY_TOL) -> EnergyAudit:
    """Check E(u_n) <= E(u_{n-1}) + tol per step, and the modified analog."""
    if not tr.states:
        raise ValueError("empty trajectory")
    orig = [e.original for e in tr.energies]
    ok_orig = [orig[n] <= orig[n - 1] + tol for n in range(1, len(orig))]
    first_orig = next((n + 1 for n, ok in enumerate(ok_orig) if not ok), None)
    mods = [e.modified for e in tr.energies]
    if any(m is None for m in mods):
        ok_mod, first_mod, all_mod = None, None, None
    else:
        ok_mod = [mods[n] <= mods[n - 1] + tol for n in range(1, len(mods))]
        first_mod = next((n + 1 for n, ok in enumerate(ok_mod) if not ok), None)
        all_mod = all(ok_mod)
    return EnergyAudit(
        original_ok=all(ok_orig),
        original_first_violation=first_orig,
        modified_ok=all_mod,
        modified_first_violation=first_mod,
        per_step_original=ok_orig,
        per_step_modified=ok_mod,
    )


@dataclass(frozen=True)
class MonotoneAudit:
    monotone: bool
    crossed: bool
    first_violation: int | None

    def to_dict(self) -> dict:
        return {
            "monotone": self.monotone,
            "crossed": self.crossed,
            "first_violation": self.first_violation,
        }


def audit_monotone(tr: Trajectory) -> MonotoneAudit:
    """Single-signed increments and no crossing of the well boundary or zero."""
    if not tr.states:
        raise ValueError("empty trajectory")
    values = tr.values
    crossing = _first_crossing(values)
    monotone = _increments_single_signed(values)
    first_violation: int | None = None
    if not monotone:
        seen_pos = seen_neg = False
        for n in range(1, len(values)):
            d = values[n] - values[n - 1]
            seen_pos |= d > 0.0
            seen_neg |= d < 0.0
            if seen_pos and seen_neg:
                first_violation = n
                break
    if crossing is not None:
        first_violation = (
            crossing if first_violation is None else min(first_violation, crossing)
        )
    return MonotoneAudit(monotone, crossing is not None, first_violation)


def _bisect(fn, lo: float, hi: float, iters: int = 200) -> float:
    flo = fn(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            return mid
        fm = fn(mid)
        if fm == 0.0:
            return mid
        if (fm < 0.0) == (flo < 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _ulp_polish(step_fn, u0: float, target: float, width: int = 64) -> float:
    """Scan neighboring doubles of u0 for the one stepping closest to target."""
    best, best_err = u0, abs(step_fn(u0) - target)
    for direction in (math.inf, -math.inf):
        x = u0
        for _ in range(width):
            x = math.nextafter(x, direction)
            err = abs(step_fn(x) - target)
            if err < best_err:
                best, best_err = x, err
    return best


def adversarial_u0(
    s: SchemeId, p: ModelParams, c: StepConfig, target: float
) -> float:
    """Initial value whose first step lands (to rounding) exactly on ``target``.

    Solves the scheme's update backward from the wrong equilibrium, so the
    trajectory then sits at target forever and converges to the wrong
    steady state.  Only the explicit-Euler and implicit-midpoint
    constructions are known; other schemes raise UnsupportedSchemeError.
    """
    if target not in (-1.0, 1.0):
        raise ValueError("target must be -1 or +1")
    if s not in (SchemeId.EE, SchemeId.IM):
        raise UnsupportedSchemeError(f"no backward construction for {s.value}")
    # By odd symmetry it is enough to construct target = -1 (u0 > 0).
    if target == 1.0:
        return -adversarial_u0(s, p, c, -1.0)
    r = c.h / p.eps2

    def fwd(v: float) -> float:
        return step(s, v, p, c).u

    if s is SchemeId.EE:
        # Backward residual: one EE step from v lands on -1 iff phi(v) = 0.
        def phi(v: float) -> float:
            return v - r * (v**3 - v) + 1.0
    else:
        # IM residual at u = -1 with previous state v, midpoint m = (v-1)/2.
        def phi(v: float) -> float:
            m = 0.5 * (v - 1.0)
            return (-1.0 - v) + r * (m**3 - m)

    lo = 0.0 if s is SchemeId.EE else 1.0
    flo = phi(lo)
    hi = max(2.0, 2.0 * lo)
    while (phi(hi) < 0.0) == (flo < 0.0):
        hi *= 2.0
        if hi > 1e8:
            raise NoRootError(
                f"no backward root for {s.value} with h = {c.h:g} within v <= 1e8"
            )
    u0 = _bisect(phi, lo, hi)
    u0 = _ulp_polish(fwd, u0, -1.0)
    if abs(phi(u0)) >= 1e-12 * max(1.0, abs(u0)):
        raise NoRootError(f"backward residual {phi(u0):g} too large at u0 = {u0!r}")
    return u0


@dataclass(frozen=True)
class OrderSample:
    h: float
    error: float
    observed_order: float | None


def order_estimate(
    s: SchemeId,
    u0: float,
    p: ModelParams,
    T: float,
    h0: float,
    levels: int,
    force_unsafe: bool = False,
) -> list[OrderSample]:
    """Errors against the closed-form solution under successive halving of h.

    observed_order_k = log2(error_{k-1} / error_k); the first level has none.
    """
    if levels < 1:
        raise ValueError("levels must be >= 1")
    exact = exact_solution(u0, p, T)
    samples: list[OrderSample] = []
    prev_err: float | None = None
    for k in range(levels):
        h = h0 / 2.0**k
        n_steps = round(T / h)
        if not math.isclose(n_steps * h, T, rel_tol=1e-9):
            raise ValueError(f"T = {T} is not a multiple of h = {h}")
        c = StepConfig(h, force_unsafe=force_unsafe)
        u = u0
        for _ in range(n_steps):
            u = step(s, u, p, c).u
        err = abs(u - exact)
        if prev_err is None or err == 0.0 or prev_err == 0.0:
            order = None
        else:
            order = math.log2(prev_err / err)
        samples.append(OrderSample(h, err, order))
        prev_err = err
    return samples


@dataclass(frozen=True)
class AxisSpec:
    lo: float
    hi: float
    count: int
    spacing: str = "linear"  # linear | log

    def __post_init__(self):
        if self.count < 2:
            raise ValueError("axis count must be >= 2")
        if not (self.lo < self.hi):
            raise ValueError("axis must be strictly increasing")
        if self.spacing == "log" and self.lo <= 0.0:
            raise ValueError("log spacing needs a positive lower bound")
        if self.spacing not in ("linear", "log"):
            raise ValueError(f"unknown spacing {self.spacing!r}")

    def values(self) -> list[float]:
        if self.spacing == "log":
            return [float(x) for x in np.geomspace(self.lo, self.hi, self.count)]
        return [float(x) for x in np.linspace(self.lo, self.hi, self.count)]


@dataclass(frozen=True)
class SweepCell:
    outcome: Outcome
    steps: int


@dataclass
class SweepGrid:
    scheme: SchemeId
    params: ModelParams
    u0_values: list[float]
    h_values: list[float]
    cells: list[list[SweepCell]]  # indexed [i_u0][j_h]


def _sweep_cell(
    s: SchemeId,
    u0: float,
    h: float,
    p: ModelParams,
    max_steps: int,
    force_unsafe: bool,
) -> SweepCell:
    try:
        tr = simulate(s, u0, p, StepConfig(h, force_unsafe), max_steps)
    except (SolverRefusedError, NoBracketError):
        return SweepCell(Outcome(OutcomeKind.SOLVER_REFUSED), 0)
    return SweepCell(classify(tr), len(tr.states) - 1)


def sweep(
    s: SchemeId,
    u0_axis: AxisSpec,
    h_axis: AxisSpec,
    p: ModelParams,
    max_steps: int = 100_000,
    force_unsafe: bool = False,
) -> SweepGrid:
    """Classify every (u0, h) cell.  Deterministic regardless of worker count;
    PHASESTEP_THREADS > 1 enables a thread pool, results merge by index."""
    u0s = u0_axis.values()
    hs = h_axis.values()
    tasks = [(i, j, u0, h) for i, u0 in enumerate(u0s) for j, h in enumerate(hs)]
    cells = [[None] * len(hs) for _ in u0s]
    workers = int(os.environ.get("PHASESTEP_THREADS", "1") or "1")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = pool.map(
                lambda t: _sweep_cell(s, t[2], t[3], p, max_steps, force_unsafe),
                tasks,
            )
            for (i, j, _, _), cell in zip(tasks, results):
                cells[i][j] = cell
    else:
        for i, j, u0, h in tasks:
            cells[i][j] = _sweep_cell(s, u0, h, p, max_steps, force_unsafe)
    return SweepGrid(s, p, u0s, hs, cells)
