"""Certified root finding for the cubic residuals of the implicit schemes.

Every implicit step reduces to a cubic r(x) = a3 x^3 + a2 x^2 + a1 x + a0
with a3 > 0.  Inside a scheme's solvability bound the residual is strictly
monotone, so a sign-change bracket plus safeguarded Newton (Newton iterate
clipped to the bracket, bisection fallback) converges with certainty.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

BRACKET_LIMIT = 1e8
MAX_ITERATIONS = 200
RESIDUAL_RTOL = 1e-12


class NoBracketError(RuntimeError):
    """No sign change found while expanding the search interval."""


@dataclass(frozen=True)
class CubicResidual:
    """r(x) = a3 x^3 + a2 x^2 + a1 x + a0.

    The quadratic coefficient is zero for every scheme except the
    modified-CN family, whose expanded residual carries a term
    proportional to the previous state.
    """

    a3: float
    a1: float
    a0: float
    a2: float = 0.0

    def value(self, x: float) -> float:
        return ((self.a3 * x + self.a2) * x + self.a1) * x + self.a0

    def derivative(self, x: float) -> float:
        return (3.0 * self.a3 * x + 2.0 * self.a2) * x + self.a1

    def real_roots(self) -> list[float]:
        """All distinct real roots, Newton-polished, ascending."""
        raw = np.roots([self.a3, self.a2, self.a1, self.a0])
        roots: list[float] = []
        for z in raw:
            if abs(z.imag) > 1e-8 * (1.0 + abs(z)):
                continue
            x = float(z.real)
            for _ in range(6):
                d = self.derivative(x)
                if d == 0.0:
                    break
                x -= self.value(x) / d
            if not any(abs(x - r) <= 1e-9 * (1.0 + abs(x)) for r in roots):
                roots.append(x)
        return sorted(roots)


def _expand_bracket(r: CubicResidual, hint: float) -> tuple[float, float, float, float]:
    half = max(1.0, abs(hint))
    while True:
        lo, hi = hint - half, hint + half
        flo, fhi = r.value(lo), r.value(hi)
        if flo == 0.0:
            return lo, lo, 0.0, 0.0
        if fhi == 0.0:
            return hi, hi, 0.0, 0.0
        if (flo < 0.0) != (fhi < 0.0):
            return lo, hi, flo, fhi
        if abs(lo) > BRACKET_LIMIT and abs(hi) > BRACKET_LIMIT:
            raise NoBracketError(
                f"no sign change around {hint} within |x| <= {BRACKET_LIMIT:g}"
            )
        half *= 2.0


def solve_monotone_cubic(
    r: CubicResidual, bracket_hint: float, scale: float = 1.0
) -> float:
    """Root of a residual certified to have exactly one real root.

    The bracket is grown by doubling around ``bracket_hint`` until the
    residual changes sign; the returned x satisfies
    |r(x)| < 1e-12 * scale unless double precision bottoms out first.
    """
    tol = RESIDUAL_RTOL * scale
    lo, hi, flo, fhi = _expand_bracket(r, bracket_hint)
    if lo == hi:
        return lo
    x = min(max(bracket_hint, lo), hi)
    for _ in range(MAX_ITERATIONS):
        fx = r.value(x)
        if abs(fx) < tol:
            return x
        if (fx < 0.0) == (flo < 0.0):
            lo, flo = x, fx
        else:
            hi, fhi = x, fx
        d = r.derivative(x)
        nxt = x - fx / d if d != 0.0 else None
        if nxt is None or not (min(lo, hi) < nxt < max(lo, hi)):
            nxt = 0.5 * (lo + hi)
        if nxt == x:
            nxt = 0.5 * (lo + hi)
            if nxt == x:
                return x
        x = nxt
    return x


def solve_nearest_root(r: CubicResidual, reference: float) -> tuple[float, bool]:
    """Force-mode solve: the real root nearest ``reference``.

    Ties break toward smaller magnitude.  The boolean flags whether more
    than one distinct real root exists (the caller is outside the regime
    where uniqueness is certified).
    """
    roots = r.real_roots()
    if not roots:
        raise NoBracketError("cubic reported no real roots (numerical degeneracy)")
    best = min(roots, key=lambda x: (abs(x - reference), abs(x)))
    return best, len(roots) > 1
