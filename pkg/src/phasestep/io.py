"""CSV/JSON emission.  Floats are written with 17 significant digits so
files round-trip doubles bit-exactly and golden-file comparisons stay stable."""

from __future__ import annotations

import json
import math
from pathlib import Path

from .analysis import SweepGrid, Trajectory


def fmt(x: float | None) -> str:
    if x is None:
        return ""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def trajectory_csv(tr: Trajectory) -> str:
    lines = ["n,t,u,energy,energy_modified"]
    for n, (state, rec) in enumerate(zip(tr.states, tr.energies)):
        lines.append(
            f"{n},{fmt(state.t)},{fmt(state.u)},{fmt(rec.original)},{fmt(rec.modified)}"
        )
    return "\n".join(lines) + "\n"


def write_trajectory_csv(tr: Trajectory, path: str | Path) -> None:
    Path(path).write_text(trajectory_csv(tr))


def sweep_csv(grid: SweepGrid) -> str:
    lines = ["u0,h,class,limit,steps"]
    for i, u0 in enumerate(grid.u0_values):
        for j, h in enumerate(grid.h_values):
            cell = grid.cells[i][j]
            lines.append(
                f"{fmt(u0)},{fmt(h)},{cell.outcome.kind.value},"
                f"{fmt(cell.outcome.limit)},{cell.steps}"
            )
    return "\n".join(lines) + "\n"


def write_sweep_csv(grid: SweepGrid, path: str | Path) -> None:
    Path(path).write_text(sweep_csv(grid))


def dump_json(obj, path: str | Path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")
