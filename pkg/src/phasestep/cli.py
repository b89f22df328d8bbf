"""Command-line front end.

Subcommands: simulate, threshold, adversarial, order, sweep, reproduce.
Every flag has a config-file equivalent (flat key=value, keys match the
long flag names); values given on the command line win.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .analysis import (
    AxisSpec,
    NoRootError,
    OutcomeKind,
    UnsupportedSchemeError,
    adversarial_u0,
    classify,
    order_estimate,
    simulate,
    sweep,
)
from .io import dump_json, fmt, write_sweep_csv, write_trajectory_csv
from .model import ModelParams
from .schemes import SchemeId, SolverRefusedError, StepConfig, solvability_bound
from .thresholds import critical_step

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_REFUSED = 2
EXIT_DIVERGED = 3


def _parse_range(text: str) -> AxisSpec:
    parts = text.split(":")
    if len(parts) not in (3, 4):
        raise argparse.ArgumentTypeError(
            f"range must be MIN:MAX:N or MIN:MAX:N:log, got {text!r}"
        )
    spacing = "linear"
    if len(parts) == 4:
        if parts[3] not in ("linear", "log"):
            raise argparse.ArgumentTypeError(f"bad spacing {parts[3]!r}")
        spacing = parts[3]
    return AxisSpec(float(parts[0]), float(parts[1]), int(parts[2]), spacing)


def _parse_schemes(text: str) -> list[SchemeId]:
    if text.strip().lower() == "all":
        return list(SchemeId)
    return [SchemeId.from_name(tok) for tok in text.split(",") if tok.strip()]


def _load_config(path: str) -> dict[str, str]:
    cfg: dict[str, str] = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"bad config line (expected key=value): {raw!r}")
        key, _, value = line.partition("=")
        cfg[key.strip().replace("-", "_")] = value.strip()
    return cfg


_BOOL_KEYS = {"force_unsafe"}


def _merge_config(args: argparse.Namespace) -> None:
    if not getattr(args, "config", None):
        return
    cfg = _load_config(args.config)
    for key, value in cfg.items():
        if not hasattr(args, key):
            continue
        if getattr(args, key) is not None:
            continue  # command line wins
        if key in _BOOL_KEYS:
            setattr(args, key, value.lower() in ("1", "true", "yes", "on"))
        else:
            setattr(args, key, value)
    return


def _require(args: argparse.Namespace, *names: str) -> None:
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise SystemExit(f"error: missing required option(s): {flags}")


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="flat key=value config file")
    sub.add_argument("--scheme", help="scheme name, comma list, or 'all'")
    sub.add_argument("--eps", help="interfacial-width parameter")
    sub.add_argument("--u0", help="initial value")
    sub.add_argument("--h", help="time step")
    sub.add_argument("--steps", help="maximum number of steps")
    sub.add_argument("--out", help="output file (or directory for reproduce)")
    sub.add_argument("--format", choices=["csv", "json", "table"], default=None)
    sub.add_argument(
        "--force-unsafe",
        dest="force_unsafe",
        action="store_const",
        const=True,
        default=None,
        help="permit steps beyond the solvability bound",
    )
    sub.add_argument("--u0-range", dest="u0_range", help="MIN:MAX:N[:log]")
    sub.add_argument("--h-range", dest="h_range", help="MIN:MAX:N[:log]")
    sub.add_argument("--T", dest="T", help="final time for order estimation")
    sub.add_argument("--levels", help="number of step halvings")
    sub.add_argument("--target", help="adversarial target equilibrium (-1 or 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phasestep",
        description="Fixed-step time integration of the scalar Allen-Cahn ODE: "
        "critical step sizes, asymptotic classification, energy audits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, doc in [
        ("simulate", "run one trajectory and classify its outcome"),
        ("threshold", "report critical step sizes h*"),
        ("adversarial", "construct a wrong-equilibrium initial value"),
        ("order", "estimate convergence order against the exact solution"),
        ("sweep", "classify a (u0, h) grid"),
        ("reproduce", "rerun the reference experiment matrices"),
    ]:
        p = sub.add_parser(name, help=doc)
        _add_common(p)
        if name == "reproduce":
            p.add_argument("test_id", choices=["test1", "test2"])
    return parser


def _cmd_simulate(args) -> int:
    _require(args, "scheme", "u0", "eps", "h")
    scheme = SchemeId.from_name(args.scheme)
    p = ModelParams(float(args.eps))
    c = StepConfig(float(args.h), bool(args.force_unsafe))
    steps = int(args.steps) if args.steps is not None else 10_000
    try:
        tr = simulate(scheme, float(args.u0), p, c, steps)
    except SolverRefusedError as exc:
        print(f"SolverRefused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    outcome = classify(tr)
    if args.out:
        write_trajectory_csv(tr, args.out)
    print(outcome.summary())
    if outcome.kind is OutcomeKind.DIVERGED:
        return EXIT_DIVERGED
    return EXIT_OK


def _cmd_threshold(args) -> int:
    _require(args, "scheme", "u0", "eps")
    p = ModelParams(float(args.eps))
    reports = [
        critical_step(s, float(args.u0), p) for s in _parse_schemes(args.scheme)
    ]
    payload = [r.to_dict() for r in reports]
    if args.out:
        dump_json(payload, args.out)
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        header = f"{'scheme':<9}{'u0':>10}{'eps':>8}{'h_star':>14}{'solvability':>14}  binding_case"
        print(header)
        for r in reports:
            print(
                f"{r.scheme.value:<9}{r.u0:>10g}{r.eps:>8g}"
                f"{r.h_star:>14.6g}{r.solvability:>14.6g}  {r.binding_case}"
            )
    return EXIT_OK


def _cmd_adversarial(args) -> int:
    _require(args, "scheme", "eps", "h")
    scheme = SchemeId.from_name(args.scheme)
    p = ModelParams(float(args.eps))
    c = StepConfig(float(args.h), bool(args.force_unsafe))
    target = float(args.target) if args.target is not None else -1.0
    try:
        u0 = adversarial_u0(scheme, p, c, target)
    except (UnsupportedSchemeError, NoRootError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    payload = {
        "scheme": scheme.value,
        "eps": p.eps,
        "h": c.h,
        "target": target,
        "u0": u0,
    }
    if args.out:
        dump_json(payload, args.out)
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(f"u0 = {fmt(u0)} (one {scheme.value} step lands on {target:g})")
    return EXIT_OK


def _cmd_order(args) -> int:
    _require(args, "scheme", "u0", "eps", "h", "T")
    scheme = SchemeId.from_name(args.scheme)
    p = ModelParams(float(args.eps))
    levels = int(args.levels) if args.levels is not None else 4
    try:
        samples = order_estimate(
            scheme,
            float(args.u0),
            p,
            float(args.T),
            float(args.h),
            levels,
            force_unsafe=bool(args.force_unsafe),
        )
    except SolverRefusedError as exc:
        print(f"SolverRefused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    lines = ["h,error,observed_order"]
    for smp in samples:
        order = "" if smp.observed_order is None else fmt(smp.observed_order)
        lines.append(f"{fmt(smp.h)},{fmt(smp.error)},{order}")
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    print(text, end="")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    _require(args, "scheme", "eps", "u0_range", "h_range", "out")
    scheme = SchemeId.from_name(args.scheme)
    p = ModelParams(float(args.eps))
    steps = int(args.steps) if args.steps is not None else 100_000
    grid = sweep(
        scheme,
        _parse_range(args.u0_range),
        _parse_range(args.h_range),
        p,
        max_steps=steps,
        force_unsafe=bool(args.force_unsafe),
    )
    write_sweep_csv(grid, args.out)
    print(f"sweep written to {args.out}")
    return EXIT_OK


# Experiment matrices: eps = 0.1 throughout.  Per (scheme, u0) the step
# sizes probed are just below h*, between h* and the solvability bound
# (for unconditionally solvable schemes: 1.84*h*, above the threshold),
# and beyond the solvability bound where that bound is finite.
_REPRODUCE = {
    "test1": ([SchemeId.EE, SchemeId.IE], [0.5, 3.0]),
    "test2": (
        [SchemeId.CN, SchemeId.MODCN, SchemeId.IM, SchemeId.CSMODCN],
        [0.7, 3.0],
    ),
}


def _reproduce_cases(scheme: SchemeId, u0: float, p: ModelParams):
    report = critical_step(scheme, u0, p)
    h_star, solv = report.h_star, report.solvability
    cases = [("safe", 0.999 * h_star)]
    if math.isinf(solv):
        cases.append(("above_hstar", 1.84 * h_star))
    elif solv > h_star:
        cases.append(("between", math.sqrt(h_star * solv)))
        cases.append(("above_solvability", 1.1 * solv))
    return cases


def _cmd_reproduce(args) -> int:
    schemes, u0s = _REPRODUCE[args.test_id]
    p = ModelParams(0.1)
    out_dir = Path(args.out) if args.out else Path(f"reproduce_{args.test_id}")
    out_dir.mkdir(parents=True, exist_ok=True)
    steps = int(args.steps) if args.steps is not None else 100_000
    manifest = []
    for scheme in schemes:
        for u0 in u0s:
            for label, h in _reproduce_cases(scheme, u0, p):
                tag = f"{args.test_id}_{scheme.value}_u0_{u0:g}_{label}".replace(
                    ".", "p"
                )
                entry = {
                    "scheme": scheme.value,
                    "u0": u0,
                    "eps": p.eps,
                    "h": h,
                    "label": label,
                }
                try:
                    tr = simulate(scheme, u0, p, StepConfig(h), steps)
                except SolverRefusedError as exc:
                    entry["error"] = str(exc)
                    entry["class"] = OutcomeKind.SOLVER_REFUSED.value
                    manifest.append(entry)
                    continue
                outcome = classify(tr)
                path = out_dir / f"{tag}.csv"
                write_trajectory_csv(tr, path)
                entry.update(
                    {
                        "file": path.name,
                        "class": outcome.kind.value,
                        "limit": outcome.limit,
                        "steps": len(tr.states) - 1,
                    }
                )
                manifest.append(entry)
    dump_json(manifest, out_dir / "manifest.json")
    print(f"wrote {len(manifest)} cases to {out_dir}")
    return EXIT_OK


_HANDLERS = {
    "simulate": _cmd_simulate,
    "threshold": _cmd_threshold,
    "adversarial": _cmd_adversarial,
    "order": _cmd_order,
    "sweep": _cmd_sweep,
    "reproduce": _cmd_reproduce,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    _merge_config(args)
    return _HANDLERS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
