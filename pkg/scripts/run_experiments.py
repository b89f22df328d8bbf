#!/usr/bin/env python3
"""Run the full experiment battery into a results directory.

Produces the trajectory reproduction matrices (test1, test2), a
threshold table for each initial value used there, and an explicit-Euler
(u0, h) sweep whose failure boundary traces h*(u0).

Usage: python3 scripts/run_experiments.py [results_dir]
"""

import sys
from pathlib import Path

from phasestep.cli import main

out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("results")
out.mkdir(parents=True, exist_ok=True)

for test_id in ("test1", "test2"):
    main(["reproduce", test_id, "--out", str(out / test_id)])

for u0 in ("0.5", "0.7", "3"):
    main([
        "threshold", "--scheme", "all", "--u0", u0, "--eps", "0.1",
        "--out", str(out / f"thresholds_u0_{u0.replace('.', 'p')}.json"),
    ])

main([
    "sweep", "--scheme", "ee", "--eps", "0.1",
    "--u0-range", "1.1:4:30", "--h-range", "1e-4:1e-2:40:log",
    "--out", str(out / "sweep_ee.csv"),
])

print(f"all outputs in {out}/")
