#!/usr/bin/env python3
"""Tabulate G and its gamma-regularized companion over x at couplings sitting
on constraint-polynomial roots, showing the removable points where the pole at
x = N + eps disappears.

Usage:
    python scripts/gfunction_profiles.py --out profiles/
"""

import argparse
import math
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from aqrm.series import (  # noqa: E402
    ModelParams,
    PoleEncountered,
    g_function,
    regularized_g,
)

# coupling, splitting, bias, removed pole: the three quasi-exact showcases
CASES = [
    ("bias_3_10", math.sqrt(27 / 20) / 2, 0.5, 0.3, 1.3),
    ("bias_1_2", 0.5, 1.0, 0.5, 1.5),
    ("bias_1", 1.0122932802546105, 1.5, 1.0, 3.0),
]


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="gfunction_profiles")
    ap.add_argument("--x-min", type=float, default=-1.0)
    ap.add_argument("--x-max", type=float, default=4.0)
    ap.add_argument("--step", type=float, default=0.002)
    args = ap.parse_args()

    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    for name, g, delta, eps, removed in CASES:
        params = ModelParams(g, delta, eps)
        lines = ["x,G,calG"]
        x = args.x_min
        while x <= args.x_max + args.step / 2:
            try:
                gv = format(g_function(x, params), ".17g")
            except PoleEncountered:
                gv = "nan"
            lines.append(f"{x:.6f},{gv},{format(regularized_g(x, params), '.17g')}")
            x += args.step
        path = outdir / f"{name}.csv"
        path.write_text("\n".join(lines) + "\n")
        print(f"{path}: removable point at x = {removed}, "
              f"calG there = {regularized_g(removed, params):.6g}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
