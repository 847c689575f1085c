"""Error and observed order at dx = 2^-i for both limiters on a network file.

    python3 scripts/convergence_table.py [configs/three_spoke.yaml] [--levels 1..9]
"""
import argparse
from pathlib import Path

from telegrapher.io import load_network, parse_levels
from telegrapher.runs import convergence_study
from telegrapher.solver import Limiter

ROOT = Path(__file__).resolve().parent.parent


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("config", nargs="?", default=ROOT / "configs" / "three_spoke.yaml")
    ap.add_argument("--levels", default="1..9")
    ap.add_argument("--cfl", type=float, default=0.8)
    args = ap.parse_args()
    net = load_network(args.config)
    levels = parse_levels(args.levels)
    studies = {lim: convergence_study(net, levels, lim, args.cfl) for lim in (Limiter.NONE, Limiter.MINMOD)}
    print(f"{'i':>3} {'dx':>10} | {'err (none)':>12} {'order':>6} | {'err (minmod)':>12} {'order':>6}")
    for a, b in zip(studies[Limiter.NONE].levels, studies[Limiter.MINMOD].levels):
        oa = "" if a.order is None else f"{a.order:.3f}"
        ob = "" if b.order is None else f"{b.order:.3f}"
        print(f"{a.level:3d} {a.dx:10.3e} | {a.error:12.5e} {oa:>6} | {b.error:12.5e} {ob:>6}")


if __name__ == "__main__":
    main()
