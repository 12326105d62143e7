#!/usr/bin/env python3
"""Monte Carlo error scaling experiment: estimate error vs trial count.

For each trial budget the script runs several seeds and reports the worst
absolute deviation from the exact value, which should shrink like
1/sqrt(trials).

Usage: python scripts/mc_accuracy.py [--spec "symmetric 3"] [--seeds 10]
"""

import argparse
import sys

from chebotarev.exact import build_sieves, chebotarev_exact
from chebotarev.groupspec import parse_group
from chebotarev.mc import mc_estimate


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--spec", default="symmetric 3")
    parser.add_argument("--seeds", type=int, default=10)
    parser.add_argument(
        "--budgets",
        type=int,
        nargs="+",
        default=[1_000, 10_000, 100_000, 1_000_000],
    )
    args = parser.parse_args()

    parsed = parse_group(args.spec)
    S = build_sieves(parsed.group)
    exact = float(chebotarev_exact(S).exact)
    print(f"group {parsed.label}: exact = {exact:.10f}")
    print(f"{'trials':>9} {'worst |err|':>12} {'mean half-ci':>13}")
    for trials in args.budgets:
        worst = 0.0
        half_sum = 0.0
        for seed in range(args.seeds):
            rep = mc_estimate(S, trials, seed)
            worst = max(worst, abs(rep.mean - exact))
            half_sum += (rep.ci95[1] - rep.ci95[0]) / 2
        print(f"{trials:9d} {worst:12.6f} {half_sum / args.seeds:13.6f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
