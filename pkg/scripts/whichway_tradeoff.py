#!/usr/bin/env python3
"""Certainty versus detection probability for coherent-probe which-way readout.

A probe projection onto |delta> identifies the path of a |+-beta> marker with
fractional error exp(-4 beta delta), but only fires with probability about
exp(-delta^2). This script prints the tradeoff curve for a given kick and
optionally writes it to CSV.

Usage:
    python scripts/whichway_tradeoff.py --beta 0.5 --out tradeoff.csv
"""

import argparse

from atomslits import closedform


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--beta", type=float, default=0.5, help="marker kick, > 0")
    ap.add_argument("--out", default=None, help="optional CSV path")
    args = ap.parse_args()

    curve = closedform.tradeoff_curve(args.beta)
    print(f"kick beta = {args.beta}")
    print(f"{'fractional_error':>18} {'required_delta':>16} {'detect_prob':>14}")
    for point in curve:
        print(
            f"{point.fractional_error:18.3e} {point.delta:16.6f} {point.detect_prob:14.6e}"
        )
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write("fractional_error,required_delta,detect_prob\n")
            for point in curve:
                fh.write(
                    f"{point.fractional_error!r},{point.delta!r},{point.detect_prob!r}\n"
                )
        print(f"\nwrote {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
