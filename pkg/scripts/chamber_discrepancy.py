"""Closed-form versus quadrature second derivatives, per chamber.

    python3 scripts/chamber_discrepancy.py [--per-chamber 200] [--seed 0]
"""

import argparse

import numpy as np

from amoebas.amoeba import CHAMBERS, sample_chamber_points
from amoebas.ronkin import closed_form_report


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--per-chamber", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--box", type=float, default=3.0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    pts = {s: sample_chamber_points(s, args.per_chamber, rng, -args.box, args.box) for s in CHAMBERS}
    table = closed_form_report(pts)
    print(f"{'chamber':<10} {'d2/dx2':>10} {'d2/dxdy':>10}")
    for s, (exx, exy) in table.items():
        print(f"{'(' + ','.join(s) + ')':<10} {exx:10.2e} {exy:10.2e}")


if __name__ == "__main__":
    main()
