"""Total mass of the Ronkin measure of 1+z+w+t versus box size and cell size.

    python3 scripts/mass_convergence.py [--sizes 4 6 8] [--cells 0.5 0.25]
"""

import argparse
import time

from amoebas.measure import MassOptions, total_mass


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=float, nargs="+", default=[4, 6, 8])
    ap.add_argument("--cells", type=float, nargs="+", default=[0.5, 0.25])
    ap.add_argument("--vars", type=int, default=3, choices=(2, 3))
    args = ap.parse_args()

    print(f"{'L':>5} {'cell':>6} {'mass':>12} {'rel err':>10} {'coverage':>10} {'cells':>8} {'sec':>6}")
    for L in args.sizes:
        for h in args.cells:
            t0 = time.perf_counter()
            r = total_mass([(-L, L)] * args.vars, MassOptions(cell=h, min_coverage=0.0))
            dt = time.perf_counter() - t0
            print(f"{L:5.1f} {h:6.3f} {r.mass:12.8f} {r.relative_error:10.2e} "
                  f"{r.coverage_estimate:10.6f} {r.cells:8d} {dt:6.1f}", flush=True)


if __name__ == "__main__":
    main()
