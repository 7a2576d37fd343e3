"""Write a density grid for plotting and print summary statistics.

    python3 scripts/density_slices.py --out grid.csv [--half-width 3] [--resolution 61]
"""

import argparse
import json

from amoebas.measure import density_floor_scan, density_grid


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="density_grid.csv")
    ap.add_argument("--half-width", type=float, default=3.0)
    ap.add_argument("--resolution", type=int, default=41)
    args = ap.parse_args()
    box = [(-args.half_width, args.half_width)] * 3
    grid = density_grid(box, args.resolution)
    with open(args.out, "w") as fh:
        fh.write(grid.to_json() if args.out.endswith(".json") else grid.to_csv())
    stats = density_floor_scan(box, args.resolution)
    print(json.dumps(stats, indent=2))
    print(f"wrote {len(grid.density)} points to {args.out}")


if __name__ == "__main__":
    main()
