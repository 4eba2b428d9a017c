"""Map the sign of the four-variable sum on a log2 grid and trace the
boundary along a few rays through (1, 1, 1, 1).

Writes the classified cells as CSV and prints class counts per slice.
"""

import argparse
import csv
import math
from pathlib import Path

from ineqforge.errors import NoSignChangeError
from ineqforge.region import (CSV_HEADER, SLICES, new_summary, scan_grid, summarize,
                              trace_boundary)

L2 = math.log(2)
RAYS = {
    "x1=x2=x3 up": (L2, L2, L2, -3 * L2),
    "x1=x2 up, x3 fixed": (L2, L2, 0, -2 * L2),
    "x1 up, x2 down": (L2, -L2, 0, 0),
    "x1=x2=x3 down": (-L2, -L2, -L2, 3 * L2),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--resolution", type=int, default=49)
    ap.add_argument("--window", type=float, nargs=2, default=(-3, 3), metavar=("LO", "HI"))
    ap.add_argument("--out", type=Path, default=Path("region_n4.csv"))
    args = ap.parse_args()

    window = tuple(args.window)
    s = new_summary(window, args.resolution)
    with args.out.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_HEADER)
        for c in scan_grid(window, args.resolution):
            w.writerow(c.csv_row())
            s.add(c)
    print(f"full grid -> {args.out}: {s.to_dict()['counts']}")
    for name in SLICES:
        if name != "full":
            s = summarize(scan_grid(window, args.resolution, name), window, args.resolution, name)
            print(f"{name} slice: {s.to_dict()['counts']}")

    print()
    for label, d in RAYS.items():
        try:
            t = trace_boundary((1, 1, 1, 1), d, s_max=4.0, samples=256)
        except NoSignChangeError:
            print(f"{label:22} no sign change for s in (0, 4]")
            continue
        pt = ", ".join(f"{v:.10f}" for v in t.point)
        print(f"{label:22} crossing at s = {t.crossing:.12f}: ({pt}), |sum| = {t.residual:.1e}")


if __name__ == "__main__":
    main()
