"""Recover the bound of every D-member at n = 3, and the D1 supremum for
n = 3..8 (which turns positive from n = 4 on)."""

import argparse

from ineqforge.optimize import ConstraintSpec, extremize
from ineqforge.scalar import D_IDS, Relation, get_member


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--starts", type=int, default=200)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--max-n", type=int, default=8)
    args = ap.parse_args()

    print(f"{'member':8}{'mode':6}{'bound':>8}{'extremum':>22}  argpoint")
    for mid in D_IDS:
        m = get_member(mid)
        mode = "SUP" if m.relation is Relation.LE else "INF"
        rep = extremize(m, ConstraintSpec(3), mode, args.starts, args.seed)
        pt = ", ".join(f"{v:.6f}" for v in rep.argpoint)
        print(f"{mid:8}{mode:6}{str(m.bound):>8}{rep.extremum:22.15g}  ({pt})")

    print()
    print(f"{'n':>3}{'sup D1':>22}  argpoint")
    for n in range(3, args.max_n + 1):
        rep = extremize("D1", ConstraintSpec(n), "SUP", args.starts, args.seed)
        pt = ", ".join(f"{v:.4f}" for v in sorted(rep.argpoint))
        print(f"{n:3d}{rep.extremum:22.15g}  ({pt})")


if __name__ == "__main__":
    main()
