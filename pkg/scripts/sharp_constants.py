"""Best constants C in sum f(x_k) <= n/3 - C for several constraint sets."""

import argparse

from ineqforge.errors import InfeasibleSpecError
from ineqforge.optimize import ConstraintSpec, best_constant


def specs(max_n):
    for n in range(2, max_n + 1):
        yield f"n={n} product=1", ConstraintSpec(n)
        yield f"n={n} unconstrained", ConstraintSpec(n, product=False)
        yield f"n={n} S1=1", ConstraintSpec(n, product=False, s1=1.0)
        yield f"n={n} S1=n", ConstraintSpec(n, product=False, s1=float(n))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--starts", type=int, default=200)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--max-n", type=int, default=5)
    args = ap.parse_args()

    print(f"{'constraints':24}{'C':>16}  interior  boundary point")
    for label, spec in specs(args.max_n):
        try:
            bc = best_constant(spec, args.starts, args.seed)
        except InfeasibleSpecError as e:
            print(f"{label:24}{'infeasible':>16}  {e}")
            continue
        where = "" if bc.boundary_point is None else ", ".join(f"{v:.4f}" for v in bc.boundary_point)
        print(f"{label:24}{bc.constant:16.10f}  {str(bc.attained_in_interior):8}  {where}")


if __name__ == "__main__":
    main()
