"""Command-line front end.

Every run is fully described by its RunConfig, which is echoed into the
report, so rerunning a config reproduces the output byte for byte whatever
INEQFORGE_THREADS is set to.

Exit codes:
    0   success, no violation
    2   a mathematical violation was found (witness in the report)
    3   verify: no violation, but the extremum misses the stated bound
    64  usage error (bad flags, unknown member, wrong regime)
    65  infeasible constraints or input data
    70  internal failure (no start converged, golden mismatch)
    74  I/O error
"""

from __future__ import annotations

import argparse
import csv
import io
import re
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import jsonio
from .applications import (CubicSpec, TriangleData, cubic_records, random_triangle,
                           triangle_records, triangle_triples, verdict, vieta_roots)
from .errors import (DegenerateTriangleError, DegeneratePolynomialError, DomainError,
                     GridTooLargeError, IneqForgeError, InfeasibleSpecError,
                     NonConvergenceError, NotSymmetricError, RegimeError,
                     UnsupportedMemberError)
from .optimize import (DEFAULT_SEED, DEFAULT_STARTS, DEFAULT_TOL, ConstraintSpec,
                       best_constant, eval_sum_array, extremize, sample_feasible)
from .reduction import K1, k1_decompose, reduce_member
from .region import (CSV_HEADER, DEFAULT_RESOLUTION, DEFAULT_WINDOW, new_summary,
                     scan_grid)
from .roots import isolate_positive_roots, isolate_real_roots
from .scalar import (D_IDS, Relation, eval_sum, eval_sum_float, get_member, power_member,
                     rational)

EXIT_OK = 0
EXIT_VIOLATION = 2
EXIT_NOT_RECOVERED = 3
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_SOFTWARE = 70
EXIT_IO = 74

DEFAULT_SAMPLES = 100_000
VIOLATION_TOL = 1e-12     # sampled values above bound + this count as violations
BOUND_TOL = 1e-6          # optimizer extremum vs stated bound


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let values such as -17/4 or -3,3 through as arguments, not flags
        self._negative_number_matcher = re.compile(r"^-\d[\d.,/eE+-]*$|^-\.\d")

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    seed: int = DEFAULT_SEED
    starts: int = DEFAULT_STARTS
    tol: float = DEFAULT_TOL
    format: str = "json"
    member: str | None = None
    n: int | None = None
    mode: str | None = None
    product: bool | None = None
    s1: float | None = None
    s2: float | None = None
    alpha: float | None = None
    samples: int | None = None
    window: tuple | None = None
    resolution: int | None = None
    slice: str | None = None
    check_k2: bool | None = None
    at: tuple | None = None
    sides: tuple | None = None
    random: int | None = None
    a: str | None = None
    b: str | None = None
    coeffs: tuple | None = None
    width: str | None = None
    real: bool | None = None
    out: str | None = field(default=None, compare=False)

    def to_dict(self):
        d = asdict(self)
        d.pop("out")
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in d.items() if v is not None}


# ---------------------------------------------------------------------------
# argument parsing


def _floats(text):
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _rationals(text):
    try:
        return tuple(str(rational(v)) for v in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}")


def _rational_str(text):
    try:
        return str(rational(text))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    g = common.add_argument_group("common options")
    g.add_argument("--seed", type=int, default=DEFAULT_SEED)
    g.add_argument("--starts", type=int, default=DEFAULT_STARTS)
    g.add_argument("--tol", type=float, default=DEFAULT_TOL)
    g.add_argument("--out", help="output file (default: standard output)")
    g.add_argument("--format", choices=("json", "csv", "jsonl"), default=None)

    def constraints(p, default_product=True):
        p.add_argument("--n", type=int, default=3)
        p.add_argument("--product", type=float, default=None,
                       help="product target; only 1 is supported")
        p.add_argument("--s1", type=float)
        p.add_argument("--s2", type=float)
        if not default_product:
            p.add_argument("--unconstrained", action="store_true")

    parser = _Parser(prog="ineqforge", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="subcommand", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("verify", parents=[common], help="sample and optimize against the stated bound")
    p.add_argument("--member", default="D1")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--alpha", type=float)

    p = sub.add_parser("maximize", parents=[common], help="multistart extremization")
    p.add_argument("--member", default="D1")
    p.add_argument("--mode", choices=("SUP", "INF"), default=None)
    p.add_argument("--alpha", type=float)
    constraints(p)

    p = sub.add_parser("reduce", parents=[common], help="exact symmetric reduction")
    p.add_argument("--member", default="D1")
    p.add_argument("--check-k2", action="store_true")
    p.add_argument("--at", type=_rationals, help="evaluate the cleared form at x,y,z")

    p = sub.add_parser("region", parents=[common], help="classify a log-spaced grid for n = 4")
    p.add_argument("--window", type=_rationals, default=None,
                   help="log2 bounds lo,hi of each grid parameter (default -3,3)")
    p.add_argument("--resolution", type=int, default=DEFAULT_RESOLUTION)
    p.add_argument("--slice", default="full")

    p = sub.add_parser("constant", parents=[common], help="sharp constant of the generalized inequality")
    constraints(p, default_product=False)

    p = sub.add_parser("triangle", parents=[common], help="product-one triples from triangles")
    p.add_argument("--sides", type=_floats, action="append")
    p.add_argument("--random", type=int)

    p = sub.add_parser("roots", parents=[common], help="positive roots of a Vieta cubic or any polynomial")
    p.add_argument("--a", type=_rational_str)
    p.add_argument("--b", type=_rational_str)
    p.add_argument("--coeffs", type=_rationals)
    p.add_argument("--width", type=_rational_str, default="1/1000000000000")
    p.add_argument("--real", action="store_true", help="isolate all real roots")
    return parser


def _spec_from(args) -> ConstraintSpec:
    if args.product is not None and args.product != 1:
        raise UsageError("only the product target 1 is supported")
    has_targets = args.s1 is not None or args.s2 is not None
    if getattr(args, "unconstrained", False):
        if has_targets or args.product is not None:
            raise UsageError("--unconstrained excludes other constraints")
        return ConstraintSpec(args.n, product=False)
    if has_targets and args.product is not None:
        raise UsageError("--product cannot be combined with --s1/--s2")
    return ConstraintSpec(args.n, product=not has_targets, s1=args.s1, s2=args.s2)


def config_from_args(args) -> RunConfig:
    cmd = args.subcommand
    base = dict(subcommand=cmd, seed=args.seed, starts=args.starts, tol=args.tol, out=args.out)
    if args.starts < 1:
        raise UsageError("--starts must be >= 1")
    if not args.tol > 0:
        raise UsageError("--tol must be positive")
    fmt = args.format
    if cmd == "verify":
        return RunConfig(**base, format=fmt or "json", member=args.member, n=args.n,
                         samples=args.samples, alpha=args.alpha)
    if cmd in ("maximize", "constant"):
        spec = _spec_from(args)
        return RunConfig(**base, format=fmt or "json",
                         member=getattr(args, "member", None), n=spec.n,
                         mode=getattr(args, "mode", None), alpha=getattr(args, "alpha", None),
                         product=spec.product, s1=spec.s1, s2=spec.s2)
    if cmd == "reduce":
        return RunConfig(**base, format=fmt or "json", member=args.member,
                         check_k2=args.check_k2, at=args.at)
    if cmd == "region":
        window = args.window or tuple(str(v) for v in DEFAULT_WINDOW)
        if len(window) != 2:
            raise UsageError("--window needs two values lo,hi")
        return RunConfig(**base, format=fmt or "csv", window=window,
                         resolution=args.resolution, slice=args.slice)
    if cmd == "triangle":
        sides = tuple(tuple(s) for s in args.sides) if args.sides else None
        if sides is None and args.random is None:
            raise UsageError("give --sides a,b,c or --random N")
        return RunConfig(**base, format=fmt or "json", sides=sides, random=args.random)
    if cmd == "roots":
        if args.coeffs is None and (args.a is None or args.b is None):
            raise UsageError("give --a and --b, or --coeffs")
        if args.coeffs is not None and (args.a is not None or args.b is not None):
            raise UsageError("--coeffs excludes --a/--b")
        return RunConfig(**base, format=fmt or "json", a=args.a, b=args.b,
                         coeffs=args.coeffs, width=args.width, real=args.real or None)
    raise UsageError(f"unknown subcommand {cmd}")


# ---------------------------------------------------------------------------
# commands; each returns (exit code, primary output text, one-line summary)


def _doc(cfg: RunConfig, body: dict) -> str:
    return jsonio.dumps({"config": cfg.to_dict(), **body}, indent=2) + "\n"


def _resolve_member(cfg: RunConfig):
    m = get_member(cfg.member)
    if cfg.alpha is not None:
        m = power_member(m, cfg.alpha)
    return m


def cmd_verify(cfg: RunConfig):
    m = _resolve_member(cfg)
    if cfg.n != 3 and m.id != "D1":
        raise UsageError(f"{m.id} has a stated bound for n = 3 only")
    if cfg.samples < 0:
        raise UsageError("--samples must be >= 0")
    spec = ConstraintSpec(cfg.n)
    sign = m.slack_sign()         # +1: sum <= bound
    bound = float(m.bound)
    sampled = {"samples": cfg.samples}
    witness = None
    if cfg.samples:
        pts = sample_feasible(spec, cfg.samples, cfg.seed)
        vals = eval_sum_array(m, pts)
        k = int(np.argmax(sign * vals))
        sampled.update(worst_value=float(vals[k]), worst_point=[float(v) for v in pts[k]])
        if sign * (vals[k] - bound) > VIOLATION_TOL:
            witness = {"source": "sampling", "point": sampled["worst_point"], "value": float(vals[k])}
    mode = "SUP" if sign > 0 else "INF"
    rep = extremize(m, spec, mode, cfg.starts, cfg.seed, cfg.tol)
    if sign * (rep.extremum - bound) > VIOLATION_TOL:
        if witness is None or sign * (rep.extremum - witness["value"]) > 0:
            witness = {"source": "optimizer", "point": list(rep.argpoint), "value": rep.extremum}
    if witness is not None:
        status, code = "VIOLATED", EXIT_VIOLATION
    elif abs(rep.extremum - bound) <= BOUND_TOL:
        status, code = "HOLDS", EXIT_OK
    else:
        status, code = "BOUND_NOT_RECOVERED", EXIT_NOT_RECOVERED
    body = {
        "member": m.id,
        "n": cfg.n,
        "relation": m.relation.value,
        "bound": bound,
        "status": status,
        "sampling": sampled,
        "optimizer": rep.to_dict(),
        "witness": witness,
    }
    line = f"verify {m.id} n={cfg.n}: {status}, extremum {rep.extremum:.12g} vs bound {bound:g}"
    if witness:
        line += f", witness value {witness['value']:.12g}"
    return code, _doc(cfg, body), line


def cmd_maximize(cfg: RunConfig):
    m = _resolve_member(cfg)
    spec = ConstraintSpec(cfg.n, cfg.product, cfg.s1, cfg.s2)
    mode = cfg.mode or ("SUP" if m.relation is Relation.LE else "INF")
    rep = extremize(m, spec, mode, cfg.starts, cfg.seed, cfg.tol)
    text = jsonio.dumps(rep.to_dict(), indent=2) + "\n"
    line = f"maximize {m.id} n={cfg.n} {mode}: {rep.extremum:.12g} ({rep.converged_starts}/{rep.starts} starts converged)"
    return EXIT_OK, text, line


def cmd_reduce(cfg: RunConfig):
    m = get_member(cfg.member)
    tr = reduce_member(m)
    body = {"member": m.id, "relation": m.relation.value, "bound": str(m.bound), **tr.lines()}
    code = EXIT_OK
    if m.id == "D1":
        golden = tr.slack == K1
        body["golden_k1"] = golden
        if not golden:
            code = EXIT_SOFTWARE
    if cfg.check_k2:
        cert = k1_decompose()
        body["k2"] = {
            "ok": cert.ok,
            "square_part": str(cert.square_part),
            "remainder": str(cert.remainder),
            "expanded_remainder": str(cert.expanded_remainder),
            "residual": str(cert.sum_residual),
        }
        if not cert.ok:
            code = EXIT_SOFTWARE
    if cfg.at is not None:
        pt = tuple(Fraction(v) for v in cfg.at)
        if len(pt) != 3:
            raise UsageError("--at needs three coordinates")
        body["at"] = {
            "point": [str(v) for v in pt],
            "cleared_value": str(tr.cleared.evaluate(pt)),
            "sum_minus_bound": str(eval_sum(m, pt) - m.bound),
        }
    line = f"reduce {m.id}: {tr.slack}"
    if cfg.at is not None:
        line += f"; cleared form at {','.join(cfg.at)} = {body['at']['cleared_value']}"
    if cfg.check_k2:
        line += f"; K2 {'OK' if body['k2']['ok'] else 'FAILED'}"
    return code, _doc(cfg, body), line


def cmd_region(cfg: RunConfig):
    window = tuple(Fraction(v) for v in cfg.window)
    summary = new_summary(window, cfg.resolution, cfg.slice)
    cells = scan_grid(window, cfg.resolution, cfg.slice)
    buf = io.StringIO()
    if cfg.format == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for c in cells:
            summary.add(c)
            w.writerow(c.csv_row())
    else:
        for c in cells:
            summary.add(c)
    sd = summary.to_dict()
    text = buf.getvalue() if cfg.format == "csv" else _doc(cfg, {"summary": sd})
    counts = sd["counts"]
    line = (f"region {sd['cells']} cells: " + ", ".join(f"{k} {v}" for k, v in counts.items()))
    extra = {"summary": _doc(cfg, {"summary": sd})} if cfg.format == "csv" else {}
    return EXIT_OK, text, line, extra


def cmd_constant(cfg: RunConfig):
    spec = ConstraintSpec(cfg.n, cfg.product, cfg.s1, cfg.s2)
    bc = best_constant(spec, cfg.starts, cfg.seed, cfg.tol)
    body = bc.to_dict()
    body["boundary_candidates"] = [{"point": list(p), "value": v} for p, v in bc.boundary_candidates]
    line = f"constant n={cfg.n}: C = {bc.constant:.6f}"
    return EXIT_OK, _doc(cfg, body), line


def _triangle_inputs(cfg: RunConfig):
    sides = [tuple(s) for s in cfg.sides] if cfg.sides else []
    if cfg.random:
        rng = np.random.default_rng(cfg.seed)
        for _ in range(cfg.random):
            t = random_triangle(rng)
            sides.append((t.a, t.b, t.c))
    return sides


def cmd_triangle(cfg: RunConfig):
    sides = _triangle_inputs(cfg)
    for abc in sides:
        if len(abc) != 3:
            raise UsageError("--sides needs three values")
        TriangleData.from_sides(*abc)
    records = list(triangle_records(sides))
    violated = sum(r["verdict"] == "VIOLATED" for r in records)
    rejected = sorted({(tuple(r["inputs"].values()), r["triple"], r["flag"]) for r in records
                       if r["flag"] != "ok"})
    if cfg.format == "jsonl":
        text = "".join(jsonio.dumps(r) + "\n" for r in records)
    else:
        triangles = []
        for abc in sides:
            t = TriangleData.from_sides(*abc)
            triangles.append({
                "sides": [t.a, t.b, t.c],
                "identities": t.check(),
                "triples": [
                    {"index": tr.index, "name": tr.name, "values": list(tr.values),
                     "product": tr.product, "accepted": tr.accepted, "flag": tr.flag,
                     "verdicts": {mid: (verdict(mid, eval_sum_float(mid, tr.values)) if tr.accepted else None)
                                  for mid in D_IDS}}
                    for tr in triangle_triples(t)],
            })
        text = _doc(cfg, {"triangles": triangles,
                          "summary": {"records": len(records), "violated": violated,
                                      "rejected_triples": len(rejected)}})
    line = (f"triangle: {len(sides)} triangles, {len(records)} records, "
            f"{violated} violations, {len(rejected)} rejected triples")
    return (EXIT_VIOLATION if violated else EXIT_OK), text, line


def _interval_dict(iv):
    return {"low": str(iv.low), "high": str(iv.high), "low_float": float(iv.low),
            "high_float": float(iv.high), "sign_low": iv.sign_low, "sign_high": iv.sign_high,
            "multiplicity": iv.multiplicity,
            "exact": None if iv.exact is None else str(iv.exact)}


def cmd_roots(cfg: RunConfig):
    if cfg.coeffs is not None:
        width = Fraction(cfg.width)
        iso = isolate_real_roots if cfg.real else isolate_positive_roots
        ivs = iso([Fraction(c) for c in cfg.coeffs], width)
        body = {"coeffs": list(cfg.coeffs), "width": cfg.width,
                "count": len(ivs), "count_with_multiplicity": sum(iv.multiplicity for iv in ivs),
                "roots": [_interval_dict(iv) for iv in ivs]}
        kind = "real" if cfg.real else "positive"
        return EXIT_OK, _doc(cfg, body), f"roots: {len(ivs)} distinct {kind} roots"
    spec = CubicSpec(Fraction(cfg.a), Fraction(cfg.b))
    res = vieta_roots(spec)
    if cfg.format == "jsonl":
        text = "".join(jsonio.dumps(r) + "\n" for r in cubic_records([spec]))
    else:
        body = {"cubic": {"a": str(spec.a), "b": str(spec.b)},
                "accepted": res.accepted, "real_roots": res.real_roots,
                "positive_roots": res.positive_roots, "roots": list(res.roots),
                "product_residual": res.product_residual,
                "verdicts": res.verdicts, "reason": res.reason}
        text = _doc(cfg, body)
    violated = [k for k, v in res.verdicts.items() if not v]
    if res.roots:
        line = (f"roots: {', '.join(f'{r:.12g}' for r in res.roots)}; "
                + ("all members satisfied" if not violated else f"violated: {', '.join(violated)}"))
    else:
        line = f"roots: rejected ({res.reason})"
    return (EXIT_VIOLATION if violated else EXIT_OK), text, line


COMMANDS = {
    "verify": cmd_verify,
    "maximize": cmd_maximize,
    "reduce": cmd_reduce,
    "region": cmd_region,
    "constant": cmd_constant,
    "triangle": cmd_triangle,
    "roots": cmd_roots,
}


def _summary_path(out: str) -> str:
    stem = out[:-4] if out.endswith(".csv") else out
    return stem + ".summary.json"


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    result = COMMANDS[cfg.subcommand](cfg)
    code, text, line = result[:3]
    extra = result[3] if len(result) > 3 else {}
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
        if "summary" in extra:
            with open(_summary_path(cfg.out), "w") as fh:
                fh.write(extra["summary"])
        print(line, file=stdout)
    else:
        stdout.write(text)
        print(line, file=stderr)
    return code


def main(argv=None, stdout=None, stderr=None) -> int:
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        cfg = config_from_args(args)
        return run(cfg, stdout, stderr)
    except UsageError as e:
        print(e, file=stderr)
        return EXIT_USAGE
    except SystemExit as e:   # --help
        return int(e.code or 0)
    except (UnsupportedMemberError, RegimeError, GridTooLargeError) as e:
        print(f"ineqforge: {e}", file=stderr)
        return EXIT_USAGE
    except (InfeasibleSpecError, DomainError, DegenerateTriangleError,
            DegeneratePolynomialError, NotSymmetricError) as e:
        print(f"ineqforge: {e}", file=stderr)
        return EXIT_DATA
    except NonConvergenceError as e:
        print(f"ineqforge: {e}", file=stderr)
        return EXIT_SOFTWARE
    except OSError as e:
        print(f"ineqforge: {e}", file=stderr)
        return EXIT_IO
    except (IneqForgeError, ValueError) as e:
        print(f"ineqforge: {e}", file=stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
