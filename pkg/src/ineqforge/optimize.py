"""Multi-start extremization of family sums on constraint surfaces.

Points are searched in log coordinates ``u = ln x``. The product constraint
becomes the hyperplane ``sum(u) = 0`` and is enforced exactly by
subtracting the mean. Targets on S1/S2 are approached with a quadratic
penalty ramp and then held exactly by a Gauss-Newton restoration step while
a projected gradient ascent polishes the point. Every start is independent
and seeded from one generator, so reports are deterministic.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DomainError, InfeasibleSpecError, NonConvergenceError, UnsupportedMemberError
from .parallel import map_ordered
from .scalar import D1, eval_derivative, eval_sum_float, eval_term_float, get_member

log = logging.getLogger(__name__)

LOG_FLOOR = math.log(1e-12)
SNAP = math.log(1e-2)
ESCAPE = 40.0
MAX_STEP = 1.0
ARMIJO = 0.3
PENALTY_RAMP = tuple(10.0**k for k in range(7))

DEFAULT_STARTS = 200
DEFAULT_SEED = 42
DEFAULT_TOL = 1e-9
DEFAULT_MAX_ITER = 10_000


@dataclass(frozen=True)
class ConstraintSpec:
    """Constraints on the elementary symmetric functions of n variables.

    ``product`` fixes S_n = 1. The supported combinations are the product
    alone, S1 and/or S2 targets without the product, and no constraint at
    all (the unconditional case of the generalized inequality).
    """

    n: int
    product: bool = True
    s1: float | None = None
    s2: float | None = None

    def __post_init__(self):
        if not 2 <= self.n <= 8:
            raise ValueError(f"n must be between 2 and 8, got {self.n}")
        if self.product and (self.s1 is not None or self.s2 is not None):
            raise ValueError("the product constraint cannot be combined with S1/S2 targets")
        for name in ("s1", "s2"):
            v = getattr(self, name)
            if v is not None and not v > 0:
                raise InfeasibleSpecError(f"{name} target must be positive, got {v}")

    @property
    def has_targets(self) -> bool:
        return self.s1 is not None or self.s2 is not None

    @property
    def unconstrained(self) -> bool:
        return not self.product and not self.has_targets

    def to_dict(self):
        return {"product": 1 if self.product else None, "s1": self.s1, "s2": self.s2}

    def feasible_point(self) -> list[float]:
        """A point meeting every active constraint (InfeasibleSpecError if none)."""
        n = self.n
        if self.product or self.unconstrained:
            return [1.0] * n
        pairs = n * (n - 1) / 2
        if self.s2 is None:
            return [self.s1 / n] * n
        if self.s1 is None:
            return [math.sqrt(self.s2 / pairs)] * n
        a, b = self.s1, self.s2
        if b > (n - 1) * a * a / (2 * n) * (1 + 1e-12):
            raise InfeasibleSpecError(
                f"S2={b} exceeds the maximum (n-1)S1^2/(2n)={(n - 1) * a * a / (2 * n)}")
        # move from the centre towards the corner (a, 0, ..., 0) until S2 = b
        centre = a / n
        v_target = a * a - 2 * b - a * a / n
        v_corner = a * a - a * a / n
        lam = math.sqrt(max(v_target, 0.0) / v_corner)
        corner = [a] + [0.0] * (n - 1)
        return [(1 - lam) * centre + lam * c for c in corner]

    def residuals(self, x) -> list[float]:
        out = []
        s1 = math.fsum(x)
        if self.s1 is not None:
            out.append((s1 - self.s1) / self.s1)
        if self.s2 is not None:
            s2 = (s1 * s1 - math.fsum(v * v for v in x)) / 2
            out.append((s2 - self.s2) / self.s2)
        if self.product:
            out.append(math.prod(x) - 1.0)
        return out


@dataclass(frozen=True)
class OptReport:
    member: str
    spec: ConstraintSpec
    mode: str
    extremum: float
    argpoint: tuple
    starts: int
    converged_starts: int
    seed: int
    tolerance: float
    gradient_norm: float

    def to_dict(self):
        return {
            "member": self.member,
            "n": self.spec.n,
            "constraints": self.spec.to_dict(),
            "mode": self.mode,
            "extremum": self.extremum,
            "argpoint": list(self.argpoint),
            "starts": self.starts,
            "converged_starts": self.converged_starts,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "gradient_norm": self.gradient_norm,
        }


# ---------------------------------------------------------------------------
# objectives


@dataclass(frozen=True)
class Objective:
    name: str
    value: object  # callable(list[float]) -> float
    dx: object     # callable(list[float]) -> list[float]


def member_objective(member) -> Objective:
    m = get_member(member)
    if m.substitution != "identity":
        raise UnsupportedMemberError(f"{m.id}: only members with direct terms can be optimized")
    if m.id == "M1":
        raise DomainError("M1 as printed has a pole at x = 1 on the search domain")

    def value(x):
        return math.fsum(eval_term_float(m, v) for v in x)

    def dx(x):
        return [eval_derivative(m, v) for v in x]

    return Objective(m.id, value, dx)


# ---------------------------------------------------------------------------
# local search


def _norm(g):
    return math.sqrt(math.fsum(v * v for v in g))


def _dot(a, b):
    return math.fsum(p * q for p, q in zip(a, b))


class _Search:
    """State-free helpers for one (objective, spec, direction) triple."""

    def __init__(self, obj: Objective, spec: ConstraintSpec, sign: float, tol: float, max_iter: int):
        self.obj, self.spec, self.sign, self.tol, self.max_iter = obj, spec, sign, tol, max_iter
        self.bounded = not spec.product

    # objective pieces -------------------------------------------------------

    def phi(self, u, mu=0.0):
        x = [math.exp(v) for v in u]
        val = self.sign * self.obj.value(x)
        if mu:
            val -= 0.5 * mu * math.fsum(r * r for r in self.spec.residuals(x))
        return val

    def raw_grad(self, u, mu=0.0):
        x = [math.exp(v) for v in u]
        g = [self.sign * xi * di for xi, di in zip(x, self.obj.dx(x))]
        if mu:
            spec = self.spec
            s1 = math.fsum(x)
            res = spec.residuals(x)
            i = 0
            if spec.s1 is not None:
                r = res[i]
                g = [gk - mu * r * xk / spec.s1 for gk, xk in zip(g, x)]
                i += 1
            if spec.s2 is not None:
                r = res[i]
                g = [gk - mu * r * xk * (s1 - xk) / spec.s2 for gk, xk in zip(g, x)]
        return g

    def _jacobian(self, x, free):
        s1 = math.fsum(x)
        rows = []
        if self.spec.s1 is not None:
            rows.append([x[k] for k in free])
        if self.spec.s2 is not None:
            rows.append([x[k] * (s1 - x[k]) for k in free])
        return np.array(rows, dtype=float)

    def project(self, u, g, exact=True):
        """Projected ascent direction: tangent to the constraints, and never
        pushing a coordinate sitting on the lower clamp further down."""
        n = len(u)
        if self.spec.product:
            mean = math.fsum(g) / n
            return [v - mean for v in g]
        x = [math.exp(v) for v in u]
        at_floor = [v <= LOG_FLOOR + 1e-12 for v in u]
        fixed = set()
        while True:
            free = [k for k in range(n) if k not in fixed]
            out = [0.0] * n
            if free:
                gf = np.array([g[k] for k in free])
                if exact and self.spec.has_targets:
                    J = self._jacobian(x, free)
                    gf = gf - J.T @ (np.linalg.pinv(J @ J.T) @ (J @ gf))
                for k, v in zip(free, gf):
                    out[k] = float(v)
            newly = {k for k in free if at_floor[k] and out[k] < 0}
            if not newly:
                return out
            fixed |= newly

    def retract(self, u):
        """Map a trial point back onto the feasible set (None on failure)."""
        if self.spec.product:
            mean = math.fsum(u) / len(u)
            return [v - mean for v in u]
        u = [max(v, LOG_FLOOR) for v in u]
        if not self.spec.has_targets:
            return u
        spec = self.spec
        for _ in range(60):
            x = [math.exp(v) for v in u]
            res = spec.residuals(x)
            if max(abs(r) for r in res) <= 1e-14:
                return u
            free = [k for k in range(len(u)) if u[k] > LOG_FLOOR]
            if not free:
                return None
            J = self._jacobian(x, free)
            scale = np.array([t for t in (spec.s1, spec.s2) if t is not None])
            r = np.array(res) * scale
            du = -(J.T @ (np.linalg.pinv(J @ J.T) @ r))
            big = float(np.max(np.abs(du)))
            if big > MAX_STEP:
                du *= MAX_STEP / big
            for k, d in zip(free, du):
                u[k] = max(u[k] + float(d), LOG_FLOOR)
        x = [math.exp(v) for v in u]
        return u if max(abs(r) for r in spec.residuals(x)) <= 1e-12 else None

    # ascent ----------------------------------------------------------------

    def ascend(self, u, mu=0.0, tol=None, max_iter=None):
        """Projected gradient ascent with backtracking. Returns
        (u, converged, projected gradient norm, iterations)."""
        tol = self.tol if tol is None else tol
        max_iter = self.max_iter if max_iter is None else max_iter
        exact = mu == 0.0
        retract = self.retract if exact else (lambda v: [max(w, LOG_FLOOR) for w in v] if self.bounded else v)
        f = self.phi(u, mu)
        t = 1.0
        for it in range(max_iter):
            g = self.project(u, self.raw_grad(u, mu), exact)
            gn = _norm(g)
            if gn <= tol:
                return u, True, gn, it
            if max(abs(v) for v in u) > ESCAPE:
                return u, False, gn, it
            step = min(t, MAX_STEP / max(abs(v) for v in g))
            accepted = False
            while step > 1e-30:
                trial = retract([a + step * b for a, b in zip(u, g)])
                if trial is not None:
                    ft = self.phi(trial, mu)
                    move = _dot(g, [a - b for a, b in zip(trial, u)])
                    if move <= 0:
                        break
                    if abs(ft - f) <= 1e-13 * (1.0 + abs(f)):
                        # values indistinguishable in floating point: use the
                        # directional derivative at the trial point instead
                        gt = self.project(trial, self.raw_grad(trial, mu), exact)
                        accepted = _dot(gt, g) > 0
                    else:
                        accepted = ft >= f + ARMIJO * move
                    if accepted:
                        break
                step *= 0.5
            if not accepted:
                return u, gn <= tol, gn, it
            u, f = trial, ft
            t = step * 2.0
            if self.bounded:
                u, f = self._snap(u, f, g, mu, retract)
        g = self.project(u, self.raw_grad(u, mu), exact)
        gn = _norm(g)
        return u, gn <= tol, gn, max_iter

    def _snap(self, u, f, g, mu, retract):
        """Drop coordinates that are already tiny and still pushed down
        straight onto the floor; the objective is nearly flat out there, so
        gradient steps alone would take thousands of iterations."""
        low = [k for k, v in enumerate(u) if LOG_FLOOR < v < SNAP and g[k] < 0]
        if not low:
            return u, f
        trial = list(u)
        for k in low:
            trial[k] = LOG_FLOOR
        trial = retract(trial)
        if trial is None:
            return u, f
        ft = self.phi(trial, mu)
        return (trial, ft) if ft >= f else (u, f)

    def run(self, u0):
        u = list(u0)
        if self.spec.has_targets:
            u = [max(v, LOG_FLOOR) for v in u]
            for mu in PENALTY_RAMP:
                u, _, _, _ = self.ascend(u, mu=mu, tol=max(self.tol, 1e-6), max_iter=200)
        u = self.retract(u)
        if u is None:
            u = [math.log(v) if v > 0 else LOG_FLOOR for v in self.spec.feasible_point()]
            u = self.retract(u)
        return self.ascend(u)


def _start_points(spec: ConstraintSpec, starts: int, seed: int):
    rng = np.random.default_rng(seed)
    draws = rng.standard_normal((starts, spec.n))
    out = []
    for row in draws:
        u = [float(v) for v in row]
        if spec.product:
            mean = math.fsum(u) / len(u)
            u = [v - mean for v in u]
        out.append(u)
    return out


def run_multistart(obj: Objective, spec: ConstraintSpec, mode: str = "SUP", starts: int = DEFAULT_STARTS,
                   seed: int = DEFAULT_SEED, tol: float = DEFAULT_TOL,
                   max_iter: int = DEFAULT_MAX_ITER) -> OptReport:
    if mode not in ("SUP", "INF"):
        raise ValueError(f"mode must be SUP or INF, got {mode!r}")
    if starts < 1:
        raise ValueError("starts must be >= 1")
    if not tol > 0:
        raise ValueError("tol must be positive")
    spec.feasible_point()
    search = _Search(obj, spec, 1.0 if mode == "SUP" else -1.0, tol, max_iter)
    results = map_ordered(search.run, _start_points(spec, starts, seed))

    converged = [r for r in results if r[1]]
    pool = converged or results
    best_key, best = None, None
    for u, ok, gn, _ in pool:
        x = tuple(math.exp(v) for v in u)
        val = obj.value(list(x))
        key = (-val if mode == "SUP" else val, x)
        if best_key is None or key < best_key:
            best_key, best = key, (x, val, gn)
    x, val, gn = best
    report = OptReport(obj.name, spec, mode, val, x, starts, len(converged), seed, tol, gn)
    if not converged:
        raise NonConvergenceError(f"no start converged for {obj.name}", report)
    return report


def extremize(member, spec: ConstraintSpec, mode: str = "SUP", starts: int = DEFAULT_STARTS,
              seed: int = DEFAULT_SEED, tol: float = DEFAULT_TOL,
              max_iter: int = DEFAULT_MAX_ITER) -> OptReport:
    """Best value of the member's sum over the constraint set (SUP or INF)."""
    return run_multistart(member_objective(member), spec, mode, starts, seed, tol, max_iter)


def gradient(member, spec: ConstraintSpec, point) -> list[float]:
    """d/du of sum term(e^u) at ``point``, projected onto the tangent space of
    the active constraints."""
    if any(v <= 0 for v in point):
        raise DomainError("gradient needs a strictly positive point")
    search = _Search(member_objective(member), spec, 1.0, DEFAULT_TOL, 1)
    u = [math.log(v) for v in point]
    return search.project(u, search.raw_grad(u))


# ---------------------------------------------------------------------------
# sampling


def sample_feasible(spec: ConstraintSpec, count: int, seed: int, sigma: float = 1.0) -> np.ndarray:
    """Seeded log-normal points mapped onto the constraint set (rows)."""
    rng = np.random.default_rng(seed)
    u = rng.normal(0.0, sigma, size=(count, spec.n))
    if spec.product:
        u -= u.mean(axis=1, keepdims=True)
    x = np.exp(u)
    if spec.s1 is not None and spec.s2 is not None:
        raise UnsupportedMemberError("sampling with both S1 and S2 targets is not implemented")
    if spec.s1 is not None:
        x *= spec.s1 / x.sum(axis=1, keepdims=True)
    elif spec.s2 is not None:
        s2 = (x.sum(axis=1) ** 2 - (x * x).sum(axis=1)) / 2
        x *= np.sqrt(spec.s2 / s2)[:, None]
    return x


def eval_sum_array(member, points: np.ndarray) -> np.ndarray:
    m = get_member(member)
    return eval_term_float(m, np.asarray(points, dtype=float)).sum(axis=1)


# ---------------------------------------------------------------------------
# sharp constant of the generalized inequality


@dataclass(frozen=True)
class BestConstant:
    """C = n/3 - sup sum f under the constraints.

    ``constant`` uses the maximum over the closed domain x_k >= 0 and
    ``open_constant`` the supremum over x_k > 0; the two values agree, but
    ``attained_in_interior`` tells whether the supremum is reached at a
    strictly positive point.
    """

    constant: float
    open_constant: float
    supremum: float
    attained_in_interior: bool
    boundary_point: tuple | None
    report: OptReport
    boundary_candidates: list = field(default_factory=list, compare=False)

    def to_dict(self):
        return {
            "constant": self.constant,
            "open_constant": self.open_constant,
            "supremum": self.supremum,
            "attained_in_interior": self.attained_in_interior,
            "boundary_point": None if self.boundary_point is None else list(self.boundary_point),
            "report": self.report.to_dict(),
        }


def _f(x):
    return float(eval_term_float(D1, x))


def _edge_max(fun, lo, hi, samples=2001):
    grid = np.linspace(lo, hi, samples)
    vals = np.array([fun(t) for t in grid])
    k = int(np.argmax(vals))
    best_t, best_v = float(grid[k]), float(vals[k])
    a, b = grid[max(k - 1, 0)], grid[min(k + 1, samples - 1)]
    if b > a:
        r = minimize_scalar(lambda t: -fun(t), bounds=(a, b), method="bounded",
                            options={"xatol": 1e-13})
        if -r.fun > best_v:
            best_t, best_v = float(r.x), float(-r.fun)
    return best_t, best_v


def boundary_candidates(spec: ConstraintSpec):
    """Points with a zero coordinate that meet the S1/S2 targets: simplex
    corners for any n, edge maxima for n = 3. Returns [(point, value), ...]."""
    if spec.product:
        return []
    a, b = spec.s1, spec.s2
    if spec.n != 3:
        if a is not None and b is None:
            corner = (a,) + (0.0,) * (spec.n - 1)
            return [(corner, _f(a) + (spec.n - 1) * _f(0.0))]
        return []
    out = []
    if a is not None and b is None:
        t, v = _edge_max(lambda t: _f(t) + _f(a - t), 0.0, a)
        out.append(((t, a - t, 0.0), v + _f(0.0)))
        out.append(((a, 0.0, 0.0), _f(a) + 2 * _f(0.0)))
    elif b is not None and a is None:
        s, v = _edge_max(lambda s: _f(math.exp(s)) + _f(b * math.exp(-s)), -30.0, 30.0)
        out.append(((math.exp(s), b * math.exp(-s), 0.0), v + _f(0.0)))
    elif a is not None and b is not None:
        disc = a * a - 4 * b
        if disc >= 0:
            r1, r2 = (a + math.sqrt(disc)) / 2, (a - math.sqrt(disc)) / 2
            if r2 >= 0:
                out.append(((r1, r2, 0.0), _f(r1) + _f(r2) + _f(0.0)))
    else:
        # one zero coordinate, the rest at the unconditional maximiser
        out.append(((2.0, 2.0, 0.0), 2 * _f(2.0) + _f(0.0)))
    return [(tuple(p), float(v)) for p, v in out]


def best_constant(spec: ConstraintSpec, starts: int = DEFAULT_STARTS, seed: int = DEFAULT_SEED,
                  tol: float = DEFAULT_TOL) -> BestConstant:
    report = extremize(D1, spec, "SUP", starts, seed, tol)
    interior = report.extremum
    cands = boundary_candidates(spec)
    closed = max([interior] + [v for _, v in cands])
    bpoint = None
    if cands:
        p, v = max(cands, key=lambda c: c[1])
        if v >= interior:
            bpoint = p
    attained = min(report.argpoint) > 1e-6 and interior >= closed - 1e-9
    if not attained and bpoint is None:
        # no closed-form candidates (n != 3): the search itself ran onto the floor
        bpoint = tuple(0.0 if v <= 1e-6 else v for v in report.argpoint)
    third = Fraction(spec.n, 3)
    return BestConstant(
        constant=float(third) - closed,
        open_constant=float(third) - closed,
        supremum=closed,
        attained_in_interior=attained,
        boundary_point=bpoint,
        report=report,
        boundary_candidates=cands,
    )
