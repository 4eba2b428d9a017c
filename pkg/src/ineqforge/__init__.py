"""Exact and numerical tools for the rational inequality family

    sum (x_k - 1)/(x_k^2 - x_k + 1) <= 0   on   x_1 x_2 ... x_n = 1

and its relatives: symmetric reduction, certified root isolation,
constrained multistart optimization, sign maps of the four-variable case, and
applications to triangles, cyclic forms and cubic roots.
"""

from .errors import *  # noqa: F401,F403
from .optimize import ConstraintSpec, OptReport, best_constant, extremize, gradient
from .reduction import (clear_denominators, equivalence_check, k1_decompose, reduce_member,
                        symmetric_reduce)
from .region import classify, scan_grid, trace_boundary
from .roots import RootInterval, isolate_positive_roots, isolate_real_roots
from .scalar import (D_IDS, MEMBERS, FamilyMember, eval_sum, eval_sum_float, eval_term,
                     get_member, power_member, unconditional_max)

__version__ = "0.1.0"
