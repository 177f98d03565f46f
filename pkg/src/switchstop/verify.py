"""Numerical checks of the equilibrium conditions for a candidate value function.

Four conditions are checked on grids: C1 smoothness across every pasting
point, the two-sided payoff envelope bounds, and the two complementarity
(variational-inequality) conditions coupling the generator residual with the
stopping obstacles on each player's continuation region.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict
from typing import Dict, Optional, Tuple

import numpy as np

from .valuefn import ValueFunction

SMOOTHNESS_TOL = 1e-8
BOUNDS_TOL = 1e-7
VI_TOL = 1e-6
BOUNDARY_OFFSET = 1e-6
DEFAULT_GRID_COUNT = 20001
DEFAULT_SPAN = 2.0
BOUNDS_SPAN = 5.0


def generator_residual(vf: ValueFunction, xs: np.ndarray, i: int) -> np.ndarray:
    """L v = r v(x,i) - sigma(i)^2/2 v''(x,i) - lambda_i [v(x,j) - v(x,i)]."""
    params = vf.params
    j = 2 if i == 1 else 1
    xs = np.asarray(xs, dtype=float)
    v_i = vf.values(xs, i)
    v_j = vf.values(xs, j)
    v_dd = vf.derivs(xs, i, 2)
    return (params.r * v_i - 0.5 * params.sigma(i) ** 2 * v_dd
            - params.lam(i) * (v_j - v_i))


def default_grid(vf: ValueFunction, count: int = DEFAULT_GRID_COUNT,
                 span: float = DEFAULT_SPAN) -> np.ndarray:
    """Uniform grid around the thresholds, pasting points excluded.

    Covers [a1 - span*(b2-a1), b2 + span*(b2-a1)]; any point within
    ``BOUNDARY_OFFSET`` of a pasting boundary is dropped so one-sided
    quantities stay well defined.
    """
    th = vf.thresholds
    width = th.b2 - th.a1
    xs = np.linspace(th.a1 - span * width, th.b2 + span * width, count)
    cuts = np.array([th.a1, th.a2, th.b1, th.b2])
    keep = np.min(np.abs(xs[:, None] - cuts[None, :]), axis=1) > BOUNDARY_OFFSET
    return xs[keep]


@dataclass(frozen=True)
class PastingGap:
    x: float
    regime: int
    value_gap: float
    deriv_gap: float


@dataclass(frozen=True)
class CheckResult:
    worst: float
    x_at: float
    regime_at: int
    passed: bool


@dataclass(frozen=True)
class VerificationReport:
    grid_lo: float
    grid_hi: float
    grid_count: int
    pasting_gaps: Tuple[PastingGap, ...]
    smoothness_worst: float
    smoothness_pass: bool
    bounds: CheckResult
    vi_continuation1: CheckResult   # min{L v, v - (x - Ktilde)} = 0 on (a_i, inf)
    vi_continuation2: CheckResult   # max{L v, v - (x - K)} = 0 on (-inf, b_i)
    overall_pass: bool
    tolerances: Dict[str, float]

    def to_dict(self) -> dict:
        return asdict(self)


def check_smoothness(vf: ValueFunction, tol: float = SMOOTHNESS_TOL):
    """Value and slope mismatch across each of the six pasting points.

    Returns:
        (gaps, worst, passed): per-point one-sided gaps, their maximum, and
        whether every gap is within ``tol``.
    """
    gaps = []
    for x, i in vf.pasting_points():
        value_gap = abs(vf.one_sided(x, i, "left", 0) - vf.one_sided(x, i, "right", 0))
        deriv_gap = abs(vf.one_sided(x, i, "left", 1) - vf.one_sided(x, i, "right", 1))
        gaps.append(PastingGap(x=float(x), regime=i, value_gap=float(value_gap),
                               deriv_gap=float(deriv_gap)))
    worst = max(max(g.value_gap, g.deriv_gap) for g in gaps)
    return tuple(gaps), float(worst), bool(worst <= tol)


def check_bounds(vf: ValueFunction, grid: Optional[np.ndarray] = None,
                 tol: float = BOUNDS_TOL) -> CheckResult:
    """Worst violation of x - Ktilde(i) <= v(x,i) <= x - K(i) over the grid."""
    if grid is None:
        grid = default_grid(vf, count=max(DEFAULT_GRID_COUNT, 10001), span=BOUNDS_SPAN)
    params = vf.params
    worst, x_at, regime_at = 0.0, float(grid[0]), 1
    for i in (1, 2):
        v = vf.values(grid, i)
        lower_violation = (grid - params.Ktilde(i)) - v
        upper_violation = v - (grid - params.K(i))
        violation = np.maximum(np.maximum(lower_violation, upper_violation), 0.0)
        k = int(np.argmax(violation))
        if violation[k] > worst:
            worst, x_at, regime_at = float(violation[k]), float(grid[k]), i
    return CheckResult(worst=worst, x_at=x_at, regime_at=regime_at,
                       passed=bool(worst <= tol))


def check_vi(vf: ValueFunction, grid: Optional[np.ndarray] = None,
             tol: float = VI_TOL) -> Tuple[CheckResult, CheckResult]:
    """Complementarity conditions on each player's continuation region.

    On (a_i, inf):  min{L v, v - (x - Ktilde(i))} = 0, both factors >= -tol.
    On (-inf, b_i): max{L v, v - (x - K(i))} = 0, both factors <= tol.
    """
    if grid is None:
        grid = default_grid(vf)
    params = vf.params
    th = vf.thresholds
    worst_c = CheckResult(0.0, float(grid[0]), 1, True)
    worst_d = CheckResult(0.0, float(grid[0]), 1, True)
    for i in (1, 2):
        lv = generator_residual(vf, grid, i)
        v = vf.values(grid, i)
        upper_gap = v - (grid - params.Ktilde(i))   # >= 0 where Player 2 continues
        lower_gap = v - (grid - params.K(i))        # <= 0 where Player 1 continues

        mask_c = grid > th.a(i)
        viol_c = np.maximum.reduce([
            np.maximum(-lv[mask_c], 0.0),
            np.maximum(-upper_gap[mask_c], 0.0),
            np.maximum(np.minimum(lv[mask_c], upper_gap[mask_c]), 0.0),
        ])
        k = int(np.argmax(viol_c))
        if viol_c[k] > worst_c.worst:
            worst_c = CheckResult(float(viol_c[k]), float(grid[mask_c][k]), i, True)

        mask_d = grid < th.b(i)
        viol_d = np.maximum.reduce([
            np.maximum(lv[mask_d], 0.0),
            np.maximum(lower_gap[mask_d], 0.0),
            np.maximum(-np.maximum(lv[mask_d], lower_gap[mask_d]), 0.0),
        ])
        k = int(np.argmax(viol_d))
        if viol_d[k] > worst_d.worst:
            worst_d = CheckResult(float(viol_d[k]), float(grid[mask_d][k]), i, True)
    worst_c = CheckResult(worst_c.worst, worst_c.x_at, worst_c.regime_at,
                          bool(worst_c.worst <= tol))
    worst_d = CheckResult(worst_d.worst, worst_d.x_at, worst_d.regime_at,
                          bool(worst_d.worst <= tol))
    return worst_c, worst_d


def verify_solution(vf: ValueFunction, grid_count: int = DEFAULT_GRID_COUNT,
                    span: float = DEFAULT_SPAN) -> VerificationReport:
    """Runs all checks and assembles the report."""
    grid = default_grid(vf, count=grid_count, span=span)
    gaps, smooth_worst, smooth_pass = check_smoothness(vf)
    bounds = check_bounds(vf)
    vi_c, vi_d = check_vi(vf, grid)
    overall = smooth_pass and bounds.passed and vi_c.passed and vi_d.passed
    return VerificationReport(
        grid_lo=float(grid[0]), grid_hi=float(grid[-1]), grid_count=int(len(grid)),
        pasting_gaps=gaps, smoothness_worst=smooth_worst, smoothness_pass=smooth_pass,
        bounds=bounds, vi_continuation1=vi_c, vi_continuation2=vi_d,
        overall_pass=bool(overall),
        tolerances={"smoothness": SMOOTHNESS_TOL, "bounds": BOUNDS_TOL, "vi": VI_TOL},
    )
