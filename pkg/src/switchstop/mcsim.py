"""Monte Carlo validation of equilibrium payoffs.

Paths follow an Euler scheme for the scaled Brownian motion with the regime
chain simulated by exact exponential holding times merged into the time grid.
Stopping is checked at every merged grid point, including jump instants and
t = 0.  Player 2 is checked first, so simultaneous triggers resolve to
Player 2.  Each path owns a deterministic RNG stream derived from a 64-bit
seed, making results bit-identical for any worker count.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

# pick a threading layer that needs no optional backend probing; results are
# identical for any layer or worker count (per-path streams, fixed-slot output)
os.environ.setdefault("NUMBA_THREADING_LAYER", "workqueue")

from numba import njit, prange

from .model import GameParams, Thresholds, ValidationError, check_regime, validate
from .smoothfit import solve_thresholds
from .valuefn import ValueFunction

DISCRETIZATION_ALLOWANCE = 0.02

_U64 = np.uint64
_MASK = _U64(0xFFFFFFFFFFFFFFFF)
_GOLD = _U64(0x9E3779B97F4A7C15)
_MIX1 = _U64(0xBF58476D1CE4E5B9)
_MIX2 = _U64(0x94D049BB133111EB)
_TWO53 = 1.0 / 9007199254740992.0
_TWO_PI = 6.283185307179586


@njit(cache=True)
def _mix64(z):
    # splitmix64 output function; seeds the per-path xoshiro state
    z = (z + _GOLD) & _MASK
    z = ((z ^ (z >> _U64(30))) * _MIX1) & _MASK
    z = ((z ^ (z >> _U64(27))) * _MIX2) & _MASK
    return z ^ (z >> _U64(31))


@njit(cache=True)
def _seed_stream(seed, stream):
    z = (seed + (_U64(stream) + _U64(1)) * _GOLD) & _MASK
    s0 = _mix64(z)
    s1 = _mix64(s0)
    s2 = _mix64(s1)
    s3 = _mix64(s2)
    return s0, s1, s2, s3


@njit(cache=True)
def _next_u64(s0, s1, s2, s3):
    # xoshiro256+
    out = (s0 + s3) & _MASK
    t = (s1 << _U64(17)) & _MASK
    s2 ^= s0
    s3 ^= s1
    s1 ^= s2
    s0 ^= s3
    s2 ^= t
    s3 = ((s3 << _U64(45)) | (s3 >> _U64(19))) & _MASK
    return out, s0, s1, s2, s3


@njit(cache=True)
def _uniform(s0, s1, s2, s3):
    u, s0, s1, s2, s3 = _next_u64(s0, s1, s2, s3)
    # strictly inside (0, 1) so logs are finite
    return (float(u >> _U64(11)) + 0.5) * _TWO53, s0, s1, s2, s3


@njit(cache=True)
def _simulate_one(x0, regime0, a1, a2, b1, b2, sigma1, sigma2, lam1, lam2,
                  r, K1, K2, Kt1, Kt2, dt, horizon, seed, stream, flip):
    """One path; returns (payoff, reason, stop time, steps, time in regime 1).

    reason: 0 Player 1 stopped, 1 Player 2 stopped, 2 truncated at horizon.
    """
    s0, s1, s2, s3 = _seed_stream(seed, stream)
    x = x0
    reg = regime0 - 1
    t = 0.0
    grid_index = 0
    occupancy1 = 0.0
    have_spare = False
    spare = 0.0
    u, s0, s1, s2, s3 = _uniform(s0, s1, s2, s3)
    t_jump = -math.log(u) / (lam1 if reg == 0 else lam2)
    steps = 0
    while True:
        b_level = b1 if reg == 0 else b2
        a_level = a1 if reg == 0 else a2
        if x >= b_level:
            kt = Kt1 if reg == 0 else Kt2
            return math.exp(-r * t) * (x - kt), 1, t, steps, occupancy1
        if x <= a_level:
            k = K1 if reg == 0 else K2
            return math.exp(-r * t) * (x - k), 0, t, steps, occupancy1
        if t >= horizon:
            return 0.0, 2, horizon, steps, occupancy1
        t_grid = dt * (grid_index + 1)
        if t_jump < t_grid:
            t_next = t_jump
            is_jump = True
        else:
            t_next = t_grid
            is_jump = False
        if t_next > horizon:
            t_next = horizon
            is_jump = False
        h = t_next - t
        if have_spare:
            z = spare
            have_spare = False
        else:
            u1, s0, s1, s2, s3 = _uniform(s0, s1, s2, s3)
            u2, s0, s1, s2, s3 = _uniform(s0, s1, s2, s3)
            radius = math.sqrt(-2.0 * math.log(u1))
            z = radius * math.cos(_TWO_PI * u2)
            spare = radius * math.sin(_TWO_PI * u2)
            have_spare = True
        z *= flip
        if h > 0.0:
            sigma = sigma1 if reg == 0 else sigma2
            x += sigma * math.sqrt(h) * z
        if reg == 0:
            occupancy1 += h
        if is_jump:
            reg = 1 - reg
            u, s0, s1, s2, s3 = _uniform(s0, s1, s2, s3)
            t_jump = t_next - math.log(u) / (lam1 if reg == 0 else lam2)
        elif t_next == t_grid:
            grid_index += 1
        t = t_next
        steps += 1


@njit(cache=True, parallel=True)
def _simulate_batch(x0, regime0, a1, a2, b1, b2, sigma1, sigma2, lam1, lam2,
                    r, K1, K2, Kt1, Kt2, dt, horizon, n_paths, seed, antithetic,
                    payoff, reason, tau, occupancy1):
    for p in prange(n_paths):
        stream = p // 2 if antithetic else p
        flip = -1.0 if (antithetic and p % 2 == 1) else 1.0
        res, rs, t_stop, _, occ = _simulate_one(
            x0, regime0, a1, a2, b1, b2, sigma1, sigma2, lam1, lam2,
            r, K1, K2, Kt1, Kt2, dt, horizon, seed, stream, flip)
        payoff[p] = res
        reason[p] = rs
        tau[p] = t_stop
        occupancy1[p] = occ


@dataclass(frozen=True)
class ThresholdStrategyPair:
    """Threshold stopping rules: Player 1 stops at or below a_i, Player 2 at or above b_i."""

    p1_levels: Tuple[float, float]
    p2_levels: Tuple[float, float]

    def __post_init__(self):
        for i in (1, 2):
            a_i, b_i = self.p1_levels[i - 1], self.p2_levels[i - 1]
            if math.isnan(a_i) or math.isnan(b_i) or not a_i < b_i:
                raise ValidationError(
                    [f"strategy levels must satisfy a({i}) < b({i}), got ({a_i}, {b_i})"])

    @classmethod
    def from_thresholds(cls, th: Thresholds) -> "ThresholdStrategyPair":
        return cls(p1_levels=(th.a1, th.a2), p2_levels=(th.b1, th.b2))


@dataclass(frozen=True)
class SimConfig:
    """Simulation controls.

    horizon ``None`` resolves to max(10/r, 20 * mean regime holding time), so
    the discount factor at truncation is negligible by default.
    """

    dt: float = 1e-4
    paths: int = 100_000
    seed: int = 12345
    antithetic: bool = True
    horizon: Optional[float] = None

    def __post_init__(self):
        problems = []
        if not self.dt > 0:
            problems.append("dt must be positive")
        if self.paths < 1:
            problems.append("paths must be at least 1")
        if self.antithetic and self.paths % 2 != 0:
            problems.append("paths must be even with antithetic pairing")
        if self.horizon is not None and self.dt > self.horizon:
            problems.append("dt must not exceed the horizon")
        if problems:
            raise ValidationError(problems)

    def resolve_horizon(self, params: GameParams) -> float:
        if self.horizon is not None:
            return self.horizon
        mean_holding = 0.5 * (1.0 / params.lambda1 + 1.0 / params.lambda2)
        return max(10.0 / params.r, 20.0 * mean_holding)


@dataclass(frozen=True)
class SimReport:
    """Payoff estimate with sampling error and stop-cause breakdown."""

    estimate: float
    stderr: float
    ci95: float
    stop_distribution: Dict[str, float]
    paths_used: int
    start_x: float
    start_regime: int
    dt: float
    seed: int

    def to_dict(self) -> dict:
        return {
            "estimate": self.estimate, "stderr": self.stderr, "ci95": self.ci95,
            "stop_distribution": dict(self.stop_distribution),
            "paths_used": self.paths_used, "start_x": self.start_x,
            "start_regime": self.start_regime, "dt": self.dt, "seed": self.seed,
        }


def simulate_payoff(params: GameParams, start: Tuple[float, int],
                    strat: ThresholdStrategyPair, cfg: SimConfig) -> SimReport:
    """Estimates the discounted payoff under the given stopping thresholds."""
    validate(params)
    x0, regime0 = float(start[0]), check_regime(int(start[1]))
    horizon = cfg.resolve_horizon(params)
    n = cfg.paths
    payoff = np.empty(n)
    reason = np.empty(n, dtype=np.int8)
    tau = np.empty(n)
    occupancy1 = np.empty(n)
    _simulate_batch(x0, regime0,
                    float(strat.p1_levels[0]), float(strat.p1_levels[1]),
                    float(strat.p2_levels[0]), float(strat.p2_levels[1]),
                    params.sigma1, params.sigma2, params.lambda1, params.lambda2,
                    params.r, params.K1, params.K2, params.Ktilde1, params.Ktilde2,
                    cfg.dt, horizon, n, _U64(cfg.seed), cfg.antithetic,
                    payoff, reason, tau, occupancy1)
    if cfg.antithetic and n >= 2:
        pair_means = payoff.reshape(-1, 2).mean(axis=1)
        estimate = float(pair_means.mean())
        stderr = float(pair_means.std(ddof=1) / np.sqrt(len(pair_means))) \
            if len(pair_means) > 1 else 0.0
    else:
        estimate = float(payoff.mean())
        stderr = float(payoff.std(ddof=1) / np.sqrt(n)) if n > 1 else 0.0
    distribution = {
        "p1_first": float(np.mean(reason == 0)),
        "p2_first": float(np.mean(reason == 1)),
        "truncated": float(np.mean(reason == 2)),
    }
    return SimReport(estimate=estimate, stderr=stderr, ci95=1.96 * stderr,
                     stop_distribution=distribution, paths_used=n,
                     start_x=x0, start_regime=regime0, dt=cfg.dt, seed=cfg.seed)


def occupancy_fraction(params: GameParams, start: Tuple[float, int],
                       cfg: SimConfig) -> Tuple[float, float]:
    """Mean and stderr of the fraction of time spent in regime 1 up to the horizon.

    Runs with stopping disabled, so the chain is observed over the full horizon.
    """
    validate(params)
    x0, regime0 = float(start[0]), check_regime(int(start[1]))
    horizon = cfg.resolve_horizon(params)
    n = cfg.paths
    payoff = np.empty(n)
    reason = np.empty(n, dtype=np.int8)
    tau = np.empty(n)
    occupancy1 = np.empty(n)
    _simulate_batch(x0, regime0, -np.inf, -np.inf, np.inf, np.inf,
                    params.sigma1, params.sigma2, params.lambda1, params.lambda2,
                    params.r, params.K1, params.K2, params.Ktilde1, params.Ktilde2,
                    cfg.dt, horizon, n, _U64(cfg.seed), cfg.antithetic,
                    payoff, reason, tau, occupancy1)
    fractions = occupancy1 / horizon
    return float(fractions.mean()), float(fractions.std(ddof=1) / np.sqrt(n))


@dataclass(frozen=True)
class DeviationOutcome:
    """One unilateral deviation versus the equilibrium value.

    player 1 or 2 marks whose levels moved; 0 means the deviation equals the
    equilibrium, where the estimate must match the value two-sidedly.
    """

    player: int
    strategy: ThresholdStrategyPair
    estimate: float
    stderr: float
    ci95: float
    reference_value: float
    satisfied: bool


def nash_deviation_test(params: GameParams, start: Tuple[float, int],
                        equilibrium: ThresholdStrategyPair,
                        deviations: Sequence[ThresholdStrategyPair],
                        cfg: SimConfig,
                        allowance: float = DISCRETIZATION_ALLOWANCE
                        ) -> List[DeviationOutcome]:
    """Checks the equilibrium inequalities against unilateral deviations.

    Player-1 deviations must not lower the payoff below the closed-form value
    (Player 1 minimizes); Player-2 deviations must not raise it.  All runs
    share the seed, so strategies are compared on common random numbers.
    """
    solution = solve_thresholds(params)
    vf = ValueFunction(solution)
    reference = vf.eval(float(start[0]), int(start[1]))
    outcomes = []
    for strat in deviations:
        p1_changed = strat.p1_levels != equilibrium.p1_levels
        p2_changed = strat.p2_levels != equilibrium.p2_levels
        if p1_changed and p2_changed:
            raise ValidationError(
                ["each deviation must change at most one player's levels"])
        player = 1 if p1_changed else (2 if p2_changed else 0)
        report = simulate_payoff(params, start, strat, cfg)
        slack = report.ci95 + allowance
        if player == 1:
            satisfied = report.estimate >= reference - slack
        elif player == 2:
            satisfied = report.estimate <= reference + slack
        else:
            satisfied = abs(report.estimate - reference) <= slack
        outcomes.append(DeviationOutcome(
            player=player, strategy=strat, estimate=report.estimate,
            stderr=report.stderr, ci95=report.ci95,
            reference_value=reference, satisfied=bool(satisfied)))
    return outcomes


def _py_uniform(state):
    # compiled helpers hand uint64 state back as Python ints; re-wrap them so
    # the next call dispatches on uint64 again instead of retyping as int64
    u, s0, s1, s2, s3 = _uniform(_U64(state[0]), _U64(state[1]),
                                 _U64(state[2]), _U64(state[3]))
    return u, (s0, s1, s2, s3)


def _twin_path(x0: float, regime0: int, strat: ThresholdStrategyPair,
               params: GameParams, dt: float, horizon: float,
               seed: int, stream: int, flip: float):
    """Plain-Python replica of the compiled path loop, recording the trajectory.

    Shares the compiled RNG helpers so draws match the batch kernel bit for
    bit; used for trace dumps and as an independent check of the kernel.
    """
    a = (float(strat.p1_levels[0]), float(strat.p1_levels[1]))
    b = (float(strat.p2_levels[0]), float(strat.p2_levels[1]))
    sigma = (params.sigma1, params.sigma2)
    lam = (params.lambda1, params.lambda2)
    K = (params.K1, params.K2)
    Kt = (params.Ktilde1, params.Ktilde2)
    state = _seed_stream(_U64(seed), stream)
    x = x0
    reg = regime0 - 1
    t = 0.0
    grid_index = 0
    have_spare = False
    spare = 0.0
    u, state = _py_uniform(state)
    t_jump = -math.log(u) / lam[reg]
    trace = [(t, x, reg + 1)]
    while True:
        if x >= b[reg]:
            return trace, math.exp(-params.r * t) * (x - Kt[reg]), 1, t
        if x <= a[reg]:
            return trace, math.exp(-params.r * t) * (x - K[reg]), 0, t
        if t >= horizon:
            return trace, 0.0, 2, horizon
        t_grid = dt * (grid_index + 1)
        is_jump = t_jump < t_grid
        t_next = t_jump if is_jump else t_grid
        if t_next > horizon:
            t_next = horizon
            is_jump = False
        h = t_next - t
        if have_spare:
            z = spare
            have_spare = False
        else:
            u1, state = _py_uniform(state)
            u2, state = _py_uniform(state)
            radius = math.sqrt(-2.0 * math.log(u1))
            z = radius * math.cos(_TWO_PI * u2)
            spare = radius * math.sin(_TWO_PI * u2)
            have_spare = True
        z *= flip
        if h > 0.0:
            x += sigma[reg] * math.sqrt(h) * z
        if is_jump:
            reg = 1 - reg
            u, state = _py_uniform(state)
            t_jump = t_next - math.log(u) / lam[reg]
        elif t_next == t_grid:
            grid_index += 1
        t = t_next
        trace.append((t, x, reg + 1))


def trace_paths(params: GameParams, start: Tuple[float, int],
                strat: ThresholdStrategyPair, cfg: SimConfig,
                max_paths: int = 100) -> List[np.ndarray]:
    """Per-path (t, X, regime) trajectories for up to ``max_paths`` paths."""
    validate(params)
    x0, regime0 = float(start[0]), check_regime(int(start[1]))
    horizon = cfg.resolve_horizon(params)
    n = min(cfg.paths, max_paths, 100)
    out = []
    for p in range(n):
        stream = p // 2 if cfg.antithetic else p
        flip = -1.0 if (cfg.antithetic and p % 2 == 1) else 1.0
        trace, _, _, _ = _twin_path(x0, regime0, strat, params, cfg.dt, horizon,
                                    cfg.seed, stream, flip)
        out.append(np.array(trace, dtype=float))
    return out
