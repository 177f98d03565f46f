"""Monte Carlo engine: exact stop semantics, determinism, statistical checks."""

import numpy as np
import numpy.testing as npt
import pytest

from switchstop import (
    SimConfig,
    ThresholdStrategyPair,
    ValidationError,
    nash_deviation_test,
    occupancy_fraction,
    simulate_payoff,
    trace_paths,
)
from switchstop.mcsim import _simulate_one, _twin_path, _U64

from conftest import BENCHMARK

FAST = SimConfig(dt=1e-2, paths=100, seed=7, antithetic=False, horizon=10.0)


def equilibrium_strategy(solution):
    return ThresholdStrategyPair.from_thresholds(solution.thresholds)


def test_immediate_stop_below_a_pays_lower_obstacle(benchmark_solution):
    strat = equilibrium_strategy(benchmark_solution)
    report = simulate_payoff(BENCHMARK, (-5.0, 1), strat, FAST)
    assert report.estimate == -5.0 - BENCHMARK.K1
    assert report.stderr == 0.0
    assert report.stop_distribution == {"p1_first": 1.0, "p2_first": 0.0,
                                        "truncated": 0.0}


def test_immediate_stop_above_b_pays_upper_obstacle(benchmark_solution):
    strat = equilibrium_strategy(benchmark_solution)
    report = simulate_payoff(BENCHMARK, (94.0, 2), strat, FAST)
    assert report.estimate == 94.0 - BENCHMARK.Ktilde2
    assert report.stop_distribution["p2_first"] == 1.0


def test_stop_boundaries_are_inclusive(benchmark_solution):
    strat = equilibrium_strategy(benchmark_solution)
    th = benchmark_solution.thresholds
    at_a = simulate_payoff(BENCHMARK, (th.a1, 1), strat, FAST)
    npt.assert_allclose(at_a.estimate, th.a1 - BENCHMARK.K1, rtol=0, atol=1e-14)
    assert at_a.stop_distribution["p1_first"] == 1.0
    at_b = simulate_payoff(BENCHMARK, (th.b1, 1), strat, FAST)
    npt.assert_allclose(at_b.estimate, th.b1 - BENCHMARK.Ktilde1, rtol=0,
                        atol=1e-14)
    assert at_b.stop_distribution["p2_first"] == 1.0


def test_reports_are_bit_identical_across_runs(benchmark_solution):
    strat = equilibrium_strategy(benchmark_solution)
    cfg = SimConfig(dt=1e-2, paths=500, seed=11, antithetic=True, horizon=10.0)
    first = simulate_payoff(BENCHMARK, (3.0, 1), strat, cfg)
    second = simulate_payoff(BENCHMARK, (3.0, 1), strat, cfg)
    assert first == second


def test_seed_changes_the_estimate(benchmark_solution):
    strat = equilibrium_strategy(benchmark_solution)
    cfg_a = SimConfig(dt=1e-2, paths=500, seed=1, antithetic=False, horizon=10.0)
    cfg_b = SimConfig(dt=1e-2, paths=500, seed=2, antithetic=False, horizon=10.0)
    est_a = simulate_payoff(BENCHMARK, (3.0, 1), strat, cfg_a).estimate
    est_b = simulate_payoff(BENCHMARK, (3.0, 1), strat, cfg_b).estimate
    assert est_a != est_b


def test_antithetic_agrees_with_plain_sampling(benchmark_solution):
    strat = equilibrium_strategy(benchmark_solution)
    plain = simulate_payoff(BENCHMARK, (3.0, 1), strat,
                            SimConfig(dt=1e-2, paths=4000, seed=5,
                                      antithetic=False, horizon=10.0))
    paired = simulate_payoff(BENCHMARK, (3.0, 1), strat,
                             SimConfig(dt=1e-2, paths=4000, seed=5,
                                       antithetic=True, horizon=10.0))
    gap = abs(plain.estimate - paired.estimate)
    assert gap <= 4.0 * (plain.stderr + paired.stderr)
    assert paired.stderr > 0.0


def test_twin_path_matches_compiled_kernel(benchmark_solution):
    strat = equilibrium_strategy(benchmark_solution)
    th = benchmark_solution.thresholds
    args = (th.a1, th.a2, th.b1, th.b2,
            BENCHMARK.sigma1, BENCHMARK.sigma2,
            BENCHMARK.lambda1, BENCHMARK.lambda2,
            BENCHMARK.r, BENCHMARK.K1, BENCHMARK.K2,
            BENCHMARK.Ktilde1, BENCHMARK.Ktilde2)
    for stream in range(10):
        for flip in (1.0, -1.0):
            payoff, reason, tau, _, _ = _simulate_one(
                3.0, 1, *args, 1e-2, 10.0, _U64(99), stream, flip)
            _, twin_payoff, twin_reason, twin_tau = _twin_path(
                3.0, 1, strat, BENCHMARK, 1e-2, 10.0, 99, stream, flip)
            assert reason == twin_reason
            npt.assert_allclose(payoff, twin_payoff, rtol=0, atol=1e-12)
            npt.assert_allclose(tau, twin_tau, rtol=0, atol=1e-12)


def test_occupancy_matches_chain_stationary_law():
    cfg = SimConfig(dt=1e-2, paths=2000, seed=42, antithetic=False,
                    horizon=30.0)
    mean, stderr = occupancy_fraction(BENCHMARK, (3.0, 1), cfg)
    npt.assert_allclose(mean, 0.7158177998956999, rtol=1e-12)
    npt.assert_allclose(stderr, 0.0009696233106667735, rtol=1e-12)
    stationary = BENCHMARK.lambda2 / (BENCHMARK.lambda1 + BENCHMARK.lambda2)
    assert abs(mean - stationary) <= 3.0 * stderr


def test_estimate_matches_closed_form_value(benchmark_solution, benchmark_vf):
    strat = equilibrium_strategy(benchmark_solution)
    cfg = SimConfig(dt=1e-3, paths=2000, seed=9, antithetic=True)
    report = simulate_payoff(BENCHMARK, (3.0, 1), strat, cfg)
    npt.assert_allclose(report.estimate, -0.18411114197210665, rtol=1e-12)
    value = benchmark_vf.eval(3.0, 1)
    assert abs(report.estimate - value) <= report.ci95 + 0.02


def test_config_validation_messages():
    with pytest.raises(ValidationError, match="dt must be positive"):
        SimConfig(dt=0.0)
    with pytest.raises(ValidationError, match="paths must be at least 1"):
        SimConfig(paths=0)
    with pytest.raises(ValidationError, match="antithetic"):
        SimConfig(paths=3, antithetic=True)
    with pytest.raises(ValidationError, match="horizon"):
        SimConfig(dt=1.0, horizon=0.5)


def test_strategy_validation():
    with pytest.raises(ValidationError, match=r"a\(1\) < b\(1\)"):
        ThresholdStrategyPair(p1_levels=(5.0, 1.0), p2_levels=(4.0, 8.0))
    with pytest.raises(ValidationError, match=r"a\(2\) < b\(2\)"):
        ThresholdStrategyPair(p1_levels=(0.0, float("nan")),
                              p2_levels=(4.0, 8.0))


def test_resolve_horizon_default_and_override():
    assert SimConfig().resolve_horizon(BENCHMARK) == 7.0
    assert SimConfig(horizon=3.5).resolve_horizon(BENCHMARK) == 3.5


def test_nash_deviations_smoke(benchmark_solution):
    eq = equilibrium_strategy(benchmark_solution)
    th = benchmark_solution.thresholds
    cfg = SimConfig(dt=1e-2, paths=2000, seed=3, antithetic=True, horizon=10.0)
    deviations = [
        ThresholdStrategyPair((th.a1 - 0.5, th.a2), eq.p2_levels),
        ThresholdStrategyPair(eq.p1_levels, (th.b1 + 0.5, th.b2)),
        eq,
    ]
    outcomes = nash_deviation_test(BENCHMARK, (3.0, 1), eq, deviations, cfg)
    assert [o.player for o in outcomes] == [1, 2, 0]
    assert all(o.satisfied for o in outcomes)
    assert all(o.reference_value == outcomes[0].reference_value
               for o in outcomes)


def test_nash_rejects_joint_deviation(benchmark_solution):
    eq = equilibrium_strategy(benchmark_solution)
    th = benchmark_solution.thresholds
    joint = ThresholdStrategyPair((th.a1 - 0.5, th.a2), (th.b1 + 0.5, th.b2))
    with pytest.raises(ValidationError, match="at most one player"):
        nash_deviation_test(BENCHMARK, (3.0, 1), eq, [joint], FAST)


def test_trace_paths_structure(benchmark_solution):
    strat = equilibrium_strategy(benchmark_solution)
    cfg = SimConfig(dt=1e-2, paths=6, seed=21, antithetic=True, horizon=10.0)
    traces = trace_paths(BENCHMARK, (3.0, 1), strat, cfg, max_paths=5)
    assert len(traces) == 5
    th = benchmark_solution.thresholds
    for trace in traces:
        assert trace.shape[1] == 3
        npt.assert_allclose(trace[0], [0.0, 3.0, 1.0], rtol=0, atol=0)
        assert np.all(np.diff(trace[:, 0]) >= 0.0)
        assert set(np.unique(trace[:, 2])) <= {1.0, 2.0}
        t_end, x_end, reg_end = trace[-1]
        a_end = th.a(int(reg_end))
        b_end = th.b(int(reg_end))
        assert x_end <= a_end or x_end >= b_end or t_end >= 10.0


def test_tiny_horizon_truncates(benchmark_solution):
    strat = equilibrium_strategy(benchmark_solution)
    cfg = SimConfig(dt=1e-2, paths=100, seed=17, antithetic=False,
                    horizon=1e-2)
    report = simulate_payoff(BENCHMARK, (3.0, 1), strat, cfg)
    assert report.stop_distribution["truncated"] == 1.0
    assert report.estimate == 0.0
    assert report.stderr == 0.0


def test_discretization_bias_shrinks_with_dt(benchmark_solution, benchmark_vf):
    strat = equilibrium_strategy(benchmark_solution)
    value = benchmark_vf.eval(3.0, 1)
    errors = []
    for dt in (4e-2, 4e-3):
        cfg = SimConfig(dt=dt, paths=20_000, seed=31, antithetic=True,
                        horizon=10.0)
        report = simulate_payoff(BENCHMARK, (3.0, 1), strat, cfg)
        errors.append(abs(report.estimate - value))
    # Euler crossing bias is O(sqrt(dt)); a 10x dt cut must visibly help
    assert errors[1] < errors[0]
