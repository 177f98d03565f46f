"""Shared fixtures: the benchmark game solved once per session."""

import pytest

from switchstop import GameParams, ValueFunction, solve_thresholds

# Benchmark parameter set used throughout: r=3, sigma=(2,4), K=(2,3),
# Ktilde=(5,6), lambda=(2,5).
BENCHMARK = GameParams(
    r=3.0,
    sigma1=2.0,
    sigma2=4.0,
    K1=2.0,
    K2=3.0,
    Ktilde1=5.0,
    Ktilde2=6.0,
    lambda1=2.0,
    lambda2=5.0,
)


@pytest.fixture(scope="session")
def benchmark_params():
    return BENCHMARK


@pytest.fixture(scope="session")
def benchmark_solution():
    return solve_thresholds(BENCHMARK)


@pytest.fixture(scope="session")
def benchmark_vf(benchmark_solution):
    return ValueFunction(benchmark_solution)
