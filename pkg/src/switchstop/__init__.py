"""Equilibrium thresholds, value functions, and Monte Carlo checks for a
zero-sum stopping game on a two-regime scaled Brownian motion."""

from .model import (GameParams, ReducedThresholds, Regions, Thresholds,
                    ValidationError, check_regime, regions, validate)
from .spectral import SpectralData, compute_spectral
from .smoothfit import (CoefficientSet, NoConvergenceError, OrderingError,
                        ReducedSolution, SingularMatrixError, SmoothFitSolution,
                        eval_F1, eval_F2, initial_guess, pasting_residuals,
                        project_ordered, recover_coefficients, solve_reduction,
                        solve_thresholds)
from .valuefn import BoundaryDerivativeError, ValueFunction
from .verify import (VerificationReport, check_bounds, check_smoothness,
                     check_vi, default_grid, generator_residual,
                     verify_solution)
from .mcsim import (DeviationOutcome, SimConfig, SimReport,
                    ThresholdStrategyPair, nash_deviation_test,
                    occupancy_fraction, simulate_payoff, trace_paths)

__version__ = "0.1.0"

__all__ = [
    "GameParams", "Thresholds", "ReducedThresholds", "Regions", "ValidationError",
    "check_regime", "regions", "validate",
    "SpectralData", "compute_spectral",
    "CoefficientSet", "SmoothFitSolution", "ReducedSolution",
    "NoConvergenceError", "OrderingError", "SingularMatrixError",
    "eval_F1", "eval_F2", "initial_guess", "pasting_residuals",
    "project_ordered", "recover_coefficients", "solve_reduction", "solve_thresholds",
    "BoundaryDerivativeError", "ValueFunction",
    "VerificationReport", "check_bounds", "check_smoothness", "check_vi",
    "default_grid", "generator_residual", "verify_solution",
    "DeviationOutcome", "SimConfig", "SimReport", "ThresholdStrategyPair",
    "nash_deviation_test", "occupancy_fraction", "simulate_payoff", "trace_paths",
    "__version__",
]
