"""Game parameters, threshold containers, and region conventions.

The model is a zero-sum stopping game on a scaled Brownian motion whose
volatility and stopping payoffs switch with a two-state Markov chain.
Player 1 stops below a regime-dependent level and pays ``x - K(i)``;
Player 2 stops above a higher level and receives ``x - Ktilde(i)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

REGIMES = (1, 2)


class ValidationError(ValueError):
    """Raised when parameters violate an invariant; lists every violation."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass(frozen=True)
class GameParams:
    """All model constants.

    Attributes:
        r: discount rate, > 0.
        sigma1, sigma2: volatility in regimes 1 and 2, > 0.
        K1, K2: Player-1 stopping payoff offsets per regime.
        Ktilde1, Ktilde2: Player-2 stopping payoff offsets, Ktilde_i > K_i.
        lambda1, lambda2: chain transition intensities out of each regime, > 0.
    """

    r: float
    sigma1: float
    sigma2: float
    K1: float
    K2: float
    Ktilde1: float
    Ktilde2: float
    lambda1: float
    lambda2: float

    def sigma(self, i: int) -> float:
        check_regime(i)
        return self.sigma1 if i == 1 else self.sigma2

    def K(self, i: int) -> float:
        check_regime(i)
        return self.K1 if i == 1 else self.K2

    def Ktilde(self, i: int) -> float:
        check_regime(i)
        return self.Ktilde1 if i == 1 else self.Ktilde2

    def lam(self, i: int) -> float:
        check_regime(i)
        return self.lambda1 if i == 1 else self.lambda2


def check_regime(i: int) -> int:
    """Validates that ``i`` is one of the two admissible regimes."""
    if i not in REGIMES:
        raise ValidationError([f"regime must be 1 or 2, got {i!r}"])
    return i


def validate(params: GameParams) -> GameParams:
    """Checks every parameter invariant and returns the params unchanged.

    Raises:
        ValidationError: naming every violated invariant.
    """
    problems = []
    fields = (
        ("r", params.r), ("sigma1", params.sigma1), ("sigma2", params.sigma2),
        ("K1", params.K1), ("K2", params.K2),
        ("Ktilde1", params.Ktilde1), ("Ktilde2", params.Ktilde2),
        ("lambda1", params.lambda1), ("lambda2", params.lambda2),
    )
    for name, value in fields:
        if not isinstance(value, (int, float)) or not math.isfinite(value):
            problems.append(f"{name} must be a finite real number")
    if problems:
        raise ValidationError(problems)

    if params.r <= 0:
        problems.append("discount rate must be positive")
    if params.sigma1 <= 0:
        problems.append("sigma(1) must be positive")
    if params.sigma2 <= 0:
        problems.append("sigma(2) must be positive")
    if params.lambda1 <= 0:
        problems.append("lambda(1) must be positive")
    if params.lambda2 <= 0:
        problems.append("lambda(2) must be positive")
    if params.K1 >= params.Ktilde1:
        problems.append("K(1) < Ktilde(1) violated")
    if params.K2 >= params.Ktilde2:
        problems.append("K(2) < Ktilde(2) violated")
    if problems:
        raise ValidationError(problems)
    return params


@dataclass(frozen=True)
class Thresholds:
    """The four free boundaries, ordered a1 < a2 < b1 < b2."""

    a1: float
    a2: float
    b1: float
    b2: float

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.a1, self.a2, self.b1, self.b2)

    def a(self, i: int) -> float:
        check_regime(i)
        return self.a1 if i == 1 else self.a2

    def b(self, i: int) -> float:
        check_regime(i)
        return self.b1 if i == 1 else self.b2

    def validate_ordering(self) -> "Thresholds":
        if not (self.a1 < self.a2 < self.b1 < self.b2):
            raise ValidationError(
                [f"thresholds must satisfy a1 < a2 < b1 < b2, got {self.as_tuple()}"])
        return self


@dataclass(frozen=True)
class ReducedThresholds:
    """The two free boundaries a < b of the single-regime game."""

    a: float
    b: float

    def validate_ordering(self) -> "ReducedThresholds":
        if not (self.a < self.b):
            raise ValidationError([f"thresholds must satisfy a < b, got ({self.a}, {self.b})"])
        return self


@dataclass(frozen=True)
class Regions:
    """Stop and continuation half-lines for both players in one regime.

    Intervals are (lo, hi) pairs; boundary points belong to the stopping
    regions (first-exit-time convention on open continuation regions).
    """

    p1_stop: Tuple[float, float]
    p1_continue: Tuple[float, float]
    p2_stop: Tuple[float, float]
    p2_continue: Tuple[float, float]

    def p1_stops(self, x: float) -> bool:
        return x <= self.p1_stop[1]

    def p2_stops(self, x: float) -> bool:
        return x >= self.p2_stop[0]


def regions(th: Thresholds, i: int) -> Regions:
    """Returns stop and continuation intervals for each player in regime ``i``.

    Player 1 stops on (-inf, a_i], continues on (a_i, inf); Player 2 stops on
    [b_i, inf), continues on (-inf, b_i).
    """
    th.validate_ordering()
    a_i, b_i = th.a(i), th.b(i)
    return Regions(
        p1_stop=(-math.inf, a_i),
        p1_continue=(a_i, math.inf),
        p2_stop=(b_i, math.inf),
        p2_continue=(-math.inf, b_i),
    )
