"""Piecewise closed-form value function with analytic derivatives.

Each regime's value is linear in the two outer stopping pieces and a sum of
exponentials (plus an affine part where the other regime has stopped) in the
two inner pieces.  Exponentials are stored rebased to each piece's left
boundary so evaluation never forms e^{beta x} at large |x|.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from .model import check_regime
from .smoothfit import SmoothFitSolution


class BoundaryDerivativeError(ValueError):
    """Second derivative requested exactly at a free boundary."""


@dataclass(frozen=True)
class _Piece:
    """One closed-form piece: coeffs . e^{rates (x - x0)} + slope x + intercept."""

    x0: float
    rates: np.ndarray
    coeffs: np.ndarray
    slope: float
    intercept: float

    def value(self, x):
        acc = self.slope * np.asarray(x, dtype=float) + self.intercept
        for rate, coef in zip(self.rates, self.coeffs):
            acc = acc + coef * np.exp(rate * (np.asarray(x, dtype=float) - self.x0))
        return acc

    def deriv(self, x, order: int):
        x = np.asarray(x, dtype=float)
        acc = np.full_like(x, self.slope if order == 1 else 0.0)
        for rate, coef in zip(self.rates, self.coeffs):
            acc = acc + coef * rate**order * np.exp(rate * (x - self.x0))
        return acc


class ValueFunction:
    """Evaluates v(x, i) and its derivatives from a converged solution."""

    def __init__(self, solution: SmoothFitSolution):
        self.solution = solution
        params, sd, th = solution.params, solution.spectral, solution.thresholds
        co = solution.coeffs
        none = np.empty(0)

        def rebased(coeffs, rates, x0):
            return np.asarray(coeffs) * np.exp(np.asarray(rates) * x0)

        # regime 1: boundaries a1, a2, b1
        self._bounds = {
            1: np.array([th.a1, th.a2, th.b1]),
            2: np.array([th.a2, th.b1, th.b2]),
        }
        self._pieces = {
            1: (
                _Piece(th.a1, none, none, 1.0, -params.K1),
                _Piece(th.a1, sd.gamma, rebased(co.C, sd.gamma, th.a1), sd.p, sd.q),
                _Piece(th.a2, sd.beta, rebased(co.A, sd.beta, th.a2), 0.0, 0.0),
                _Piece(th.b1, none, none, 1.0, -params.Ktilde1),
            ),
            2: (
                _Piece(th.a2, none, none, 1.0, -params.K2),
                _Piece(th.a2, sd.beta, rebased(co.B, sd.beta, th.a2), 0.0, 0.0),
                _Piece(th.b1, sd.gamma_tilde, rebased(co.Ctilde, sd.gamma_tilde, th.b1),
                       sd.p_tilde, sd.q_tilde),
                _Piece(th.b2, none, none, 1.0, -params.Ktilde2),
            ),
        }

    @classmethod
    def from_solution(cls, solution: SmoothFitSolution) -> "ValueFunction":
        return cls(solution)

    @property
    def thresholds(self):
        return self.solution.thresholds

    @property
    def params(self):
        return self.solution.params

    def boundaries(self, i: int) -> np.ndarray:
        """The three pasting points of regime ``i``."""
        check_regime(i)
        return self._bounds[i].copy()

    def piece_index(self, x, i: int):
        """Index of the active piece; pieces are right-closed, left piece at a boundary."""
        check_regime(i)
        return np.searchsorted(self._bounds[i], np.asarray(x, dtype=float), side="left")

    def eval(self, x: float, i: int) -> float:
        """v(x, i) from the single active piece."""
        check_regime(i)
        idx = int(np.searchsorted(self._bounds[i], x, side="left"))
        return float(self._pieces[i][idx].value(x))

    def eval_deriv(self, x: float, i: int, order: int = 1) -> float:
        """Analytic derivative of the active piece.

        Raises:
            BoundaryDerivativeError: for order 2 exactly at a pasting point,
                where the function is only C1.
        """
        check_regime(i)
        if order not in (1, 2):
            raise ValueError(f"order must be 1 or 2, got {order}")
        if order == 2 and np.any(self._bounds[i] == x):
            raise BoundaryDerivativeError("second derivative undefined at free boundary")
        idx = int(np.searchsorted(self._bounds[i], x, side="left"))
        return float(self._pieces[i][idx].deriv(x, order))

    def one_sided(self, x: float, i: int, side: str, order: int = 0) -> float:
        """Evaluates the piece to the ``side`` ("left"/"right") of a boundary at x."""
        check_regime(i)
        bounds = self._bounds[i]
        idx = int(np.searchsorted(bounds, x, side="left" if side == "left" else "right"))
        piece = self._pieces[i][idx]
        return float(piece.value(x) if order == 0 else piece.deriv(x, order))

    def values(self, xs: np.ndarray, i: int) -> np.ndarray:
        """Vectorized v(., i)."""
        check_regime(i)
        xs = np.asarray(xs, dtype=float)
        idx = np.searchsorted(self._bounds[i], xs, side="left")
        out = np.empty_like(xs)
        for k, piece in enumerate(self._pieces[i]):
            mask = idx == k
            if np.any(mask):
                out[mask] = piece.value(xs[mask])
        return out

    def derivs(self, xs: np.ndarray, i: int, order: int = 1) -> np.ndarray:
        """Vectorized derivative; order 2 rejects grid points on a boundary."""
        check_regime(i)
        xs = np.asarray(xs, dtype=float)
        if order == 2 and np.any(np.isin(xs, self._bounds[i])):
            raise BoundaryDerivativeError("second derivative undefined at free boundary")
        idx = np.searchsorted(self._bounds[i], xs, side="left")
        out = np.empty_like(xs)
        for k, piece in enumerate(self._pieces[i]):
            mask = idx == k
            if np.any(mask):
                out[mask] = piece.deriv(xs[mask], order)
        return out

    def tabulate(self, lo: float, hi: float, count: int) -> Dict[str, np.ndarray]:
        """Uniform-grid export: values, slopes, and active piece ids per regime."""
        xs = np.linspace(lo, hi, count)
        return {
            "x": xs,
            "v1": self.values(xs, 1),
            "v2": self.values(xs, 2),
            "dv1": self.derivs(xs, 1, 1),
            "dv2": self.derivs(xs, 2, 1),
            "piece1": self.piece_index(xs, 1),
            "piece2": self.piece_index(xs, 2),
        }

    def pasting_points(self) -> Tuple[Tuple[float, int], ...]:
        """All (boundary, regime) pairs where pieces meet."""
        th = self.solution.thresholds
        return ((th.a1, 1), (th.a2, 1), (th.b1, 1),
                (th.a2, 2), (th.b1, 2), (th.b2, 2))
