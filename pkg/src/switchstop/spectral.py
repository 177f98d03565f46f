"""Closed-form spectral constants of the coupled value ODEs.

On the common continuation interval both regime values solve a coupled pair
of second-order ODEs; exponential ansatz e^{beta x} turns the pair into a
quartic in beta that factors as a quadratic in s = beta^2.  Outside that
interval only one regime continues and the ODE decouples, giving the
single-regime exponents gamma, gammaTilde plus an affine particular solution.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import GameParams, validate


@dataclass(frozen=True)
class SpectralData:
    """Every closed-form constant needed to write the value function.

    Attributes:
        beta: 4 quartic roots, ascending; beta[0] = -beta[3], beta[1] = -beta[2].
        rho: coupling coefficients, rho[k] paired with beta[k]; the regime-2
            coefficient on e^{beta_k x} is rho[k] times the regime-1 one.
        gamma: regime-1 decoupled exponents (+root, -root).
        gamma_tilde: regime-2 decoupled exponents (+root, -root).
        p, q: affine particular solution p*x + q of the regime-1 decoupled ODE.
        p_tilde, q_tilde: same for the regime-2 decoupled ODE.
    """

    beta: np.ndarray
    rho: np.ndarray
    gamma: np.ndarray
    gamma_tilde: np.ndarray
    p: float
    q: float
    p_tilde: float
    q_tilde: float


def _coefficients(params: GameParams):
    c1 = 2.0 * (params.r + params.lambda1) / params.sigma1**2
    c2 = 2.0 * (params.r + params.lambda2) / params.sigma2**2
    d = 4.0 * params.lambda1 * params.lambda2 / (params.sigma1**2 * params.sigma2**2)
    return c1, c2, d


def characteristic_roots(params: GameParams) -> np.ndarray:
    """The four real roots of (beta^2 - c1)(beta^2 - c2) = d, ascending.

    Solved as a quadratic in s = beta^2.  Both s-roots are positive:
    the quadratic at s=0 equals c1*c2 - d = 4(r^2 + r(lambda1+lambda2)) /
    (sigma1^2 sigma2^2) > 0 while at s=min(c1,c2) it equals -d < 0.
    """
    validate(params)
    c1, c2, d = _coefficients(params)
    disc = (c1 - c2) ** 2 + 4.0 * d
    s_plus = 0.5 * ((c1 + c2) + np.sqrt(disc))
    # product form avoids cancellation in the smaller root
    s_minus = (c1 * c2 - d) / s_plus
    assert c1 * c2 - d > 0 and s_minus > 0, "root positivity invariant broken"
    return np.array([-np.sqrt(s_plus), -np.sqrt(s_minus), np.sqrt(s_minus), np.sqrt(s_plus)])


def rho_coefficients(params: GameParams, beta: np.ndarray) -> np.ndarray:
    """Coupling factors rho[k] = [(r+lambda1) - sigma1^2 beta_k^2 / 2] / lambda1.

    Positive for the inner root pair, negative for the outer pair.
    """
    beta = np.asarray(beta, dtype=float)
    return ((params.r + params.lambda1) - 0.5 * params.sigma1**2 * beta**2) / params.lambda1


def single_regime_constants(params: GameParams):
    """Decoupled-interval exponents and affine particular solutions.

    Returns:
        (gamma, gamma_tilde, p, q, p_tilde, q_tilde) where gamma and
        gamma_tilde are (+root, -root) arrays.
    """
    validate(params)
    g = np.sqrt(2.0 * (params.r + params.lambda1)) / params.sigma1
    gt = np.sqrt(2.0 * (params.r + params.lambda2)) / params.sigma2
    p = params.lambda1 / (params.r + params.lambda1)
    q = -params.lambda1 * params.K2 / (params.r + params.lambda1)
    p_tilde = params.lambda2 / (params.r + params.lambda2)
    q_tilde = -params.lambda2 * params.Ktilde1 / (params.r + params.lambda2)
    return np.array([g, -g]), np.array([gt, -gt]), p, q, p_tilde, q_tilde


def compute_spectral(params: GameParams) -> SpectralData:
    """Assembles all spectral constants for validated parameters."""
    beta = characteristic_roots(params)
    rho = rho_coefficients(params, beta)
    gamma, gamma_tilde, p, q, p_tilde, q_tilde = single_regime_constants(params)
    return SpectralData(beta=beta, rho=rho, gamma=gamma, gamma_tilde=gamma_tilde,
                        p=p, q=q, p_tilde=p_tilde, q_tilde=q_tilde)


def quartic_residuals(params: GameParams, beta: np.ndarray) -> np.ndarray:
    """Back-substitution residuals of the quartic, relative to its leading scale."""
    c1, c2, d = _coefficients(params)
    beta = np.asarray(beta, dtype=float)
    raw = (beta**2 - c1) * (beta**2 - c2) - d
    scale = max(c1 * c2, d, 1.0)
    return raw / scale
