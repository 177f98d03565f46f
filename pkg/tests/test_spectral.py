"""Closed-form spectral constants: quartic roots, couplings, particular terms."""

import dataclasses

import numpy as np
import numpy.testing as npt
import pytest
from hypothesis import given, settings, strategies as st

from switchstop import GameParams, ValidationError, compute_spectral

from conftest import BENCHMARK

# frozen oracle for the benchmark parameters
BENCH_BETA = np.array([-1.6851482830555797, -0.8125732361546445,
                       0.8125732361546445, 1.6851482830555797])
BENCH_RHO = np.array([-0.33972473588516827, 1.8397247358851683,
                      1.8397247358851683, -0.33972473588516827])
BENCH_GAMMA = np.array([1.5811388300841898, -1.5811388300841898])
BENCH_GAMMA_TILDE = np.array([1.0, -1.0])


def quartic_roots_oracle(params):
    """Independent root finder for the characteristic quartic in beta."""
    c1 = 2.0 * (params.r + params.lambda1) / params.sigma1**2
    c2 = 2.0 * (params.r + params.lambda2) / params.sigma2**2
    d = 4.0 * params.lambda1 * params.lambda2 / (params.sigma1**2 *
                                                 params.sigma2**2)
    roots = np.roots([1.0, 0.0, -(c1 + c2), 0.0, c1 * c2 - d])
    assert np.max(np.abs(roots.imag)) < 1e-9
    return np.sort(roots.real)


def test_benchmark_frozen_values():
    sd = compute_spectral(BENCHMARK)
    npt.assert_allclose(sd.beta, BENCH_BETA, rtol=1e-12)
    npt.assert_allclose(sd.rho, BENCH_RHO, rtol=1e-12)
    npt.assert_allclose(sd.gamma, BENCH_GAMMA, rtol=1e-12)
    npt.assert_allclose(sd.gamma_tilde, BENCH_GAMMA_TILDE, rtol=1e-12)
    assert sd.p == pytest.approx(0.4, abs=1e-14)
    assert sd.q == pytest.approx(-1.2, abs=1e-14)
    assert sd.p_tilde == pytest.approx(0.625, abs=1e-14)
    assert sd.q_tilde == pytest.approx(-3.125, abs=1e-14)


def test_benchmark_matches_polynomial_root_oracle():
    sd = compute_spectral(BENCHMARK)
    npt.assert_allclose(sd.beta, quartic_roots_oracle(BENCHMARK),
                        rtol=1e-10, atol=1e-12)


def test_symmetric_case_closed_form():
    # equal volatilities and rates: s^2 - 5 s + 5.25 = 0 -> s in {1.5, 3.5}
    p = GameParams(r=3.0, sigma1=2.0, sigma2=2.0, K1=2.0, K2=3.0,
                   Ktilde1=5.0, Ktilde2=6.0, lambda1=2.0, lambda2=2.0)
    sd = compute_spectral(p)
    expect = np.array([-np.sqrt(3.5), -np.sqrt(1.5),
                       np.sqrt(1.5), np.sqrt(3.5)])
    npt.assert_allclose(sd.beta, expect, rtol=1e-14)
    npt.assert_allclose(sd.rho, [-1.0, 1.0, 1.0, -1.0], rtol=1e-12)


def test_decoupled_exponents_square_to_constants():
    sd = compute_spectral(BENCHMARK)
    c1 = 2.0 * (BENCHMARK.r + BENCHMARK.lambda1) / BENCHMARK.sigma1**2
    c2 = 2.0 * (BENCHMARK.r + BENCHMARK.lambda2) / BENCHMARK.sigma2**2
    npt.assert_allclose(sd.gamma, [np.sqrt(c1), -np.sqrt(c1)], rtol=1e-14)
    npt.assert_allclose(sd.gamma_tilde, [np.sqrt(c2), -np.sqrt(c2)],
                        rtol=1e-14)


def test_affine_particular_terms_satisfy_decoupled_odes():
    # p x + q kills the zeroth/first order part of each decoupled equation
    sd = compute_spectral(BENCHMARK)
    r, l1, l2 = BENCHMARK.r, BENCHMARK.lambda1, BENCHMARK.lambda2
    for x in (-3.0, 0.0, 4.7):
        resid1 = -(r + l1) * (sd.p * x + sd.q) + l1 * (x - BENCHMARK.K2)
        resid2 = (-(r + l2) * (sd.p_tilde * x + sd.q_tilde)
                  + l2 * (x - BENCHMARK.Ktilde1))
        assert abs(resid1) < 1e-12
        assert abs(resid2) < 1e-12


def test_coupling_identity_links_both_regimes():
    # rho solves the regime-1 row; the regime-2 row must then hold for free
    sd = compute_spectral(BENCHMARK)
    lhs = sd.rho * ((BENCHMARK.r + BENCHMARK.lambda2)
                    - 0.5 * BENCHMARK.sigma2**2 * sd.beta**2)
    npt.assert_allclose(lhs, BENCHMARK.lambda2, rtol=1e-10)


def test_regime_swap_inverts_couplings():
    swapped = GameParams(r=BENCHMARK.r, sigma1=BENCHMARK.sigma2,
                         sigma2=BENCHMARK.sigma1, K1=BENCHMARK.K2,
                         K2=BENCHMARK.K1, Ktilde1=BENCHMARK.Ktilde2,
                         Ktilde2=BENCHMARK.Ktilde1,
                         lambda1=BENCHMARK.lambda2,
                         lambda2=BENCHMARK.lambda1)
    sd = compute_spectral(BENCHMARK)
    sd_swap = compute_spectral(swapped)
    npt.assert_allclose(sd_swap.beta, sd.beta, rtol=1e-12)
    npt.assert_allclose(sd_swap.rho, 1.0 / sd.rho, rtol=1e-10)


def test_rejects_invalid_params():
    with pytest.raises(ValidationError):
        compute_spectral(dataclasses.replace(BENCHMARK, sigma1=-2.0))


param_boxes = dict(
    r=st.floats(0.1, 10.0),
    s1=st.floats(0.5, 6.0),
    s2=st.floats(0.5, 6.0),
    l1=st.floats(0.1, 10.0),
    l2=st.floats(0.1, 10.0),
)


@settings(max_examples=200, deadline=None)
@given(**param_boxes)
def test_spectral_invariants(r, s1, s2, l1, l2):
    p = GameParams(r=r, sigma1=s1, sigma2=s2, K1=2.0, K2=3.0,
                   Ktilde1=5.0, Ktilde2=6.0, lambda1=l1, lambda2=l2)
    sd = compute_spectral(p)
    # four real roots, strictly ascending, in symmetric pairs
    assert np.all(np.diff(sd.beta) > 0)
    npt.assert_allclose(sd.beta[0], -sd.beta[3], rtol=1e-12)
    npt.assert_allclose(sd.beta[1], -sd.beta[2], rtol=1e-12)
    # rho depends only on beta^2, so outer/inner pairs share values
    npt.assert_allclose(sd.rho[0], sd.rho[3], rtol=1e-10)
    npt.assert_allclose(sd.rho[1], sd.rho[2], rtol=1e-10)
    # every root solves the quartic computed independently
    npt.assert_allclose(np.sort(sd.beta), quartic_roots_oracle(p),
                        rtol=1e-8, atol=1e-10)
    # cross-regime consistency of the coupling coefficients
    lhs = sd.rho * ((r + l2) - 0.5 * s2**2 * sd.beta**2)
    npt.assert_allclose(lhs, l2, rtol=1e-8, atol=1e-10)
    # affine terms
    npt.assert_allclose(sd.p * (r + l1), l1, rtol=1e-12)
    npt.assert_allclose(sd.q * (r + l1), -l1 * p.K2, rtol=1e-12, atol=1e-12)
    npt.assert_allclose(sd.p_tilde * (r + l2), l2, rtol=1e-12)
    npt.assert_allclose(sd.q_tilde * (r + l2), -l2 * p.Ktilde1,
                        rtol=1e-12, atol=1e-12)
