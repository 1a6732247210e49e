"""Closed-form outage and throughput checks.

Reference values were frozen from an independent route: the outage
exponents assembled with scipy's gamma/gammainc and thresholds solved
with scipy.optimize.brentq at machine tolerance. Structural tests verify
the fixed-point property and limiting behavior directly.
"""

import math

import numpy as np
import pytest
from scipy.optimize import brentq
from scipy.special import gammainc
from scipy.special import gamma as sp_gamma

from oppjam import (
    SystemParams,
    beta_b_star,
    beta_e_star,
    conditional_gain_moment,
    connection_outage,
    derive_constants,
    random_baseline_throughput,
    secrecy_outage,
    selected_intensity,
    selection_probability,
    throughput,
    throughput_derivative,
)

# interference-limited example scenario (n0 = 0)
EX = SystemParams(p_s=100.0, p_j=1000.0, n0=0.0, d=1.0, alpha=3.0,
                  lambda_j=0.1, lambda_e=0.01, sigma=0.1, epsilon=0.01)
# same scenario with -90 dBm receiver noise
EXN = SystemParams(p_s=100.0, p_j=1000.0, n0=1e-9, d=1.0, alpha=3.0,
                   lambda_j=0.1, lambda_e=0.01, sigma=0.1, epsilon=0.01)


def test_selection_probability():
    assert math.isclose(selection_probability(1.0), 0.63212055882855778, rel_tol=1e-12)
    assert math.isclose(selection_probability(1e-9), 1e-9, rel_tol=1e-6)
    assert selection_probability(50.0) == pytest.approx(1.0, abs=1e-15)
    for bad in (0.0, -1.0, math.nan):
        with pytest.raises(ValueError):
            selection_probability(bad)


def test_selected_intensity():
    assert math.isclose(selected_intensity(1.0, 0.1), 0.063212055882855778, rel_tol=1e-12)
    with pytest.raises(ValueError):
        selected_intensity(1.0, 0.0)


def test_conditional_gain_moment():
    rho = 2.0 / 3.0
    # frozen quadrature of int_0^1 g^rho e^-g dg / (1 - 1/e)
    assert math.isclose(conditional_gain_moment(1.0, rho), 0.52507845529522279, rel_tol=1e-12)
    # wide threshold: plain moment Gamma(1 + rho)
    assert math.isclose(conditional_gain_moment(60.0, rho), 0.90274529295093375, rel_tol=1e-9)
    # narrow threshold: delta^rho / (rho + 1)
    d = 1e-8
    assert math.isclose(conditional_gain_moment(d, rho), d**rho / (rho + 1.0), rel_tol=1e-6)
    # always below the unconditional moment
    for d in (0.1, 0.5, 2.0, 5.0):
        assert conditional_gain_moment(d, rho) < 0.90274529295093375
    with pytest.raises(ValueError):
        conditional_gain_moment(1.0, 1.0)


def test_connection_outage_frozen():
    assert math.isclose(connection_outage(EX, 1.0, 1.0), 0.72653788748921233, rel_tol=1e-12)
    assert connection_outage(EX, 1.0, 0.0) == 0.0
    with pytest.raises(ValueError):
        connection_outage(EX, 1.0, -0.1)
    with pytest.raises(ValueError):
        connection_outage(EX, 0.0, 1.0)


def test_connection_outage_monotone():
    vals_beta = [connection_outage(EX, 1.0, b) for b in (0.01, 0.1, 1.0, 10.0)]
    assert all(x < y for x, y in zip(vals_beta, vals_beta[1:]))
    vals_delta = [connection_outage(EX, d, 1.0) for d in (0.1, 0.5, 1.0, 5.0)]
    assert all(x < y for x, y in zip(vals_delta, vals_delta[1:]))  # more jamming hurts the link


def test_secrecy_outage_frozen():
    assert math.isclose(secrecy_outage(EX, 1.0, 1.0), 0.013994222028023251, rel_tol=1e-12)
    with pytest.raises(ValueError):
        secrecy_outage(EX, 1.0, 0.0)


def test_secrecy_outage_monotone():
    vals_beta = [secrecy_outage(EX, 1.0, b) for b in (0.1, 1.0, 10.0)]
    assert all(x > y for x, y in zip(vals_beta, vals_beta[1:]))
    vals_delta = [secrecy_outage(EX, d, 1.0) for d in (0.1, 0.5, 1.0, 5.0)]
    assert all(x > y for x, y in zip(vals_delta, vals_delta[1:]))  # more jamming protects


def test_beta_e_star_frozen_and_fixed_point():
    be = beta_e_star(EX, 1.0)
    assert math.isclose(be, 1.6604939275211332, rel_tol=1e-12)
    assert abs(secrecy_outage(EX, 1.0, be) - EX.epsilon) <= 1e-12


def test_beta_b_star_frozen_and_fixed_point():
    bb = beta_b_star(EX, 1.0)
    assert math.isclose(bb, 0.023163902419736166, rel_tol=1e-10)
    assert abs(connection_outage(EX, 1.0, bb) - EX.sigma) <= 1e-12
    bbn = beta_b_star(EXN, 1.0)
    assert math.isclose(bbn, 0.023163902419659765, rel_tol=1e-9)


def test_beta_b_star_vs_brentq():
    # independent root-finder on the same increasing exponent equation
    rng = np.random.default_rng(42)
    for _ in range(10):
        p = SystemParams.from_dbm(
            float(rng.uniform(15, 25)), float(rng.uniform(25, 35)), float(rng.uniform(-95, -75)),
            d=float(rng.uniform(0.8, 1.5)), alpha=float(rng.uniform(2.5, 3.6)),
            lambda_j=float(rng.uniform(0.05, 0.2)), lambda_e=float(rng.uniform(0.003, 0.03)),
            sigma=float(rng.uniform(0.06, 0.2)), epsilon=float(rng.uniform(0.005, 0.03)),
        )
        delta = float(10 ** rng.uniform(-2, 1))
        k = derive_constants(p)
        g = float(gammainc(k.rho + 1.0, delta)) * float(sp_gamma(k.rho + 1.0))
        target = -math.log1p(-p.sigma)
        ref = brentq(lambda x: k.b * x + k.a * g * x**k.rho - target, 1e-30, 1e14, rtol=8.9e-16)
        assert math.isclose(beta_b_star(p, delta), ref, rel_tol=1e-9)


def test_throughput_design_point_zero_margin():
    # noise floor plus wide threshold: redundancy exceeds the code rate
    dp = throughput(EXN, 1.0)
    assert math.isclose(dp.beta_b, 0.023163902419659765, rel_tol=1e-9)
    assert math.isclose(dp.r_t, 0.033037271444388804, rel_tol=1e-9)
    assert math.isclose(dp.r_e, 1.4116941106266234, rel_tol=1e-12)
    assert dp.mu == 0.0


def test_throughput_design_point_positive():
    # frozen from the scipy/brentq route
    dp = throughput(EXN, 1e-4)
    assert math.isclose(dp.beta_b, 94041824.73345838, rel_tol=1e-9)
    assert math.isclose(dp.beta_e, 834583.3890620228, rel_tol=1e-12)
    assert math.isclose(dp.mu, 6.134490722181335, rel_tol=1e-9)
    dp2 = throughput(EXN, 5e-3)
    assert math.isclose(dp2.beta_b, 5416.651713489721, rel_tol=1e-9)
    assert math.isclose(dp2.r_t, 12.403451934131857, rel_tol=1e-9)
    assert math.isclose(dp2.r_e, 11.210820844721734, rel_tol=1e-12)
    assert math.isclose(dp2.mu, 1.0733679804691103, rel_tol=1e-9)


def test_throughput_derivative_vs_finite_difference():
    for delta in (0.02, 0.2, 1.0, 4.0):
        h = delta * 1e-6

        def f(x):
            dpt = throughput(EXN, x)
            return dpt.r_t - dpt.r_e

        fd = (f(delta + h) - f(delta - h)) / (2.0 * h)
        an = throughput_derivative(EXN, delta)
        assert math.isclose(an, fd, rel_tol=1e-6, abs_tol=1e-9)


def test_random_baseline_frozen():
    base = random_baseline_throughput(EXN, 0.00498752080731768)
    assert math.isclose(base.beta_b, 14.661316447648868, rel_tol=1e-9)
    assert math.isclose(base.beta_e, 2369.2456067065073, rel_tol=1e-12)
    assert base.mu == 0.0
    with pytest.raises(ValueError):
        random_baseline_throughput(EXN, 0.0)
    with pytest.raises(ValueError):
        random_baseline_throughput(EXN, 1.5)


def test_random_baseline_exponent_identity():
    # retained field keeps the unconditional gain moment Gamma(1 + rho)
    ret = 0.3
    base = random_baseline_throughput(EXN, ret)
    k = derive_constants(EXN)
    lhs = k.b * base.beta_b + k.a * ret * 0.90274529295093375 * base.beta_b**k.rho
    assert abs(lhs - (-math.log1p(-EXN.sigma))) <= 1e-10
    # full retention is the delta -> inf limit of the threshold scheme
    full = random_baseline_throughput(EXN, 1.0)
    wide = throughput(EXN, 40.0)
    assert math.isclose(full.beta_b, wide.beta_b, rel_tol=1e-9)
    assert full.delta == math.inf


def test_threshold_beats_retention_matched_baseline():
    # the truncated gain moment is below Gamma(1 + rho), so at equal active
    # density the selected field disturbs the receiver strictly less
    for delta in (1e-3, 0.05, 1.0, 5.0):
        ret = selection_probability(delta)
        prop = throughput(EXN, delta)
        base = random_baseline_throughput(EXN, ret)
        assert prop.beta_b >= base.beta_b
        assert math.isclose(prop.beta_e, base.beta_e, rel_tol=1e-12)
        assert prop.mu >= base.mu
