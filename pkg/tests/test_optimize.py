"""Threshold-search checks: root bisection, golden section, and the
combined optimizer including its boundary and plateau behavior."""

import math

import pytest

from oppjam import (
    NumericalError,
    SystemParams,
    bisect_root,
    golden_section,
    optimize_delta,
    throughput,
    throughput_derivative,
)

IV = SystemParams.from_dbm(20.0, 30.0, -90.0, d=1.0, alpha=3.0,
                           lambda_j=0.1, lambda_e=0.01, sigma=0.1, epsilon=0.01)


def test_bisect_root_cosine():
    r = bisect_root(math.cos, 0.0, 3.0, 1e-12)
    assert abs(r - math.pi / 2.0) <= 1e-11


def test_bisect_root_endpoint_zero():
    assert bisect_root(lambda x: x, 0.0, 1.0, 1e-9) == 0.0
    assert bisect_root(lambda x: x - 1.0, 0.0, 1.0, 1e-9) == 1.0


def test_bisect_root_errors():
    with pytest.raises(NumericalError):
        bisect_root(lambda x: x * x + 1.0, -1.0, 1.0, 1e-9)  # no sign change
    with pytest.raises(ValueError):
        bisect_root(math.cos, 3.0, 0.0, 1e-9)
    with pytest.raises(ValueError):
        bisect_root(math.cos, 0.0, 3.0, 0.0)


def test_golden_section_parabola():
    x, fx, iters = golden_section(lambda x: -(x - 2.0) ** 2, 0.0, 5.0)
    assert abs(x - 2.0) <= 1e-7
    assert fx <= 0.0
    assert iters > 0


def test_golden_section_plateau_prefers_left():
    x, _, _ = golden_section(lambda x: 0.0, 1.0, 2.0)
    assert x <= 1.0 + 1e-6


def test_optimize_interior_derivative_bisection():
    res = optimize_delta(IV, search_lo=1e-6, search_hi=20.0)
    assert res.method == "derivative-bisection"
    assert 1e-6 < res.delta_star < 1e-3  # noise-limited scenario, tiny threshold
    assert abs(throughput_derivative(IV, res.delta_star)) < 1e-6
    assert res.design.mu > 0.0
    assert res.iterations > 0
    # local optimality
    for eps in (1e-3, 1e-2):
        assert res.design.mu >= throughput(IV, res.delta_star * (1.0 + eps)).mu
        assert res.design.mu >= throughput(IV, res.delta_star * (1.0 - eps)).mu


def test_optimize_methods_agree():
    auto = optimize_delta(IV, search_lo=1e-6, search_hi=20.0)
    gold = optimize_delta(IV, search_lo=1e-6, search_hi=20.0, method="golden")
    assert gold.method == "golden-section-fallback"
    assert abs(gold.delta_star - auto.delta_star) <= 1e-5 * auto.delta_star
    assert math.isclose(gold.design.mu, auto.design.mu, rel_tol=1e-9)


def test_optimize_boundary_when_optimum_clipped():
    # on the default interval the interior optimum lies below search_lo,
    # so the maximum sits on the lower boundary
    res = optimize_delta(IV)
    assert res.method == "boundary"
    assert res.delta_star == 1e-3
    assert math.isclose(res.design.mu, throughput(IV, 1e-3).mu, rel_tol=1e-12)


def test_optimize_plateau_ties_to_smallest_delta():
    crowded = SystemParams(p_s=100.0, p_j=1000.0, n0=1e-9, d=1.0, alpha=3.0,
                           lambda_j=0.1, lambda_e=10.0, sigma=0.1, epsilon=0.01)
    res = optimize_delta(crowded)
    assert res.design.mu == 0.0
    assert res.delta_star == 1e-3
    assert res.method == "boundary"


def test_optimize_validates_interval():
    with pytest.raises(ValueError):
        optimize_delta(IV, search_lo=0.0, search_hi=1.0)
    with pytest.raises(ValueError):
        optimize_delta(IV, search_lo=2.0, search_hi=1.0)
    with pytest.raises(ValueError):
        optimize_delta(IV, method="newton")


def test_optimize_dominates_grid():
    res = optimize_delta(IV, search_lo=1e-6, search_hi=20.0)
    n = 120
    for i in range(n):
        x = 1e-6 * (20.0 / 1e-6) ** (i / (n - 1))
        assert throughput(IV, x).mu <= res.design.mu + 1e-9
