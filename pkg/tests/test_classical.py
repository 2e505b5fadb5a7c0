"""Flat-case mode weights and the gap-series construction."""

import math

import mpmath as mp
import numpy as np
import pytest

from hypolib.classical import (
    associate_deviation_bound,
    associated_biharmonic,
    demo_lacunary_spec,
    functional_from_series,
    lacunary_circle_sup,
    lacunary_function,
    lacunary_growth_probe,
    lacunary_series,
    lacunary_witness,
    radial_log_weight,
    runge_spiral_fit,
    spiral_deviation,
)
from hypolib.errors import FitFailed
from hypolib.polynomials import ComplexPoly


def brute_weight(n: int, r: float) -> float:
    # exact: sum_k x^k/(k+n) = x^-n (-log(1-x) - sum_{j<=n} x^j/j)
    mp.mp.dps = 40
    x = mp.mpf(r) ** 2
    if x == 0:
        tail = mp.mpf(0)
    else:
        tail = -mp.log(1 - x) - sum(x**j / j for j in range(1, n + 1))
        tail /= x**n
    harmonic = sum(mp.mpf(1) / j for j in range(1, n + 1))
    return float(harmonic + tail)


def test_weight_at_zero_is_the_harmonic_number():
    assert radial_log_weight(0, 0.0) == 0.0
    assert radial_log_weight(3, 0.0) == pytest.approx(1 + 0.5 + 1 / 3, rel=1e-14)


def test_weight_closed_forms():
    for r in (0.2, 0.7, 0.99):
        assert radial_log_weight(0, r) == pytest.approx(-math.log1p(-r * r), rel=1e-13)
        # exact identity: the order-1 weight is the order-0 one over r^2
        assert radial_log_weight(1, r) == pytest.approx(
            radial_log_weight(0, r) / (r * r), rel=1e-13
        )


@pytest.mark.parametrize(
    "n,r",
    [(2, 0.3), (5, 0.9), (3, 0.999), (7, 0.99999), (4, 1e-4), (1, 0.5)],
)
def test_weight_matches_direct_summation(n, r):
    assert radial_log_weight(n, r) == pytest.approx(brute_weight(n, r), rel=1e-11)


def test_weight_mode_expansion_via_fft():
    # log(1/|1 - z e^{-i phi}|^2) has cosine coefficients r^m/m; the
    # transform weights follow from termwise integration
    from hypolib.numerics import circle_fft, fourier_mode

    r = 0.6
    size = 2048
    phi = 2 * math.pi * np.arange(size) / size
    f = -np.log(np.abs(1 - r * np.exp(-1j * phi)) ** 2)
    coeffs = circle_fft(f)
    for m in (1, 2, 5):
        assert fourier_mode(coeffs, m) == pytest.approx(r**m / m, abs=1e-12)


def test_spiral_fit_is_reported_infeasible():
    with pytest.raises(FitFailed):
        runge_spiral_fit(degree_budget=12, sample_count=256)


def test_demo_spec_shape_and_band_gap():
    spec = demo_lacunary_spec()
    assert spec.poly.evaluate(0.0) == 0.0
    assert sum(abs(c) for c in spec.poly.coeffs) <= 8.0 + 1e-12
    # documents why it is a stand-in: the 5/3 band is far out of reach
    assert spiral_deviation(spec.poly, sample_count=1024) > 2.0


def test_lacunary_function_matches_its_series():
    spec = demo_lacunary_spec()
    series = lacunary_series(spec)
    rng = np.random.default_rng(11)
    for _ in range(6):
        z = (0.97 * rng.random()) * np.exp(2j * math.pi * rng.random())
        direct = lacunary_function(complex(z), spec)
        summed = sum(c * complex(z) ** e for e, c in series.terms)
        assert direct == pytest.approx(summed, rel=1e-10, abs=1e-12)
    assert lacunary_function(0j, spec) == 0j


def test_growth_stays_under_the_envelope():
    spec = demo_lacunary_spec()
    rep = lacunary_growth_probe(spec, radii=[1 - 10.0**-k for k in range(1, 6)])
    assert math.isfinite(rep["max_ratio"])
    assert rep["max_ratio"] <= rep["fitted_constant"] * (1 + 1e-12)


def test_circle_sup_frozen_value():
    spec = demo_lacunary_spec()
    sup = lacunary_circle_sup(2, spec, grid_size=1 << 16)
    assert sup.radius == pytest.approx(1.0 - 2.0 ** (-2 * math.sqrt(2)), rel=1e-14)
    assert sup.value == pytest.approx(6.8995033096161391, rel=1e-9)


def test_witness_points_push_past_unit_scale():
    spec = demo_lacunary_spec()
    for N in (2, 3):
        w = lacunary_witness(N, spec)
        assert w.ratio > 0.8
        stride = 1 << math.factorial(N)
        assert w.z**stride == pytest.approx(w.spiral_point, rel=1e-10)
        assert w.poly_value == pytest.approx(
            spec.poly.evaluate(w.spiral_point), rel=1e-12
        )


def test_associate_field_scales_like_distance_squared():
    spec = demo_lacunary_spec()
    series = lacunary_series(spec)
    for r in (0.9, 0.99):
        big_r = math.log((1 + r) / (1 - r))
        f = associated_biharmonic(series, r + 0j)
        assert abs(f) / big_r**2 < 20.0
        assert associate_deviation_bound(series, r) > 0


def test_functional_from_series_pairs_with_modes():
    spec = demo_lacunary_spec()
    series = lacunary_series(spec)
    nu = functional_from_series(series)
    # conjugated coefficients land on the nonpositive modes
    for e, c in series.terms:
        assert complex(nu.coeffs.get(-e, 0.0)) == pytest.approx(
            complex(c).conjugate(), rel=1e-12
        )
