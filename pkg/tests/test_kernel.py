"""Kernel primitives and density evaluation"""

import math

import numpy as np
import pytest
from scipy import integrate

from albscreen.core.errors import DomainError, InvalidArgumentError
from albscreen.core.kernel import (
    gaussian_kernel,
    hall_kernel,
    kde_eval,
    log_hall_kernel,
    log_kde_eval_many,
    loo_density,
)
from tests import oracle


def test_hall_kernel_closed_form_values():
    assert hall_kernel(0.0) == pytest.approx(0.1438000, abs=1e-6)
    assert hall_kernel(1.0) == pytest.approx(0.1130915, abs=1e-6)
    assert hall_kernel(-1.0) == hall_kernel(1.0)


def test_hall_kernel_matches_decimal_oracle():
    for z in (0.0, 0.3, 1.0, 2.5, 17.0, 1e6):
        assert hall_kernel(z) == pytest.approx(float(oracle.hall(z)), rel=1e-12)


def test_hall_kernel_integrates_to_one():
    # z = e^u - 1 maps the log-normal-like tail onto a Gaussian one
    half, _ = integrate.quad(lambda u: hall_kernel(math.expm1(u)) * math.exp(u), 0.0, np.inf)
    assert 2.0 * half == pytest.approx(1.0, abs=1e-4)


def test_hall_kernel_symmetric_and_positive():
    z = np.random.default_rng(0).normal(scale=50.0, size=10_000)
    assert np.array_equal(hall_kernel(z), hall_kernel(-z))
    assert np.all(hall_kernel(z) > 0)


def test_log_hall_kernel_consistent():
    z = np.linspace(-30, 30, 61)
    assert np.allclose(np.exp(log_hall_kernel(z)), hall_kernel(z), rtol=1e-13)


@pytest.mark.parametrize("bad", [np.nan, np.inf, -np.inf])
def test_hall_kernel_rejects_non_finite(bad):
    with pytest.raises(DomainError):
        hall_kernel(bad)


def test_gaussian_kernel_at_zero():
    assert gaussian_kernel(0.0) == pytest.approx(1.0 / math.sqrt(2.0 * math.pi))


def test_kde_eval_two_equal_points():
    assert kde_eval(0.0, [0.0, 0.0], 2.0) == pytest.approx(0.0719000, abs=1e-6)


def test_kde_eval_far_point_positive():
    assert kde_eval(1e8, [0.0, 1.0], 0.1) > 0.0


def test_kde_eval_errors():
    with pytest.raises(InvalidArgumentError):
        kde_eval(0.0, [], 1.0)
    with pytest.raises(InvalidArgumentError):
        kde_eval(0.0, [1.0], 0.0)
    with pytest.raises(InvalidArgumentError):
        kde_eval(0.0, [1.0], -1.0)


def test_log_kde_eval_many_matches_kde_eval():
    points = [-1.0, 0.2, 0.4, 3.0]
    xs = [-2.0, 0.0, 1.0, 10.0]
    logs = log_kde_eval_many(xs, points, 0.7)
    expected = [math.log(kde_eval(x, points, 0.7)) for x in xs]
    assert np.allclose(logs, expected, rtol=1e-12)


def test_loo_density_excludes_own_point():
    assert loo_density(0, [0.0, 1.0], 1.0) == pytest.approx(hall_kernel(1.0))
    # normalized by (count - 1) * b
    assert loo_density(1, [0.0, 0.0, 0.0], 2.0) == pytest.approx(hall_kernel(0.0) / 2.0)


def test_loo_density_errors():
    with pytest.raises(InvalidArgumentError):
        loo_density(0, [1.0], 1.0)
    with pytest.raises(InvalidArgumentError):
        loo_density(3, [1.0, 2.0], 1.0)


def test_hall_kernel_nonincreasing_in_distance():
    z = np.linspace(0.0, 60.0, 10_000)
    k = hall_kernel(z)
    assert np.all(np.diff(k) <= 0.0)
    assert np.all(np.diff(hall_kernel(-z)) <= 0.0)


def test_kde_eval_ignores_point_order():
    rng = np.random.default_rng(7)
    points = rng.standard_t(3, size=40)
    for x in (-4.0, 0.0, 0.37, 12.5):
        expected = kde_eval(x, points, 0.6)
        for _ in range(5):
            assert kde_eval(x, rng.permutation(points), 0.6) == pytest.approx(expected, rel=1e-13)


@pytest.mark.parametrize("a,c", [(2.5, 3.25), (-0.5, 1.0), (-3.0, -7.5)])
def test_kde_eval_affine_covariance(a, c):
    rng = np.random.default_rng(8)
    points = rng.normal(size=25)
    for x in (-2.0, 0.1, 1.7):
        moved = kde_eval(a * x + c, a * points + c, abs(a) * 0.8) * abs(a)
        assert moved == pytest.approx(kde_eval(x, points, 0.8), rel=1e-12)


def test_loo_density_equals_kde_without_the_point():
    points = np.random.default_rng(9).gamma(2.0, size=15)
    for i in range(points.size):
        assert loo_density(i, points, 0.5) == kde_eval(points[i], np.delete(points, i), 0.5)
