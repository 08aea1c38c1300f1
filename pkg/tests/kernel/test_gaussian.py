import math

import numpy as np
import pytest
from scipy import integrate, stats

from agdndetect.kernel import TAIL_CLAMP, q_function, semi_g_lower_cdf, semi_g_upper_cdf
from agdndetect.schemas.noise import SigmaBox
from agdndetect.utils.errors import InvalidParameterError


def _two_piece_cdf(t: float, left_sigma: float, right_sigma: float) -> float:
    """Integrate a density built from two half-Gaussians joined at zero."""
    scale = 2 / (left_sigma + right_sigma)

    def density(s: float) -> float:
        sigma = left_sigma if s <= 0 else right_sigma
        return scale * stats.norm.pdf(s / sigma)

    if t <= 0:
        value, _ = integrate.quad(density, -np.inf, t, epsabs=1e-14, epsrel=1e-12)
        return value
    left, _ = integrate.quad(density, -np.inf, 0.0, epsabs=1e-14, epsrel=1e-12)
    right, _ = integrate.quad(density, 0.0, t, epsabs=1e-14, epsrel=1e-12)
    return left + right


class TestQFunction:
    def test_matches_normal_survival(self):
        v = np.linspace(-8.0, 8.0, 401)
        np.testing.assert_allclose(q_function(v), stats.norm.sf(v), atol=1e-14, rtol=0)

    @pytest.mark.parametrize("v", [10.0, 20.0, 35.0])
    def test_far_tail_relative_accuracy(self, v):
        assert q_function(v) == pytest.approx(stats.norm.sf(v), rel=1e-12)

    def test_clamped_beyond_tail_limit(self):
        assert q_function(TAIL_CLAMP + 1) == 0.0
        assert q_function(-TAIL_CLAMP - 1) == 1.0

    def test_scalar_returns_float(self):
        value = q_function(0.0)
        assert isinstance(value, float)
        assert value == 0.5

    def test_array_keeps_shape(self):
        out = q_function(np.zeros((2, 3)))
        assert out.shape == (2, 3)

    @pytest.mark.parametrize("v", [math.nan, math.inf, -math.inf])
    def test_non_finite_input_rejected(self, v):
        with pytest.raises(InvalidParameterError):
            q_function(v)


class TestSemiGCdf:
    @pytest.mark.parametrize("t", [-3.0, -1.0, -0.2, 0.0, 0.3, 1.5, 4.0])
    def test_upper_matches_quadrature(self, sigma_box, t):
        expected = _two_piece_cdf(t, sigma_box.sigma_hi, sigma_box.sigma_lo)
        assert semi_g_upper_cdf(t, sigma_box) == pytest.approx(expected, abs=1e-10)

    @pytest.mark.parametrize("t", [-3.0, -1.0, -0.2, 0.0, 0.3, 1.5, 4.0])
    def test_lower_matches_quadrature(self, sigma_box, t):
        expected = _two_piece_cdf(t, sigma_box.sigma_lo, sigma_box.sigma_hi)
        assert semi_g_lower_cdf(t, sigma_box) == pytest.approx(expected, abs=1e-10)

    def test_degenerate_box_is_gaussian(self, rng):
        for _ in range(1000):
            sigma = rng.uniform(0.1, 5.0)
            t = rng.uniform(-10.0, 10.0)
            box = SigmaBox.point(sigma)
            gaussian = stats.norm.cdf(t / sigma)
            assert abs(semi_g_upper_cdf(t, box) - gaussian) <= 1e-12
            assert abs(semi_g_lower_cdf(t, box) - gaussian) <= 1e-12

    def test_lower_never_exceeds_upper(self, rng):
        for _ in range(200):
            lo = rng.uniform(0.1, 3.0)
            box = SigmaBox(sigma_lo=lo, sigma_hi=lo * rng.uniform(1.0, 4.0))
            t = rng.uniform(-15.0, 15.0, size=50)
            assert np.all(semi_g_lower_cdf(t, box) <= semi_g_upper_cdf(t, box) + 1e-15)

    def test_continuous_at_zero(self, sigma_box):
        eps = 1e-12
        assert semi_g_upper_cdf(-eps, sigma_box) == pytest.approx(semi_g_upper_cdf(eps, sigma_box), abs=1e-11)
        assert semi_g_lower_cdf(-eps, sigma_box) == pytest.approx(semi_g_lower_cdf(eps, sigma_box), abs=1e-11)

    def test_values_at_zero(self, sigma_box):
        lo, hi = sigma_box.sigma_lo, sigma_box.sigma_hi
        assert semi_g_upper_cdf(0.0, sigma_box) == pytest.approx(hi / (lo + hi), abs=1e-15)
        assert semi_g_lower_cdf(0.0, sigma_box) == pytest.approx(lo / (lo + hi), abs=1e-15)

    def test_monotone_and_bounded(self, sigma_box):
        t = np.linspace(-60.0, 60.0, 2001)
        for fn in (semi_g_upper_cdf, semi_g_lower_cdf):
            values = fn(t, sigma_box)
            assert np.all(np.diff(values) >= -1e-15)
            assert values[0] == 0.0
            assert values[-1] == 1.0

    def test_invalid_box_rejected(self):
        box = SigmaBox.model_construct(sigma_lo=-1.0, sigma_hi=1.0)
        with pytest.raises(InvalidParameterError):
            semi_g_upper_cdf(0.0, box)
        with pytest.raises(InvalidParameterError):
            semi_g_lower_cdf(0.0, box)

    def test_non_finite_threshold_rejected(self, sigma_box):
        with pytest.raises(InvalidParameterError):
            semi_g_upper_cdf(np.array([0.0, math.nan]), sigma_box)
