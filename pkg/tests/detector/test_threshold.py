import math

import numpy as np
import pytest
from scipy import stats

from agdndetect.detector import (
    awgn_error_probability,
    check_existence,
    decide,
    decide_many,
    error_envelope,
    error_envelope_at_threshold,
    error_envelope_curve,
    min_distance_detector,
    min_distance_error_envelope,
    optimal_threshold,
)
from agdndetect.models.dto import ThresholdDetector
from agdndetect.schemas.noise import Constellation, NoiseModel
from agdndetect.utils.errors import DetectorNonexistenceError, InvalidParameterError


class TestThreshold:
    def test_optimal_threshold(self, unit_constellation, agdn_noise):
        detector = optimal_threshold(unit_constellation, agdn_noise)
        assert detector.threshold == pytest.approx((1.0 - 1.0 + 0.2 - 0.1) / 2)

    def test_min_distance_detector_uses_midpoint(self):
        assert min_distance_detector(Constellation(x_a=3.0, x_b=1.0)).threshold == 2.0

    def test_nonexistence(self, unit_constellation):
        noise = NoiseModel.build(-1.0, 1.5, 1.0, 1.2)
        with pytest.raises(DetectorNonexistenceError) as exc_info:
            optimal_threshold(unit_constellation, noise)
        assert exc_info.value.width == pytest.approx(2.5)
        assert exc_info.value.distance == pytest.approx(2.0)
        assert exc_info.value.exit_code == 3

    def test_equal_width_treated_as_nonexistence(self, unit_constellation, log_messages):
        noise = NoiseModel.build(-1.0, 1.0, 1.0, 1.0)
        with pytest.raises(DetectorNonexistenceError):
            check_existence(unit_constellation, noise)
        assert any("equals symbol distance" in m for m in log_messages)

    def test_decide_ties_go_to_x_b(self, unit_constellation):
        detector = ThresholdDetector(threshold=0.25)
        assert decide(detector, unit_constellation, 0.25) == -1.0
        assert decide(detector, unit_constellation, 0.2500001) == 1.0
        assert decide(detector, unit_constellation, -3.0) == -1.0

    def test_decide_many_matches_decide(self, unit_constellation, rng):
        detector = ThresholdDetector(threshold=0.1)
        ys = np.concatenate([rng.normal(size=100), [0.1]])
        decisions = decide_many(detector, unit_constellation, ys)
        assert decisions.tolist() == [decide(detector, unit_constellation, float(y)) for y in ys]


class TestErrorEnvelope:
    def test_degenerate_noise_is_awgn(self, rng):
        for _ in range(1000):
            d = rng.uniform(0.1, 4.0)
            sigma = rng.uniform(0.1, 3.0)
            c = Constellation(x_a=d / 2, x_b=-d / 2)
            noise = NoiseModel.gaussian(sigma)
            expected = stats.norm.sf(d / (2 * sigma))
            envelope = error_envelope(c, noise)
            at_threshold = error_envelope_at_threshold(optimal_threshold(c, noise).threshold, c, noise)
            assert abs(envelope.pe_lower - expected) <= 1e-12
            assert abs(envelope.pe_upper - expected) <= 1e-12
            assert abs(at_threshold.pe_upper - expected) <= 1e-12
            assert abs(awgn_error_probability(c, sigma) - expected) <= 1e-12

    def test_closed_form_matches_threshold_evaluation(self, rng, draw_noise):
        for _ in range(200):
            c = Constellation(x_a=rng.uniform(0.5, 2.0), x_b=rng.uniform(-2.0, 0.0))
            noise = draw_noise(max_width=0.4)
            y0 = optimal_threshold(c, noise).threshold
            closed = error_envelope(c, noise)
            direct = error_envelope_at_threshold(y0, c, noise)
            assert direct.pe_lower == pytest.approx(closed.pe_lower, abs=1e-12)
            assert direct.pe_upper == pytest.approx(closed.pe_upper, abs=1e-12)

    def test_grid_scan_locates_optimal_threshold(self, rng):
        step = 1e-4
        checked = 0
        while checked < 100:
            d = rng.uniform(1.0, 3.0)
            c = Constellation(x_a=d / 2, x_b=-d / 2)
            mu_lo = rng.uniform(-0.5, 0.5)
            s_lo = rng.uniform(0.5, 2.0)
            noise = NoiseModel.build(mu_lo, mu_lo + rng.uniform(0.0, 0.5), s_lo, s_lo * rng.uniform(1.01, 3.0))
            # 闭式上包络不低于 ½ 时，远离星座的门限会取到更小的 P̄e
            if error_envelope(c, noise).pe_upper >= 0.45:
                continue
            checked += 1
            hi = noise.sigma.sigma_hi
            grid = np.arange(c.x_b - 3 * hi, c.x_a + 3 * hi, step)
            pe_lower, pe_upper = error_envelope_curve(grid, c, noise)
            y0 = optimal_threshold(c, noise).threshold
            closed = error_envelope(c, noise)

            assert abs(grid[np.argmin(pe_upper)] - y0) <= step
            assert abs(grid[np.argmin(pe_lower)] - y0) <= step
            assert np.min(pe_upper) == pytest.approx(closed.pe_upper, abs=1e-8)
            assert np.min(pe_lower) == pytest.approx(closed.pe_lower, abs=1e-8)

    def test_closed_form_is_local_when_above_half(self):
        c = Constellation(x_a=0.5, x_b=-0.5)
        noise = NoiseModel.build(0.0, 0.3, 0.6, 1.8)
        closed = error_envelope(c, noise)
        assert closed.pe_upper == pytest.approx(0.634, abs=1e-3)
        assert optimal_threshold(c, noise).threshold == pytest.approx(0.15)
        far = error_envelope_at_threshold(10.15, c, noise)
        assert 0.5 < far.pe_upper < closed.pe_upper
        assert far.pe_upper == pytest.approx(0.5, abs=1e-8)

    def test_scale_equivariance(self, rng, draw_noise):
        for _ in range(200):
            c = Constellation(x_a=rng.uniform(0.5, 2.0), x_b=rng.uniform(-2.0, 0.0))
            noise = draw_noise(max_width=0.4)
            k = rng.uniform(0.1, 10.0)
            scaled_c = Constellation(x_a=k * c.x_a, x_b=k * c.x_b)
            scaled_noise = NoiseModel.build(
                k * noise.mean.lo, k * noise.mean.hi, k * noise.sigma.sigma_lo, k * noise.sigma.sigma_hi
            )
            base = error_envelope(c, noise)
            scaled = error_envelope(scaled_c, scaled_noise)
            assert scaled.pe_lower == pytest.approx(base.pe_lower, rel=1e-9, abs=1e-15)
            assert scaled.pe_upper == pytest.approx(base.pe_upper, rel=1e-9, abs=1e-15)
            y0 = optimal_threshold(c, noise).threshold
            assert optimal_threshold(scaled_c, scaled_noise).threshold == pytest.approx(k * y0, rel=1e-9, abs=1e-12)

    def test_nonexistence_regime_upper_envelope_exceeds_half(self, rng):
        for _ in range(50):
            d = rng.uniform(0.5, 2.0)
            c = Constellation(x_a=d / 2, x_b=-d / 2)
            mu_lo = rng.uniform(-0.5, 0.5)
            s_lo = rng.uniform(0.2, 2.0)
            noise = NoiseModel.build(mu_lo, mu_lo + d + rng.uniform(0.01, 1.0), s_lo, s_lo * rng.uniform(1.01, 3.0))
            hi = noise.sigma.sigma_hi
            grid = np.arange(c.x_b + noise.mean.lo - 8 * hi, c.x_a + noise.mean.hi + 8 * hi, 1e-3)
            _, pe_upper = error_envelope_curve(grid, c, noise)

            overlap = (grid >= c.x_a + noise.mean.lo) & (grid <= c.x_b + noise.mean.hi)
            assert np.any(overlap)
            assert np.all(pe_upper[overlap] > 0.5)
            assert np.all(pe_upper >= 0.5 - 1e-15)
            assert abs(pe_upper[0] - 0.5) <= 1e-3
            assert abs(pe_upper[-1] - 0.5) <= 1e-3
            with pytest.raises(DetectorNonexistenceError):
                error_envelope(c, noise)

    def test_curve_matches_scalar(self, unit_constellation, agdn_noise):
        grid = np.linspace(-2.0, 2.0, 21)
        pe_lower, pe_upper = error_envelope_curve(grid, unit_constellation, agdn_noise)
        for i, y0 in enumerate(grid):
            envelope = error_envelope_at_threshold(float(y0), unit_constellation, agdn_noise)
            assert pe_lower[i] == pytest.approx(envelope.pe_lower, abs=1e-15)
            assert pe_upper[i] == pytest.approx(envelope.pe_upper, abs=1e-15)

    def test_min_distance_is_worse_with_mean_uncertainty(self, unit_constellation):
        noise = NoiseModel.build(0.0, 0.6, 0.5, 0.7)
        optimal = error_envelope(unit_constellation, noise)
        baseline = min_distance_error_envelope(unit_constellation, noise)
        assert baseline.pe_upper > optimal.pe_upper
        assert baseline.pe_lower > optimal.pe_lower

    def test_min_distance_coincides_without_mean_offset(self, unit_constellation, sigma_box):
        noise = NoiseModel(sigma=sigma_box)
        assert min_distance_error_envelope(unit_constellation, noise).pe_upper == pytest.approx(
            error_envelope(unit_constellation, noise).pe_upper, abs=1e-15
        )

    def test_sandwich_around_awgn_equivalent(self):
        c = Constellation()
        noise = NoiseModel.build(0.0, 0.0, 1.0, 1.01)
        envelope = error_envelope(c, noise)
        awgn = awgn_error_probability(c, math.sqrt(2 * 1.01**2 / (1 + 1.01**2)))
        assert envelope.pe_lower <= awgn <= envelope.pe_upper
        assert envelope.pe_lower == pytest.approx(0.15787, abs=2e-5)
        assert envelope.pe_upper == pytest.approx(0.16186, abs=2e-5)

    def test_awgn_rejects_non_positive_sigma(self, unit_constellation):
        with pytest.raises(InvalidParameterError):
            awgn_error_probability(unit_constellation, 0.0)
