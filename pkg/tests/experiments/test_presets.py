import numpy as np
import pytest

from agdndetect.channel import db_to_snr, snr_bounds, snr_to_db
from agdndetect.experiments import (
    COMPARISON_MEAN_INTERVALS,
    compare_detectors,
    EQUAL_SNR_BASE,
    awgn_reference_sweeps,
    detector_comparison_sweeps,
    equal_snr_family,
    equal_snr_sweeps,
    resolve_point,
    sweep_error_curves,
)
from agdndetect.schemas.noise import Constellation, NoiseModel
from agdndetect.schemas.scenarios import FixedPolicy
from agdndetect.utils.errors import InvalidParameterError


class TestEqualSnrFamily:
    @pytest.mark.parametrize("k", [2, 3])
    def test_keeps_midpoint_snr(self, k):
        c = Constellation()
        family = equal_snr_family(c, EQUAL_SNR_BASE, k)
        assert snr_bounds(c, family).snr == pytest.approx(snr_bounds(c, EQUAL_SNR_BASE).snr, rel=1e-12)

    def test_intervals_widen_with_k(self):
        c = Constellation()
        families = [equal_snr_family(c, EQUAL_SNR_BASE, k) for k in (1, 2, 3)]
        assert families[0] == EQUAL_SNR_BASE
        mean_widths = [f.mean.width for f in families]
        sigma_ratios = [f.sigma.sigma_hi / f.sigma.sigma_lo for f in families]
        assert mean_widths == sorted(mean_widths)
        assert sigma_ratios == sorted(sigma_ratios)

    def test_without_mean_uncertainty(self):
        c = Constellation()
        base = NoiseModel(sigma=EQUAL_SNR_BASE.sigma)
        family = equal_snr_family(c, base, 3)
        assert family.mean.is_degenerate
        assert family.sigma.variance_hi == pytest.approx(3 * base.sigma.variance_hi)
        assert snr_bounds(c, family).snr == pytest.approx(snr_bounds(c, base).snr, rel=1e-12)

    def test_invalid_index(self):
        with pytest.raises(InvalidParameterError):
            equal_snr_family(Constellation(), EQUAL_SNR_BASE, 0)


class TestSweepPresets:
    @pytest.mark.parametrize("with_mean", [False, True])
    def test_equal_snr_families_share_sweep_snr(self, with_mean):
        configs = equal_snr_sweeps([0.0, 5.0, 10.0], with_mean=with_mean)
        assert len(configs) == 3
        for cfg in configs:
            assert not cfg.empirical
            for index, snr_db in enumerate(cfg.snr_db):
                point = resolve_point(cfg, index=index)
                assert snr_bounds(point.constellation, point.noise).snr == pytest.approx(db_to_snr(snr_db), rel=1e-9)

    def test_awgn_reference_between_envelopes(self):
        no_mean, _ = awgn_reference_sweeps([float(s) for s in range(0, 21)])
        for row in sweep_error_curves(no_mean):
            assert row.pe_lower_theory <= row.pe_awgn_theory <= row.pe_upper_theory

    def test_sigma_only_gap_at_low_error_rate(self):
        no_mean, _ = awgn_reference_sweeps([0.0])
        grid = np.arange(8.0, 18.0, 0.01)
        rows = sweep_error_curves(no_mean, grid.tolist())
        upper = np.array([r.pe_upper_theory for r in rows])
        lower = np.array([r.pe_lower_theory for r in rows])
        snr_upper = grid[np.argmax(upper <= 1e-10)]
        snr_lower = grid[np.argmax(lower <= 1e-10)]
        assert 2.5 <= snr_upper - snr_lower <= 3.5

    def test_reference_sweeps_share_awgn_column(self):
        no_mean, agdn = awgn_reference_sweeps([10.0])
        (row_no_mean,) = sweep_error_curves(no_mean)
        (row_agdn,) = sweep_error_curves(agdn)
        point = resolve_point(agdn, index=0)
        assert snr_to_db(snr_bounds(point.constellation, point.noise).snr) == pytest.approx(10.0)
        assert row_agdn.pe_awgn_theory == row_no_mean.pe_awgn_theory
        assert row_agdn.pe_lower_theory < row_agdn.pe_upper_theory

    def test_detector_comparison_sweeps(self):
        configs = detector_comparison_sweeps([0.0, 3.0], trials=500, seed=7)
        assert [(cfg.noise.mean.lo, cfg.noise.mean.hi) for cfg in configs] == list(COMPARISON_MEAN_INTERVALS)
        assert all(cfg.trials == 500 and cfg.seed == 7 and cfg.empirical for cfg in configs)
        for cfg in configs:
            assert cfg.policy == FixedPolicy(mu=cfg.noise.mean.hi, sigma=1.0)
            point = resolve_point(cfg, index=1)
            assert point.policy.sigma == pytest.approx(point.noise.sigma.sigma_lo)


class TestDetectorComparison:
    SWEEP = [0.0, 2.0, 4.0, 6.0, 8.0, 10.0]

    def test_optimal_never_worse_than_min_distance(self):
        for cfg in detector_comparison_sweeps(self.SWEEP, trials=10_000, seed=3):
            for row in compare_detectors(cfg):
                assert row.threshold_optimal > row.threshold_min_distance
                assert row.pe_optimal <= row.pe_min_distance + row.ci_min_distance

    def test_theory_gap_follows_interval_midpoint(self):
        narrow, wide = detector_comparison_sweeps(self.SWEEP, trials=1000)
        assert narrow.noise.mean.midpoint > wide.noise.mean.midpoint
        assert narrow.noise.mean.width < wide.noise.mean.width
        narrow_rows = compare_detectors(narrow)
        wide_rows = compare_detectors(wide)
        for row_narrow, row_wide in zip(narrow_rows, wide_rows, strict=True):
            gap_narrow = row_narrow.pe_upper_min_distance_theory - row_narrow.pe_upper_optimal_theory
            gap_wide = row_wide.pe_upper_min_distance_theory - row_wide.pe_upper_optimal_theory
            assert gap_wide > 0
            assert gap_narrow > gap_wide

    @pytest.mark.slow
    def test_optimal_gain_is_positive(self):
        for cfg in detector_comparison_sweeps(self.SWEEP, trials=100_000, seed=11):
            rows = compare_detectors(cfg)
            assert sum(row.pe_min_distance - row.pe_optimal for row in rows) > 0
