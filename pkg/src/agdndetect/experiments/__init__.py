from .config import DetectorKind, ExperimentConfig, SweepMode
from .engine import (
    OperatingPoint,
    compare_detectors,
    detector_for,
    fading_sweep,
    midpoint_snr,
    resolve_point,
    run_trials,
    sweep_error_curves,
    theory_envelope,
    theory_row,
)
from .presets import (
    COMPARISON_MEAN_INTERVALS,
    EQUAL_SNR_BASE,
    SIGMA_ONLY_BOX,
    awgn_reference_sweeps,
    detector_comparison_sweeps,
    equal_snr_family,
    equal_snr_sweeps,
)
from .stats import binomial_half_width

__all__ = [
    "COMPARISON_MEAN_INTERVALS",
    "EQUAL_SNR_BASE",
    "SIGMA_ONLY_BOX",
    "DetectorKind",
    "ExperimentConfig",
    "OperatingPoint",
    "SweepMode",
    "awgn_reference_sweeps",
    "binomial_half_width",
    "compare_detectors",
    "detector_comparison_sweeps",
    "detector_for",
    "equal_snr_family",
    "equal_snr_sweeps",
    "fading_sweep",
    "midpoint_snr",
    "resolve_point",
    "run_trials",
    "sweep_error_curves",
    "theory_envelope",
    "theory_row",
]
