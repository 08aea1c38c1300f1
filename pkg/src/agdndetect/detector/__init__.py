from .threshold import (
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

__all__ = [
    "awgn_error_probability",
    "check_existence",
    "decide",
    "decide_many",
    "error_envelope",
    "error_envelope_at_threshold",
    "error_envelope_curve",
    "min_distance_detector",
    "min_distance_error_envelope",
    "optimal_threshold",
]
