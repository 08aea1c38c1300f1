from .rayleigh import (
    averaged_error_envelope,
    conditional_error_envelope,
    conditional_error_envelope_with_mean,
    rayleigh_error_probability,
    rotate_gdistributed,
    rotate_gnormal_box,
    sufficient_statistic,
    sufficient_statistics,
)

__all__ = [
    "averaged_error_envelope",
    "conditional_error_envelope",
    "conditional_error_envelope_with_mean",
    "rayleigh_error_probability",
    "rotate_gdistributed",
    "rotate_gnormal_box",
    "sufficient_statistic",
    "sufficient_statistics",
]
