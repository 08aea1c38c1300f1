from .envelopes import (
    awgn_equivalent_sigma,
    cdf_envelope_curve,
    db_to_snr,
    output_cdf_envelope,
    output_tail_envelope,
    snr_bounds,
    snr_db_relation,
    snr_to_db,
    tail_envelope_curve,
)

__all__ = [
    "awgn_equivalent_sigma",
    "cdf_envelope_curve",
    "db_to_snr",
    "output_cdf_envelope",
    "output_tail_envelope",
    "snr_bounds",
    "snr_db_relation",
    "snr_to_db",
    "tail_envelope_curve",
]
