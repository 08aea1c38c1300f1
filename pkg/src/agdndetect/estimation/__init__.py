from .algorithm import estimate_all, estimate_mean_interval, phi_max_mean_variance
from .residuals import ResidualSystem, residual_lower, residual_upper, sliding_window_means
from .samples import IoSample, SampleSet, load_samples_csv
from .solver import estimate_sigma_interval

__all__ = [
    "IoSample",
    "ResidualSystem",
    "SampleSet",
    "estimate_all",
    "estimate_mean_interval",
    "estimate_sigma_interval",
    "load_samples_csv",
    "phi_max_mean_variance",
    "residual_lower",
    "residual_upper",
    "sliding_window_means",
]
