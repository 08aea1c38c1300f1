from .errors import (
    AgdnError,
    ConfigError,
    DegenerateInputError,
    DetectorNonexistenceError,
    EstimationFailedError,
    InvalidParameterError,
    ModelAssumptionError,
    SolverNotConvergedError,
)
from .logger import init_logger, logger

__all__ = [
    "AgdnError",
    "ConfigError",
    "DegenerateInputError",
    "DetectorNonexistenceError",
    "EstimationFailedError",
    "InvalidParameterError",
    "ModelAssumptionError",
    "SolverNotConvergedError",
    "init_logger",
    "logger",
]
