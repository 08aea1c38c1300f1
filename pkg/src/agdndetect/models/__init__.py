from .dto import (
    BaseDTO,
    ComparisonRow,
    EnvelopeRow,
    ErrorEnvelope,
    EstimationResult,
    ProbabilityEnvelope,
    SigmaEstimate,
    SnrBounds,
    SweepRow,
    ThresholdDetector,
    TrialResult,
)

__all__ = [
    "BaseDTO",
    "ComparisonRow",
    "EnvelopeRow",
    "ErrorEnvelope",
    "EstimationResult",
    "ProbabilityEnvelope",
    "SigmaEstimate",
    "SnrBounds",
    "SweepRow",
    "ThresholdDetector",
    "TrialResult",
]
