import pytest
from pydantic import ValidationError

from agdndetect.models.dto import (
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
from agdndetect.schemas.noise import SigmaBox, UncertaintyInterval

# --- Test Helpers ---


class SimpleDTO(BaseDTO):
    name: str
    value: float


class Source:
    def __init__(self) -> None:
        self.name = "point"
        self.value = 0.5


# --- Base Tests ---


def test_base_dto_columns_follow_declaration_order() -> None:
    assert SimpleDTO.columns() == ["name", "value"]
    assert SimpleDTO(name="a", value=1.0).as_row() == ["a", 1.0]


def test_base_dto_from_attributes() -> None:
    dto = SimpleDTO.model_validate(Source())
    assert dto == SimpleDTO(name="point", value=0.5)


def test_base_dto_is_frozen() -> None:
    dto = SimpleDTO(name="a", value=1.0)
    with pytest.raises(ValidationError):
        dto.value = 2.0  # type: ignore[misc]


# --- Result Types ---


def test_probability_envelope() -> None:
    envelope = ProbabilityEnvelope(lower=0.1, upper=0.4)
    assert envelope.width == pytest.approx(0.3)
    with pytest.raises(ValidationError, match="exceeds"):
        ProbabilityEnvelope(lower=0.5, upper=0.4)
    with pytest.raises(ValidationError):
        ProbabilityEnvelope(lower=0.0, upper=1.5)


def test_snr_bounds_midpoint() -> None:
    bounds = SnrBounds(snr_lo=1.0, snr_hi=3.0)
    assert bounds.snr == 2.0
    assert bounds.model_dump() == {"snr_lo": 1.0, "snr_hi": 3.0, "snr": 2.0}
    with pytest.raises(ValidationError):
        SnrBounds(snr_lo=0.0, snr_hi=0.0)


def test_threshold_detector_must_be_finite() -> None:
    assert ThresholdDetector(threshold=0.25).threshold == 0.25
    with pytest.raises(ValidationError):
        ThresholdDetector(threshold=float("nan"))


def test_error_envelope_order() -> None:
    ErrorEnvelope(pe_lower=0.1, pe_upper=0.1)
    with pytest.raises(ValidationError, match="exceeds"):
        ErrorEnvelope(pe_lower=0.2, pe_upper=0.1)


def test_trial_result_rate() -> None:
    result = TrialResult(errors=25, trials=1000, ci_half_width=0.01)
    assert result.rate == 0.025
    assert result.model_dump()["rate"] == 0.025
    with pytest.raises(ValidationError):
        TrialResult(errors=0, trials=0, ci_half_width=0.0)


def test_estimation_result_nests_value_types() -> None:
    result = EstimationResult(
        mean_hat=UncertaintyInterval(lo=-0.1, hi=0.2),
        sigma_hat=SigmaBox(sigma_lo=0.8, sigma_hi=1.6),
        threshold_hat=0.05,
        error_envelope_hat=ErrorEnvelope(pe_lower=0.1, pe_upper=0.4),
        residual_norm=1e-7,
        solver_iterations=12,
    )
    dumped = result.model_dump(mode="json")
    assert dumped["mean_hat"] == {"lo": -0.1, "hi": 0.2}
    assert dumped["sigma_hat"] == {"sigma_lo": 0.8, "sigma_hi": 1.6}
    assert EstimationResult.model_validate(dumped) == result


def test_sigma_estimate() -> None:
    estimate = SigmaEstimate(sigma=SigmaBox.point(1.0), residual_norm=0.0, iterations=0)
    assert estimate.sigma.is_degenerate
    with pytest.raises(ValidationError):
        SigmaEstimate(sigma=SigmaBox.point(1.0), residual_norm=-1.0, iterations=0)


# --- Row Types ---


def test_row_columns() -> None:
    assert EnvelopeRow.columns() == ["y", "cdf_lower", "cdf_upper", "tail_lower", "tail_upper"]
    assert SweepRow.columns() == [
        "snr_db",
        "pe_upper_theory",
        "pe_lower_theory",
        "pe_awgn_theory",
        "pe_empirical",
        "ci_half_width",
        "trials",
    ]
    assert ComparisonRow.columns()[:3] == ["snr_db", "threshold_optimal", "threshold_min_distance"]


def test_sweep_row_defaults() -> None:
    row = SweepRow(snr_db=3.0, pe_upper_theory=0.1, pe_lower_theory=0.01, pe_awgn_theory=0.05)
    assert row.as_row() == [3.0, 0.1, 0.01, 0.05, None, None, 0]
    updated = row.model_copy(update={"pe_empirical": 0.04, "trials": 100})
    assert updated.pe_empirical == 0.04
    assert row.pe_empirical is None
