from __future__ import annotations

from typing import Any, Self

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from ..schemas.noise import SigmaBox, UncertaintyInterval

Probability = float


class BaseDTO(BaseModel):
    """
    基础 DTO 类。

    所有计算结果均为不可变对象；行类型按字段声明顺序输出 CSV 列。
    """

    model_config = ConfigDict(from_attributes=True, frozen=True)

    @classmethod
    def columns(cls) -> list[str]:
        return list(cls.model_fields)

    def as_row(self) -> list[Any]:
        return [getattr(self, name) for name in self.columns()]


class ProbabilityEnvelope(BaseDTO):
    """单个事件在不确定概率族上的概率区间 [inf P, sup P]。"""

    lower: Probability = Field(ge=0.0, le=1.0)
    upper: Probability = Field(ge=0.0, le=1.0)

    @model_validator(mode="after")
    def _check_order(self) -> Self:
        if self.lower > self.upper:
            raise ValueError(f"lower {self.lower} exceeds upper {self.upper}")
        return self

    @property
    def width(self) -> float:
        return self.upper - self.lower


class SnrBounds(BaseDTO):
    snr_lo: float = Field(ge=0.0)
    snr_hi: float = Field(gt=0.0)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def snr(self) -> float:
        return (self.snr_lo + self.snr_hi) / 2


class ThresholdDetector(BaseDTO):
    """门限检测器：接收值 y > threshold 时判为 x_A，否则判为 x_B。"""

    threshold: float = Field(allow_inf_nan=False)


class ErrorEnvelope(BaseDTO):
    pe_lower: Probability = Field(ge=0.0, le=1.0)
    pe_upper: Probability = Field(ge=0.0, le=1.0)

    @model_validator(mode="after")
    def _check_order(self) -> Self:
        if self.pe_lower > self.pe_upper:
            raise ValueError(f"pe_lower {self.pe_lower} exceeds pe_upper {self.pe_upper}")
        return self


class SigmaEstimate(BaseDTO):
    sigma: SigmaBox
    residual_norm: float = Field(ge=0.0)
    iterations: int = Field(ge=0)


class EstimationResult(BaseDTO):
    """参数与检测性能估计的完整输出。

    Attributes:
        mean_hat: 均值区间估计 [μ̲̂, μ̂̄]。
        sigma_hat: 标准差区间估计 [σ̲̂, σ̂̄]。
        threshold_hat: 估计的最优门限 ŷ0。
        error_envelope_hat: 以估计参数代入闭式解得到的误码概率区间。
        residual_norm: 求解结束时两个残差绝对值的最大值。
        solver_iterations: 局部求解的迭代次数，初值即为解时为 0。
    """

    mean_hat: UncertaintyInterval
    sigma_hat: SigmaBox
    threshold_hat: float
    error_envelope_hat: ErrorEnvelope
    residual_norm: float = Field(ge=0.0)
    solver_iterations: int = Field(ge=0)


class TrialResult(BaseDTO):
    errors: int = Field(ge=0)
    trials: int = Field(ge=1)
    ci_half_width: float = Field(ge=0.0)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def rate(self) -> float:
        return self.errors / self.trials


class EnvelopeRow(BaseDTO):
    y: float
    cdf_lower: Probability
    cdf_upper: Probability
    tail_lower: Probability
    tail_upper: Probability


class SweepRow(BaseDTO):
    snr_db: float
    pe_upper_theory: Probability = Field(ge=0.0, le=1.0)
    pe_lower_theory: Probability = Field(ge=0.0, le=1.0)
    pe_awgn_theory: Probability = Field(ge=0.0, le=1.0)
    pe_empirical: Probability | None = Field(default=None, ge=0.0, le=1.0)
    ci_half_width: float | None = Field(default=None, ge=0.0)
    trials: int = Field(default=0, ge=0)


class ComparisonRow(BaseDTO):
    snr_db: float
    threshold_optimal: float
    threshold_min_distance: float
    pe_optimal: Probability = Field(ge=0.0, le=1.0)
    ci_optimal: float = Field(ge=0.0)
    pe_min_distance: Probability = Field(ge=0.0, le=1.0)
    ci_min_distance: float = Field(ge=0.0)
    pe_upper_optimal_theory: Probability = Field(ge=0.0, le=1.0)
    pe_upper_min_distance_theory: Probability = Field(ge=0.0, le=1.0)
    trials: int = Field(ge=1)
