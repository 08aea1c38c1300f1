from __future__ import annotations

from enum import StrEnum, unique
from typing import Self

from pydantic import BaseModel, ConfigDict, Field, FiniteFloat, model_validator

from ..schemas.noise import ComplexGain, Constellation, NoiseModel
from ..schemas.scenarios import FixedPolicy, ScenarioPolicy

__all__ = ["DetectorKind", "ExperimentConfig", "SweepMode"]


@unique
class DetectorKind(StrEnum):
    """
    检测器类型枚举。

    Attributes:
        OPTIMAL: 最优门限 (x_A + x_B + μ̄ + μ̲) / 2。
        MIN_DISTANCE: 经典最小距离门限 (x_A + x_B) / 2。
        CUSTOM: 使用配置中给定的门限。
    """

    OPTIMAL = "optimal"
    MIN_DISTANCE = "min_distance"
    CUSTOM = "custom"


@unique
class SweepMode(StrEnum):
    """
    信噪比扫描方式。

    Attributes:
        SCALE_DISTANCE: 固定噪声区间，保持星座中点不变缩放符号间距。
        SCALE_SIGMA: 固定星座与均值区间，按比例缩放标准差区间。
    """

    SCALE_DISTANCE = "scale_distance"
    SCALE_SIGMA = "scale_sigma"


class ExperimentConfig(BaseModel):
    """
    蒙特卡洛实验配置。

    threads 只影响运行速度，不参与配置哈希，也不影响任何结果。

    Attributes:
        constellation: 二元星座。
        noise: 噪声模型，扫描时作为基准。
        policy: 场景策略。
        detector: 检测器类型。
        threshold: detector 为 custom 时使用的门限。
        trials: 每个扫描点的发送符号数。
        seed: 64 位无符号种子。
        snr_db: 扫描的中点信噪比 (dB)，非空且单调不减。
        sweep_mode: 信噪比扫描方式。
        empirical: 是否运行蒙特卡洛，为 False 时只输出理论列。
        custom_gains: 衰落实验中循环使用的信道增益，为 None 时使用瑞利增益。
        threads: 并行线程数。
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    constellation: Constellation = Field(default_factory=Constellation)
    noise: NoiseModel = Field(default_factory=lambda: NoiseModel.gaussian(1.0))
    policy: ScenarioPolicy = Field(default_factory=FixedPolicy)
    detector: DetectorKind = DetectorKind.OPTIMAL
    threshold: FiniteFloat | None = None
    trials: int = Field(default=10_000, ge=1)
    seed: int = Field(default=0, ge=0, lt=1 << 64)
    snr_db: list[FiniteFloat] = Field(default_factory=lambda: [0.0])
    sweep_mode: SweepMode = SweepMode.SCALE_DISTANCE
    empirical: bool = True
    custom_gains: list[ComplexGain] | None = None
    threads: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _check_consistency(self) -> Self:
        if not self.snr_db:
            raise ValueError("snr_db sweep grid must not be empty")
        if any(b < a for a, b in zip(self.snr_db, self.snr_db[1:], strict=False)):
            raise ValueError("snr_db sweep grid must be sorted")
        if self.detector is DetectorKind.CUSTOM and self.threshold is None:
            raise ValueError("detector 'custom' requires a threshold")
        if self.custom_gains is not None:
            if not self.custom_gains:
                raise ValueError("custom_gains must not be empty")
            if any(g.magnitude == 0 for g in self.custom_gains):
                raise ValueError("custom_gains must be nonzero")
        return self
