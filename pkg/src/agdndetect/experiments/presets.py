"""扫描预设：等信噪比参数族、AWGN 对照扫描与检测器比较扫描的配置。

区间取值只保证曲线形态与相对位置。
"""

from __future__ import annotations

import math

from ..channel import snr_bounds
from ..schemas.noise import Constellation, NoiseModel, SigmaBox, UncertaintyInterval
from ..schemas.scenarios import BlockSwitchPolicy, FixedPolicy
from ..utils.errors import InvalidParameterError
from .config import DetectorKind, ExperimentConfig, SweepMode

__all__ = [
    "COMPARISON_MEAN_INTERVALS",
    "EQUAL_SNR_BASE",
    "SIGMA_ONLY_BOX",
    "awgn_reference_sweeps",
    "detector_comparison_sweeps",
    "equal_snr_family",
    "equal_snr_sweeps",
]

EQUAL_SNR_BASE = NoiseModel.build(-0.1, 0.1, 1.0, math.sqrt(2.0))
# σ̄/σ̲ = √2：上包络约在 14.9 dB 降到 1e-10，下包络约在 11.8 dB
SIGMA_ONLY_BOX = SigmaBox(sigma_lo=1.0, sigma_hi=math.sqrt(2.0))
COMPARISON_MEAN_INTERVALS: tuple[tuple[float, float], ...] = ((-0.003, 0.067), (-0.021, 0.074))


def equal_snr_family(c: Constellation, noise: NoiseModel, k: int) -> NoiseModel:
    """
    与基准模型中点信噪比相同的第 k 个不确定参数族。

    均值区间放大为 [kμ̲, kμ̄]，上方差放大为 kσ̄²，下方差取使中点信噪比不变的值：
    σ̲ₖ² = (d + kw)² / (8·(T − SNR̲ₖ))，其中 T = SNR̲ + SNR̄，SNR̲ₖ = (d − kw)² / (8kσ̄²)（kw ≥ d 时为 0）。
    k 越大，区间越宽。

    Args:
        c: 二元星座。
        noise: 基准噪声模型 (k = 1)。
        k: 放大倍数，k ≥ 1。

    Returns:
        NoiseModel: 第 k 个参数族。

    Raises:
        InvalidParameterError: k < 1 或所得下方差不大于 0。
    """
    if k < 1:
        raise InvalidParameterError(f"family index must be at least 1, got {k}")
    if k == 1:
        return noise

    bounds = snr_bounds(c, noise)
    total = bounds.snr_lo + bounds.snr_hi
    d, w = c.distance, noise.mean.width
    variance_hi = k * noise.sigma.variance_hi
    snr_lo_k = (d - k * w) ** 2 / (8 * variance_hi) if k * w < d else 0.0
    denominator = 8 * (total - snr_lo_k)
    if not denominator > 0:
        raise InvalidParameterError(f"no equal-SNR variance box exists for k={k}")
    variance_lo = (d + k * w) ** 2 / denominator
    if variance_lo > variance_hi:
        raise InvalidParameterError(f"equal-SNR family k={k} would invert the variance box")
    return NoiseModel(
        mean=UncertaintyInterval(lo=k * noise.mean.lo, hi=k * noise.mean.hi),
        sigma=SigmaBox.from_variances(variance_lo, variance_hi),
    )


def equal_snr_sweeps(snr_db: list[float], *, with_mean: bool = False) -> list[ExperimentConfig]:
    """
    等信噪比下区间宽度对包络的影响：k = 1, 2, 3 三个参数族的理论扫描。

    按标准差缩放扫描，各参数族的中点信噪比在每个扫描点上保持相等。
    """
    c = Constellation()
    base = EQUAL_SNR_BASE if with_mean else NoiseModel(sigma=EQUAL_SNR_BASE.sigma)
    return [
        ExperimentConfig(
            constellation=c,
            noise=equal_snr_family(c, base, k),
            policy=BlockSwitchPolicy(),
            snr_db=snr_db,
            sweep_mode=SweepMode.SCALE_SIGMA,
            empirical=False,
        )
        for k in (1, 2, 3)
    ]


def awgn_reference_sweeps(snr_db: list[float]) -> list[ExperimentConfig]:
    """AGDN 信道与无均值不确定信道的包络，AWGN 参考列位于两者之间。"""
    return [
        ExperimentConfig(noise=NoiseModel(sigma=SIGMA_ONLY_BOX), policy=BlockSwitchPolicy(), snr_db=snr_db, empirical=False),
        ExperimentConfig(
            noise=NoiseModel(mean=EQUAL_SNR_BASE.mean, sigma=SIGMA_ONLY_BOX),
            policy=BlockSwitchPolicy(),
            snr_db=snr_db,
            empirical=False,
        ),
    ]


def detector_comparison_sweeps(snr_db: list[float], *, trials: int = 10_000, seed: int = 0) -> list[ExperimentConfig]:
    """
    最优检测器与最小距离检测器的仿真比较，两组均值区间，x ∈ {−1, 1}。

    噪声均值固定在上端点 μ̄。两个门限相差区间中点 m，最优检测器的增益约与 m(2E[μ] − m) 成正比，
    因此在 E[μ] = μ̄ 时最大；E[μ] = m 时增益为二阶小量。
    """
    return [
        ExperimentConfig(
            noise=NoiseModel.build(lo, hi, 1.0, 1.0),
            policy=FixedPolicy(mu=hi, sigma=1.0),
            detector=DetectorKind.OPTIMAL,
            trials=trials,
            seed=seed,
            snr_db=snr_db,
            sweep_mode=SweepMode.SCALE_SIGMA,
        )
        for lo, hi in COMPARISON_MEAN_INTERVALS
    ]
