"""AGDN 信道输出的概率包络与信噪比界。

信道模型为 Y = X + Z，Z = M + δ，其中 M 服从最大分布 M_[μ̲, μ̄]，δ 服从 G-正态分布 N(0, [σ̲², σ̄²])。
均值区间退化即为无均值不确定的 AGDN 信道，所有公式按 μ̲ = μ̄ 特化，不单独建模。
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

import numpy as np

from ..kernel import semi_g_lower_cdf, semi_g_upper_cdf
from ..models.dto import ProbabilityEnvelope, SnrBounds

if TYPE_CHECKING:
    import numpy.typing as npt

    from ..schemas.noise import Constellation, NoiseModel, SigmaBox

    type FloatArray = npt.NDArray[np.float64]

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


def output_cdf_envelope(noise: NoiseModel, x: float, y: float) -> ProbabilityEnvelope:
    """
    给定输入 x 时事件 {Y ≤ y} 的概率包络。

    上包络在 y = x + μ̲ 处切换分支，下包络在 y = x + μ̄ 处切换分支。

    Args:
        noise: 噪声模型。
        x: 发送符号。
        y: 接收阈值。

    Returns:
        ProbabilityEnvelope: [P̲(y), P̄(y)]。
    """
    upper = semi_g_upper_cdf(y - x - noise.mean.lo, noise.sigma)
    lower = semi_g_lower_cdf(y - x - noise.mean.hi, noise.sigma)
    # 饱和区两个核的舍入误差可能使 lower 略大于 upper
    lower = min(lower, upper)
    return ProbabilityEnvelope(lower=lower, upper=upper)


def output_tail_envelope(noise: NoiseModel, x: float, y: float) -> ProbabilityEnvelope:
    """
    给定输入 x 时事件 {Y > y} 的概率包络，与 output_cdf_envelope 严格互补。

    Args:
        noise: 噪声模型。
        x: 发送符号。
        y: 接收阈值。

    Returns:
        ProbabilityEnvelope: 尾概率区间。
    """
    cdf = output_cdf_envelope(noise, x, y)
    return ProbabilityEnvelope(lower=1.0 - cdf.upper, upper=1.0 - cdf.lower)


def cdf_envelope_curve(noise: NoiseModel, x: float, ys: FloatArray) -> tuple[FloatArray, FloatArray]:
    """在网格 ys 上批量计算分布函数包络，返回 (lower, upper) 两个数组。"""
    ys = np.asarray(ys, dtype=np.float64)
    lower = semi_g_lower_cdf(ys - x - noise.mean.hi, noise.sigma)
    upper = semi_g_upper_cdf(ys - x - noise.mean.lo, noise.sigma)
    lower = np.minimum(lower, upper)
    return np.asarray(lower, dtype=np.float64), np.asarray(upper, dtype=np.float64)


def tail_envelope_curve(noise: NoiseModel, x: float, ys: FloatArray) -> tuple[FloatArray, FloatArray]:
    """在网格 ys 上批量计算尾概率包络，返回 (lower, upper) 两个数组。"""
    cdf_lower, cdf_upper = cdf_envelope_curve(noise, x, ys)
    return 1.0 - cdf_upper, 1.0 - cdf_lower


def snr_bounds(c: Constellation, noise: NoiseModel) -> SnrBounds:
    """
    计算信噪比上下界与中点信噪比。

    SNR̄ = (d + w)² / (8σ̲²)；w < d 时 SNR̲ = (d − w)² / (8σ̄²)，否则为 0，其中 d 为符号间距，
    w 为均值区间宽度。

    Args:
        c: 二元星座。
        noise: 噪声模型。

    Returns:
        SnrBounds: 包含 snr_lo、snr_hi 与中点 snr。
    """
    d = c.distance
    w = noise.mean.width
    snr_hi = (d + w) ** 2 / (8 * noise.sigma.variance_lo)
    snr_lo = (d - w) ** 2 / (8 * noise.sigma.variance_hi) if w < d else 0.0
    return SnrBounds(snr_lo=snr_lo, snr_hi=snr_hi)


def awgn_equivalent_sigma(box: SigmaBox) -> float:
    """与给定标准差区间中点信噪比相同的高斯噪声标准差，σ² = 2σ̄²σ̲² / (σ̄² + σ̲²)。"""
    lo2, hi2 = box.variance_lo, box.variance_hi
    return math.sqrt(2 * hi2 * lo2 / (hi2 + lo2))


def snr_to_db(snr: float) -> float:
    if snr <= 0:
        return -math.inf
    return 10 * math.log10(snr)


def db_to_snr(snr_db: float) -> float:
    return 10 ** (snr_db / 10)


def snr_db_relation(box: SigmaBox) -> float:
    """
    无均值不确定时 SNR(dB) 与上下界 dB 均值之差：10·lg((σ̄² + σ̲²) / (2σ̄σ̲))。

    退化区间返回 0；区间越宽，中点信噪比相对两端 dB 均值的偏移越大。
    """
    return 10 * math.log10((box.variance_hi + box.variance_lo) / (2 * box.sigma_hi * box.sigma_lo))
