"""门限检测器与误码概率包络。

两个符号等概发送。门限规则在 y > threshold 时判为 x_A，否则判为 x_B。
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from ..channel import output_cdf_envelope, output_tail_envelope
from ..kernel import q_function, semi_g_lower_cdf, semi_g_upper_cdf
from ..models.dto import ErrorEnvelope, ThresholdDetector
from ..utils.errors import DetectorNonexistenceError, InvalidParameterError
from ..utils.logger import logger

if TYPE_CHECKING:
    import numpy.typing as npt

    from ..schemas.noise import Constellation, NoiseModel

    type FloatArray = npt.NDArray[np.float64]

__all__ = [
    "awgn_error_probability",
    "check_existence",
    "decide",
    "decide_many",
    "error_envelope",
    "error_envelope_at_threshold",
    "error_envelope_curve",
    "min_distance_detector",
    "min_distance_error_envelope",
    "optimal_threshold",
]


def check_existence(c: Constellation, noise: NoiseModel) -> None:
    """
    检查最优检测器的存在条件 μ̄ − μ̲ < x_A − x_B。

    等号情形同样视为不存在，并额外记录一条警告。

    Raises:
        DetectorNonexistenceError: 均值区间宽度不小于符号间距。
    """
    width = noise.mean.width
    distance = c.distance
    if width < distance:
        return
    if width == distance:
        logger.warning("Mean width equals symbol distance ({:.6g}), treated as nonexistence.", distance)
    raise DetectorNonexistenceError(width, distance)


def optimal_threshold(c: Constellation, noise: NoiseModel) -> ThresholdDetector:
    """
    计算同时最小化误码概率上下包络的最优门限 (x_A + x_B + μ̄ + μ̲) / 2。

    Args:
        c: 二元星座。
        noise: 噪声模型。

    Returns:
        ThresholdDetector: 最优门限检测器。

    Raises:
        DetectorNonexistenceError: 最优检测器不存在。
    """
    check_existence(c, noise)
    return ThresholdDetector(threshold=(c.x_a + c.x_b + noise.mean.hi + noise.mean.lo) / 2)


def min_distance_detector(c: Constellation) -> ThresholdDetector:
    """经典最小距离检测器，门限为星座中点。"""
    return ThresholdDetector(threshold=c.midpoint)


def decide(d: ThresholdDetector, c: Constellation, y: float) -> float:
    """对单个接收值做判决，y 恰好等于门限时判为 x_B。"""
    return c.x_a if y > d.threshold else c.x_b


def decide_many(d: ThresholdDetector, c: Constellation, ys: FloatArray) -> FloatArray:
    """decide 的向量化版本。"""
    return np.where(np.asarray(ys) > d.threshold, c.x_a, c.x_b)


def error_envelope_at_threshold(y0: float, c: Constellation, noise: NoiseModel) -> ErrorEnvelope:
    """
    任意门限 y0 下的误码概率包络。

    P̄e(y0) = ½·P̄(Y ≤ y0 | x_A) + ½·P̄(Y > y0 | x_B)，P̲e 取对应的下包络。
    对最优检测器存在与不存在两种情形都成立。

    Args:
        y0: 判决门限。
        c: 二元星座。
        noise: 噪声模型。

    Returns:
        ErrorEnvelope: [P̲e(y0), P̄e(y0)]。
    """
    miss = output_cdf_envelope(noise, c.x_a, y0)
    false_alarm = output_tail_envelope(noise, c.x_b, y0)
    return ErrorEnvelope(
        pe_lower=0.5 * miss.lower + 0.5 * false_alarm.lower,
        pe_upper=0.5 * miss.upper + 0.5 * false_alarm.upper,
    )


def error_envelope_curve(y0s: FloatArray, c: Constellation, noise: NoiseModel) -> tuple[FloatArray, FloatArray]:
    """
    在门限网格上批量计算误码概率包络。

    Returns:
        tuple[FloatArray, FloatArray]: (pe_lower, pe_upper)，与 y0s 同形状。
    """
    y0s = np.asarray(y0s, dtype=np.float64)
    box = noise.sigma
    mu_lo, mu_hi = noise.mean.lo, noise.mean.hi
    pe_upper = 0.5 * semi_g_upper_cdf(y0s - c.x_a - mu_lo, box) + 0.5 * (
        1.0 - semi_g_lower_cdf(y0s - c.x_b - mu_hi, box)
    )
    pe_lower = 0.5 * semi_g_lower_cdf(y0s - c.x_a - mu_hi, box) + 0.5 * (
        1.0 - semi_g_upper_cdf(y0s - c.x_b - mu_lo, box)
    )
    return np.asarray(pe_lower, dtype=np.float64), np.asarray(pe_upper, dtype=np.float64)


def error_envelope(c: Constellation, noise: NoiseModel) -> ErrorEnvelope:
    """
    最优检测器的误码概率包络闭式解。

    P̄e = (2σ̄/(σ̄+σ̲))·Q((d − w)/(2σ̄))，P̲e = (2σ̲/(σ̄+σ̲))·Q((d + w)/(2σ̲))，
    其中 d 为符号间距，w 为均值区间宽度。

    该值是 [x_B + μ̄, x_A + μ̲] 内 P̄e 的最小值。门限远离星座时 P̄e 从上方趋于 ½，
    因此只有闭式值不超过 ½ 时它才是全局最小值。

    Raises:
        DetectorNonexistenceError: 最优检测器不存在。
    """
    check_existence(c, noise)
    lo, hi = noise.sigma.sigma_lo, noise.sigma.sigma_hi
    d, w = c.distance, noise.mean.width
    total = lo + hi
    return ErrorEnvelope(
        pe_lower=(2 * lo / total) * q_function((d + w) / (2 * lo)),
        pe_upper=(2 * hi / total) * q_function((d - w) / (2 * hi)),
    )


def min_distance_error_envelope(c: Constellation, noise: NoiseModel) -> ErrorEnvelope:
    """最小距离检测器在不确定噪声下的误码概率包络。"""
    return error_envelope_at_threshold(c.midpoint, c, noise)


def awgn_error_probability(c: Constellation, sigma: float) -> float:
    """经典 AWGN 信道的误码概率 Q(d / 2σ)。"""
    if not sigma > 0:
        raise InvalidParameterError(f"sigma must be positive, got {sigma}")
    return q_function(c.distance / (2 * sigma))
