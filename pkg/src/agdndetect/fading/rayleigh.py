"""从加性噪声信道到瑞利衰落信道。

接收信号 Y′ = hX + Z′。以 h*/|h| 旋转后取实部得到实充分统计量 S′ = |h|X + Re((h*/|h|)Z′)，
检测问题因此化为增益为 |h| 的实 AGDN 信道。
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

import numpy as np

from ..detector import error_envelope
from ..kernel import q_function
from ..models.dto import ErrorEnvelope
from ..schemas.noise import ComplexGain, ComplexNoiseModel, NoiseModel, SigmaBox, UncertaintyInterval
from ..utils.errors import InvalidParameterError, ModelAssumptionError

if TYPE_CHECKING:
    import numpy.typing as npt

    from ..schemas.noise import Constellation

    type FloatArray = npt.NDArray[np.float64]
    type ComplexArray = npt.NDArray[np.complex128]

__all__ = [
    "averaged_error_envelope",
    "conditional_error_envelope",
    "conditional_error_envelope_with_mean",
    "rayleigh_error_probability",
    "rotate_gdistributed",
    "rotate_gnormal_box",
    "sufficient_statistic",
    "sufficient_statistics",
]


def _magnitude(h: ComplexGain) -> float:
    magnitude = h.magnitude
    if not magnitude > 0:
        raise InvalidParameterError("channel gain must be nonzero")
    return magnitude


def sufficient_statistic(h: ComplexGain, y_prime: complex) -> float:
    """
    实充分统计量 S′ = Re((h/|h|)* · y′)。

    Raises:
        InvalidParameterError: |h| = 0。
    """
    magnitude = _magnitude(h)
    return (h.value.conjugate() / magnitude * y_prime).real


def sufficient_statistics(h: ComplexArray, y_prime: ComplexArray) -> FloatArray:
    """sufficient_statistic 的向量化版本，逐元素配对 h 与 y′。"""
    magnitude = np.abs(h)
    if np.any(magnitude == 0):
        raise InvalidParameterError("channel gain must be nonzero")
    return np.real(np.conj(h) / magnitude * y_prime)


def rotate_gnormal_box(h: ComplexGain, box: SigmaBox) -> SigmaBox:
    """hδ 的实部与虚部仍服从 G-正态分布，标准差区间按 |h| 缩放。"""
    return box.scaled(_magnitude(h))


def _check_components(z: ComplexNoiseModel) -> None:
    if not z.independent:
        raise ModelAssumptionError("real and imaginary noise components must be declared independent")
    if z.re != z.im:
        raise InvalidParameterError("real and imaginary noise components must share the same intervals")


def rotate_gdistributed(h: ComplexGain, z: ComplexNoiseModel) -> ComplexNoiseModel:
    """
    旋转后的复噪声 hZ′ 的实部与虚部参数。

    实部均值区间为 [μ̲(h₁⁺+h₂⁻) − μ̄(h₁⁻+h₂⁺), μ̄(h₁⁺+h₂⁻) − μ̲(h₁⁻+h₂⁺)]，
    虚部为 [μ̲(h₁⁺+h₂⁺) − μ̄(h₁⁻+h₂⁻), μ̄(h₁⁺+h₂⁺) − μ̲(h₁⁻+h₂⁻)]，标准差区间按 |h| 缩放。

    Args:
        h: 复增益。
        z: 复噪声模型，实部与虚部需为同分布的独立副本。

    Returns:
        ComplexNoiseModel: hZ′ 的复噪声模型。

    Raises:
        ModelAssumptionError: 未声明实部与虚部独立。
        InvalidParameterError: 实部与虚部区间不一致或 |h| = 0。
    """
    _check_components(z)
    mu_lo, mu_hi = z.re.mean.lo, z.re.mean.hi
    sigma = rotate_gnormal_box(h, z.re.sigma)

    re_pos, re_neg = h.re_pos + h.im_neg, h.re_neg + h.im_pos
    im_pos, im_neg = h.re_pos + h.im_pos, h.re_neg + h.im_neg
    re = NoiseModel(
        mean=UncertaintyInterval(lo=mu_lo * re_pos - mu_hi * re_neg, hi=mu_hi * re_pos - mu_lo * re_neg),
        sigma=sigma,
    )
    im = NoiseModel(
        mean=UncertaintyInterval(lo=mu_lo * im_pos - mu_hi * im_neg, hi=mu_hi * im_pos - mu_lo * im_neg),
        sigma=sigma,
    )
    return ComplexNoiseModel(re=re, im=im, independent=True)


def conditional_error_envelope(h: ComplexGain, c: Constellation, box: SigmaBox) -> ErrorEnvelope:
    """
    给定信道增益 h、无均值不确定时的误码概率包络。

    P̄e = (2σ̄/(σ̄+σ̲))·Q(|h|d/(2σ̄))，P̲e = (2σ̲/(σ̄+σ̲))·Q(|h|d/(2σ̲))，只依赖 |h|。

    Raises:
        InvalidParameterError: |h| = 0。
    """
    magnitude = _magnitude(h)
    lo, hi = box.sigma_lo, box.sigma_hi
    total = lo + hi
    gd = magnitude * c.distance
    return ErrorEnvelope(
        pe_lower=(2 * lo / total) * q_function(gd / (2 * lo)),
        pe_upper=(2 * hi / total) * q_function(gd / (2 * hi)),
    )


def conditional_error_envelope_with_mean(h: ComplexGain, c: Constellation, z: ComplexNoiseModel) -> ErrorEnvelope:
    """
    带均值不确定的条件误码概率包络。

    以单位相位 h*/|h| 旋转噪声后，S′ 是星座 (|h|x_A, |h|x_B) 上的实 AGDN 信道，
    再代入最优检测器的闭式解。这是对无均值不确定情形的推广。

    Raises:
        ModelAssumptionError: 未声明实部与虚部独立。
        DetectorNonexistenceError: 旋转后的均值区间宽度不小于 |h|(x_A − x_B)。
    """
    magnitude = _magnitude(h)
    phase = ComplexGain.from_complex(h.value.conjugate() / magnitude)
    rotated = rotate_gdistributed(phase, z)
    return error_envelope(c.scaled(magnitude), rotated.re)


def averaged_error_envelope(c: Constellation, box: SigmaBox) -> ErrorEnvelope:
    """
    瑞利衰落 H ∼ 𝒞𝒩(0, 1) 下平均的误码概率包络。

    P̄e = (σ̄/(σ̄+σ̲))·[1 − √(d²/(d²+8σ̄²))]，P̲e = (σ̲/(σ̄+σ̲))·[1 − √(d²/(d²+8σ̲²))]。
    """
    lo, hi = box.sigma_lo, box.sigma_hi
    total = lo + hi
    d2 = c.distance**2
    return ErrorEnvelope(
        pe_lower=(lo / total) * (1 - math.sqrt(d2 / (d2 + 8 * box.variance_lo))),
        pe_upper=(hi / total) * (1 - math.sqrt(d2 / (d2 + 8 * box.variance_hi))),
    )


def rayleigh_error_probability(snr: float) -> float:
    """经典瑞利衰落信道的平均误码概率 ½(1 − √(SNR/(1+SNR)))。"""
    if snr < 0 or not math.isfinite(snr):
        raise InvalidParameterError(f"snr must be finite and non-negative, got {snr}")
    return 0.5 * (1 - math.sqrt(snr / (1 + snr)))
