"""Q 函数与半 G-正态分布函数上下包络核。

所有包络最终都归结为这里的三个核函数。每个函数同时接受标量与 numpy 数组：
标量输入返回 float，数组输入返回同形状的 float64 数组。
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING, overload

import numpy as np
from scipy import special

from ..utils.errors import InvalidParameterError

if TYPE_CHECKING:
    import numpy.typing as npt

    from ..schemas.noise import SigmaBox

    type FloatArray = npt.NDArray[np.float64]

__all__ = ["TAIL_CLAMP", "q_function", "semi_g_lower_cdf", "semi_g_upper_cdf"]

# |v| 超过该值时直接返回精确的 0/1
TAIL_CLAMP = 40.0

_SQRT2 = math.sqrt(2.0)


def _as_finite_array(v: float | FloatArray, name: str) -> FloatArray:
    arr = np.asarray(v, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise InvalidParameterError(f"{name} must be finite")
    return arr


def _check_box(box: SigmaBox) -> tuple[float, float]:
    lo, hi = box.sigma_lo, box.sigma_hi
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo <= 0 or lo > hi:
        raise InvalidParameterError(f"invalid sigma box [{lo}, {hi}]")
    return lo, hi


def _q(v: FloatArray) -> FloatArray:
    out: FloatArray = 0.5 * special.erfc(v / _SQRT2)
    out = np.where(v > TAIL_CLAMP, 0.0, out)
    return np.where(v < -TAIL_CLAMP, 1.0, out)


def _unwrap(arr: FloatArray) -> float | FloatArray:
    if arr.ndim == 0:
        return float(arr)
    return arr


@overload
def q_function(v: float) -> float: ...


@overload
def q_function(v: FloatArray) -> FloatArray: ...


def q_function(v: float | FloatArray) -> float | FloatArray:
    """标准正态分布的尾概率 Q(v) = P(V > v)。

    通过互补误差函数计算：Q(v) = erfc(v/√2)/2。|v| ≤ 8 时绝对误差不超过 1e-14，
    远尾相对误差不超过 1e-12；|v| > 40 时返回精确的 0 或 1。

    Args:
        v: 有限实数或数组。

    Returns:
        float | FloatArray: 与输入同形状的尾概率。

    Raises:
        InvalidParameterError: 输入包含 NaN 或无穷。
    """
    return _unwrap(_q(_as_finite_array(v, "v")))


def _gaussian_cdf(t: FloatArray, sigma: float) -> FloatArray:
    return _q(-t / sigma)


@overload
def semi_g_upper_cdf(t: float, box: SigmaBox) -> float: ...


@overload
def semi_g_upper_cdf(t: FloatArray, box: SigmaBox) -> FloatArray: ...


def semi_g_upper_cdf(t: float | FloatArray, box: SigmaBox) -> float | FloatArray:
    """G-正态噪声分布函数的上包络 sup_P P(δ ≤ t)。

    t ≤ 0 时为 (2σ̄/(σ̄+σ̲))·Q(−t/σ̄)，t > 0 时为 (σ̄−σ̲)/(σ̄+σ̲) + (2σ̲/(σ̄+σ̲))·Q(−t/σ̲)。
    函数在 t = 0 处连续、关于 t 单调不减，σ̲ = σ̄ 时退化为高斯分布函数。

    Args:
        t: 阈值，可为标量或数组。
        box: 标准差区间。

    Returns:
        float | FloatArray: 上包络概率。

    Raises:
        InvalidParameterError: t 非有限或 box 无效。
    """
    lo, hi = _check_box(box)
    arr = _as_finite_array(t, "t")
    if lo == hi:
        return _unwrap(_gaussian_cdf(arr, lo))

    total = lo + hi
    left = (2 * hi / total) * _q(-arr / hi)
    right = 1.0 - (2 * lo / total) * _q(arr / lo)
    out = np.where(arr <= 0, left, right)
    out = np.where(arr / lo > TAIL_CLAMP, 1.0, out)
    return _unwrap(np.clip(out, 0.0, 1.0))


@overload
def semi_g_lower_cdf(t: float, box: SigmaBox) -> float: ...


@overload
def semi_g_lower_cdf(t: FloatArray, box: SigmaBox) -> FloatArray: ...


def semi_g_lower_cdf(t: float | FloatArray, box: SigmaBox) -> float | FloatArray:
    """G-正态噪声分布函数的下包络 inf_P P(δ ≤ t)。

    t ≤ 0 时为 (2σ̲/(σ̄+σ̲))·(1 − Q(t/σ̲))，t > 0 时为 1 − (2σ̄/(σ̄+σ̲))·Q(t/σ̄)。

    Args:
        t: 阈值，可为标量或数组。
        box: 标准差区间。

    Returns:
        float | FloatArray: 下包络概率。

    Raises:
        InvalidParameterError: t 非有限或 box 无效。
    """
    lo, hi = _check_box(box)
    arr = _as_finite_array(t, "t")
    if lo == hi:
        return _unwrap(_gaussian_cdf(arr, lo))

    total = lo + hi
    left = (2 * lo / total) * _q(-arr / lo)
    right = 1.0 - (2 * hi / total) * _q(arr / hi)
    out = np.where(arr <= 0, left, right)
    out = np.where(arr / lo < -TAIL_CLAMP, 0.0, out)
    return _unwrap(np.clip(out, 0.0, 1.0))
