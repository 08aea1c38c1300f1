"""滑动窗口均值与标准差区间的两个残差方程。"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from ..kernel import semi_g_lower_cdf, semi_g_upper_cdf
from ..utils.errors import InvalidParameterError

if TYPE_CHECKING:
    import numpy.typing as npt

    from ..schemas.noise import SigmaBox, UncertaintyInterval
    from .samples import SampleSet

    type FloatArray = npt.NDArray[np.float64]

__all__ = ["ResidualSystem", "check_window", "residual_lower", "residual_upper", "sliding_window_means"]


def check_window(n: int, m: int) -> None:
    if n < 1:
        raise InvalidParameterError("sample set is empty")
    if not 1 <= m <= n:
        raise InvalidParameterError(f"window size m={m} must satisfy 1 <= m <= n={n}")


def sliding_window_means(values: FloatArray, m: int) -> FloatArray:
    """
    计算长度为 m 的全部滑动窗口均值，第 k 个窗口覆盖 values[k : k + m]。

    基于前缀和实现，二维输入沿第 0 轴滑动。

    Args:
        values: 一维或二维数组。
        m: 窗口大小，1 ≤ m ≤ n。

    Returns:
        FloatArray: 长度为 n − m + 1 的窗口均值。

    Raises:
        InvalidParameterError: 窗口大小无效或输入为空。
    """
    arr = np.asarray(values, dtype=np.float64)
    check_window(arr.shape[0], m)
    zero = np.zeros((1, *arr.shape[1:]))
    prefix = np.concatenate([zero, np.cumsum(arr, axis=0)])
    return (prefix[m:] - prefix[:-m]) / m


class ResidualSystem:
    """
    固定数据、窗口与门限后的残差方程组。

    示性函数部分与 σ 无关，构造时预先计算其窗口均值；核函数只需在不同的发送符号上求值，
    再按样本映射回去。

    Attributes:
        m: 窗口大小。
        y0: 判决门限。
    """

    def __init__(self, samples: SampleSet, m: int, mean_hat: UncertaintyInterval, y0: float) -> None:
        check_window(len(samples), m)
        self.m = m
        self.y0 = y0
        symbols, self._inverse = np.unique(samples.x, return_inverse=True)
        self._t_upper = y0 - symbols - mean_hat.lo
        self._t_lower = y0 - symbols - mean_hat.hi
        self._indicator_means = sliding_window_means((samples.y <= y0).astype(np.float64), m)

    def upper(self, sigma: SigmaBox) -> float:
        kernel = np.asarray(semi_g_upper_cdf(self._t_upper, sigma))[self._inverse]
        return float(np.max(self._indicator_means - sliding_window_means(kernel, self.m)))

    def lower(self, sigma: SigmaBox) -> float:
        kernel = np.asarray(semi_g_lower_cdf(self._t_lower, sigma))[self._inverse]
        return float(np.min(self._indicator_means - sliding_window_means(kernel, self.m)))

    def norm(self, sigma: SigmaBox) -> float:
        """两个残差绝对值的最大值。"""
        return max(abs(self.upper(sigma)), abs(self.lower(sigma)))


def residual_upper(
    sigma: SigmaBox, mean_hat: UncertaintyInterval, y0: float, samples: SampleSet, m: int
) -> float:
    """
    上残差：窗口平均 [I(yᵢ ≤ y0) − F̄(y0 − xᵢ − μ̲̂)] 在所有窗口起点上的最大值。

    F̄ 为半 G-正态分布函数的上包络核。真实参数处该值随样本数增大收敛到 0。
    """
    return ResidualSystem(samples, m, mean_hat, y0).upper(sigma)


def residual_lower(
    sigma: SigmaBox, mean_hat: UncertaintyInterval, y0: float, samples: SampleSet, m: int
) -> float:
    """下残差：窗口平均 [I(yᵢ ≤ y0) − F̲(y0 − xᵢ − μ̂̄)] 在所有窗口起点上的最小值。"""
    return ResidualSystem(samples, m, mean_hat, y0).lower(sigma)
