"""参数与检测性能估计。

1. 以滑动窗口均值的最大/最小值估计均值区间；
2. 由均值区间得到门限 ŷ0；
3. 联立两个残差方程求解标准差区间；
4. 将估计参数代入最优检测器的闭式误码概率包络。

窗口 k 覆盖第 k 到 k + m − 1 个样本，对窗口起点取极值。
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

import numpy as np

from ..detector import error_envelope
from ..models.dto import EstimationResult
from ..schemas.noise import NoiseModel, SigmaBox, UncertaintyInterval
from ..utils.errors import DegenerateInputError
from ..utils.logger import logger
from .residuals import sliding_window_means
from .samples import SampleSet
from .solver import DEFAULT_MAX_ITER, DEFAULT_RESTARTS, DEFAULT_TOL, estimate_sigma_interval

if TYPE_CHECKING:
    from collections.abc import Iterable

    from ..schemas.noise import Constellation
    from .samples import IoSample

__all__ = ["estimate_all", "estimate_mean_interval", "phi_max_mean_variance"]


def estimate_mean_interval(samples: SampleSet, m: int) -> UncertaintyInterval:
    """
    均值区间估计：y − x 的滑动窗口均值的最小值与最大值。

    Args:
        samples: 观测序列。
        m: 窗口大小，1 ≤ m ≤ n。

    Returns:
        UncertaintyInterval: [μ̲̂, μ̂̄]。

    Raises:
        InvalidParameterError: 窗口大小无效。
    """
    means = sliding_window_means(samples.residuals, m)
    return UncertaintyInterval(lo=float(np.min(means)), hi=float(np.max(means)))


def phi_max_mean_variance(noise_samples: Iterable[float], m: int) -> SigmaBox:
    """
    无均值不确定时用 φ(z) = z² 的窗口均值极值估计标准差区间。

    σ̂̄² 为 z² 窗口均值的最大值，σ̲̂² 为最小值。

    Raises:
        InvalidParameterError: 窗口大小无效。
        DegenerateInputError: 存在全零窗口，σ̲̂ 为 0。
    """
    z = np.asarray(list(noise_samples), dtype=np.float64)
    second_moments = sliding_window_means(z * z, m)
    lo, hi = float(np.min(second_moments)), float(np.max(second_moments))
    if not lo > 0:
        raise DegenerateInputError("a window of all-zero noise samples gives sigma_lo = 0")
    return SigmaBox(sigma_lo=math.sqrt(lo), sigma_hi=math.sqrt(hi))


def estimate_all(
    samples: SampleSet | Iterable[IoSample],
    m: int,
    c: Constellation,
    *,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    restarts: int = DEFAULT_RESTARTS,
) -> EstimationResult:
    """
    完整的参数与检测性能估计流程。

    Args:
        samples: 观测序列，也可以是 IoSample 的可迭代对象。
        m: 窗口大小。
        c: 发送所用的二元星座。
        tol: 标准差求解的残差容差。
        max_iter: 单次局部细化的最大迭代次数。
        restarts: 局部细化的最多尝试次数。

    Returns:
        EstimationResult: 估计参数、门限、误码概率包络与求解诊断信息。

    Raises:
        InvalidParameterError: 符号不属于星座或窗口大小无效。
        DegenerateInputError: 残差方差为零。
        EstimationFailedError: 标准差求解失败。
        DetectorNonexistenceError: 估计的均值区间宽度不小于符号间距。
    """
    data = samples if isinstance(samples, SampleSet) else SampleSet.from_samples(samples)
    data.check_symbols(c)

    mean_hat = estimate_mean_interval(data, m)
    y0 = (c.x_a + c.x_b + mean_hat.hi + mean_hat.lo) / 2
    logger.info("Estimated mean interval [{:.6g}, {:.6g}], threshold {:.6g}", mean_hat.lo, mean_hat.hi, y0)

    estimate = estimate_sigma_interval(data, m, mean_hat, y0, tol=tol, max_iter=max_iter, restarts=restarts)
    logger.info(
        "Estimated sigma interval [{:.6g}, {:.6g}] after {} iterations",
        estimate.sigma.sigma_lo,
        estimate.sigma.sigma_hi,
        estimate.iterations,
    )

    envelope = error_envelope(c, NoiseModel(mean=mean_hat, sigma=estimate.sigma))
    return EstimationResult(
        mean_hat=mean_hat,
        sigma_hat=estimate.sigma,
        threshold_hat=y0,
        error_envelope_hat=envelope,
        residual_norm=estimate.residual_norm,
        solver_iterations=estimate.iterations,
    )
