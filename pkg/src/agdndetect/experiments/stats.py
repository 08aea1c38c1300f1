from __future__ import annotations

import math

from scipy import stats

from ..utils.errors import InvalidParameterError

__all__ = ["EXACT_BELOW", "binomial_half_width"]

# 试验次数低于该值时使用 Clopper-Pearson 精确区间
EXACT_BELOW = 1000


def binomial_half_width(errors: int, trials: int, confidence: float = 0.99) -> float:
    """
    错误率的双侧二项置信区间半宽。

    trials ≥ 1000 时使用带 1/(2n) 连续性修正的正态近似；否则使用 Clopper-Pearson 精确区间，
    并取点估计到两端距离的较大者。

    Args:
        errors: 错误次数。
        trials: 试验次数。
        confidence: 置信水平。

    Returns:
        float: 置信区间半宽。

    Raises:
        InvalidParameterError: 计数或置信水平无效。
    """
    if trials < 1 or not 0 <= errors <= trials:
        raise InvalidParameterError(f"invalid counts: errors={errors}, trials={trials}")
    if not 0 < confidence < 1:
        raise InvalidParameterError(f"confidence must lie in (0, 1), got {confidence}")

    alpha = 1 - confidence
    rate = errors / trials
    if trials >= EXACT_BELOW:
        z = float(stats.norm.ppf(1 - alpha / 2))
        return z * math.sqrt(rate * (1 - rate) / trials) + 1 / (2 * trials)

    lower = 0.0 if errors == 0 else float(stats.beta.ppf(alpha / 2, errors, trials - errors + 1))
    upper = 1.0 if errors == trials else float(stats.beta.ppf(1 - alpha / 2, errors + 1, trials - errors))
    return max(rate - lower, upper - rate)
