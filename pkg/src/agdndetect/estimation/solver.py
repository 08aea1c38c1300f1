"""标准差区间的无导数求解。

残差是窗口极值，关于 (σ̲, σ̄) 连续但不光滑。求解分两步：先在对数网格上粗搜，再用 Nelder-Mead
局部细化。局部细化未达到容差时由 tenacity 从下一个网格候选点重新开始。
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

import numpy as np
from scipy import optimize
from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from ..models.dto import SigmaEstimate
from ..schemas.noise import SigmaBox
from ..utils.errors import DegenerateInputError, EstimationFailedError, SolverNotConvergedError
from ..utils.logger import logger
from .residuals import ResidualSystem

if TYPE_CHECKING:
    import numpy.typing as npt
    from tenacity import RetryCallState

    from ..schemas.noise import UncertaintyInterval
    from .samples import SampleSet

__all__ = ["DEFAULT_MAX_ITER", "DEFAULT_RESTARTS", "DEFAULT_TOL", "estimate_sigma_interval"]

DEFAULT_TOL = 1e-3
DEFAULT_MAX_ITER = 500
DEFAULT_RESTARTS = 3

GRID_POINTS = 25
GRID_SPAN = 4.0
# 残差标准差低于该相对量级视为零方差数据
DEGENERATE_STD = 1e-12
_LOG_CLAMP = 30.0


class _Tracker:
    """记录目标函数求值过程中的最优点与累计迭代次数。"""

    def __init__(self, system: ResidualSystem) -> None:
        self.system = system
        self.best_norm = math.inf
        self.best: SigmaBox | None = None
        self.iterations = 0

    def evaluate(self, box: SigmaBox) -> float:
        value = self.system.norm(box)
        if value < self.best_norm:
            self.best_norm, self.best = value, box
        return value


def _box_from_params(p: npt.NDArray[np.float64]) -> SigmaBox:
    u = float(np.clip(p[0], -_LOG_CLAMP, _LOG_CLAMP))
    v = min(abs(float(p[1])), _LOG_CLAMP)
    lo = math.exp(u)
    return SigmaBox(sigma_lo=lo, sigma_hi=max(lo, math.exp(u + v)))


def _coarse_grid(tracker: _Tracker, s0: float) -> list[tuple[float, SigmaBox]]:
    grid = np.geomspace(s0 / GRID_SPAN, s0 * GRID_SPAN, GRID_POINTS)
    candidates: list[tuple[float, SigmaBox]] = []
    for i, lo in enumerate(grid):
        for hi in grid[i:]:
            box = SigmaBox(sigma_lo=float(lo), sigma_hi=float(hi))
            candidates.append((tracker.evaluate(box), box))
    candidates.sort(key=lambda item: item[0])
    return candidates


def _refine(tracker: _Tracker, start: SigmaBox, tol: float, max_iter: int) -> tuple[SigmaBox, float, int]:
    u0 = math.log(start.sigma_lo)
    v0 = math.log(start.sigma_hi / start.sigma_lo)
    simplex = np.array([[u0, v0], [u0 + 0.1, v0], [u0, v0 + 0.1]])
    result = optimize.minimize(
        lambda p: tracker.evaluate(_box_from_params(p)),
        np.array([u0, v0]),
        method="Nelder-Mead",
        options={"maxiter": max_iter, "initial_simplex": simplex, "xatol": 1e-7, "fatol": tol / 100},
    )
    box = _box_from_params(result.x)
    return box, tracker.system.norm(box), int(result.nit)


def _log_restart(retry_state: RetryCallState) -> None:
    logger.warning("Sigma refinement did not converge (attempt {}), restarting.", retry_state.attempt_number)


def estimate_sigma_interval(
    samples: SampleSet,
    m: int,
    mean_hat: UncertaintyInterval,
    y0: float,
    *,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    restarts: int = DEFAULT_RESTARTS,
) -> SigmaEstimate:
    """
    联立求解上下两个残差方程，得到标准差区间估计 (σ̲̂, σ̂̄)。

    初值取 σ̲̂ = σ̂̄ = std(y − x − mid(mean_hat))；初值已满足容差时直接返回，迭代次数为 0。

    Args:
        samples: 观测序列。
        m: 窗口大小。
        mean_hat: 均值区间估计。
        y0: 判决门限，通常取 (x_A + x_B + μ̂̄ + μ̲̂) / 2。
        tol: 残差范数容差。
        max_iter: 单次局部细化的最大迭代次数。
        restarts: 局部细化的最多尝试次数。

    Returns:
        SigmaEstimate: 区间估计、残差范数与累计迭代次数。

    Raises:
        DegenerateInputError: 残差方差为零。
        EstimationFailedError: 所有尝试都未达到容差，携带最优迭代点。
    """
    system = ResidualSystem(samples, m, mean_hat, y0)
    residuals = samples.residuals - mean_hat.midpoint
    s0 = float(np.std(residuals))
    scale = max(1.0, float(np.max(np.abs(samples.residuals))))
    if not s0 > DEGENERATE_STD * scale:
        raise DegenerateInputError("residual variance is zero, sigma interval cannot be estimated")

    tracker = _Tracker(system)
    guess = SigmaBox.point(s0)
    norm0 = tracker.evaluate(guess)
    if norm0 <= tol:
        logger.debug("Initial guess sigma={:.6g} already solves the residual system", s0)
        return SigmaEstimate(sigma=guess, residual_norm=norm0, iterations=0)

    candidates = _coarse_grid(tracker, s0)
    logger.debug("Coarse grid best residual norm {:.3g}", candidates[0][0])

    retrying = Retrying(
        stop=stop_after_attempt(restarts),
        retry=retry_if_exception_type(SolverNotConvergedError),
        before_sleep=_log_restart,
        reraise=True,
    )
    try:
        for attempt in retrying:
            with attempt:
                start = candidates[(attempt.retry_state.attempt_number - 1) % len(candidates)][1]
                end, end_norm, nit = _refine(tracker, start, tol, max_iter)
                tracker.iterations += nit
                logger.debug("Refinement from {} ended at {} with norm {:.3g}", start, end, end_norm)
                box, norm = tracker.best or end, tracker.best_norm
                if norm > tol:
                    raise SolverNotConvergedError(box, norm, tracker.iterations)
                return SigmaEstimate(sigma=box, residual_norm=norm, iterations=tracker.iterations)
    except SolverNotConvergedError:
        pass

    raise EstimationFailedError(
        f"sigma solve did not reach tolerance {tol:g}, best residual norm {tracker.best_norm:.3g}",
        best=tracker.best,
        residual_norm=tracker.best_norm,
        iterations=tracker.iterations,
    )
