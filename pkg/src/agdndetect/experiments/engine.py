"""蒙特卡洛实验引擎。

每个扫描点先按 sweep_mode 把基准配置缩放到目标中点信噪比，再计算理论包络，需要时运行仿真。
仿真按 BLOCK_SIZE 分块并行；每个块的符号、增益与噪声都由 (seed, 扫描点, 块号) 决定，
错误数按块求和，结果与线程数无关。
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from scipy import optimize

from ..channel import db_to_snr
from ..detector import (
    decide_many,
    error_envelope,
    error_envelope_at_threshold,
    min_distance_detector,
    min_distance_error_envelope,
    optimal_threshold,
)
from ..fading import averaged_error_envelope, rayleigh_error_probability, sufficient_statistics
from ..kernel import q_function
from ..models.dto import ComparisonRow, SweepRow, ThresholdDetector, TrialResult
from ..schemas.noise import NoiseModel
from ..schemas.scenarios import CustomPolicy, FixedPolicy
from ..scenarios import Stream, check_policy, gain_block, map_blocks, noise_block, symbol_block
from ..utils.errors import InvalidParameterError
from ..utils.logger import logger
from .config import DetectorKind, SweepMode
from .stats import binomial_half_width

if TYPE_CHECKING:
    from collections.abc import Sequence

    import numpy.typing as npt

    from ..models.dto import ErrorEnvelope
    from ..schemas.noise import Constellation
    from ..schemas.scenarios import ScenarioPolicy
    from .config import ExperimentConfig

__all__ = [
    "OperatingPoint",
    "compare_detectors",
    "detector_for",
    "fading_sweep",
    "midpoint_snr",
    "resolve_point",
    "run_trials",
    "sweep_error_curves",
    "theory_envelope",
    "theory_row",
]


@dataclass(frozen=True, slots=True)
class OperatingPoint:
    """
    扫描中的一个工作点。

    Attributes:
        index: 扫描点序号，写入随机数计数器。
        snr_db: 目标中点信噪比 (dB)，None 表示未缩放的基准配置。
        constellation: 缩放后的星座。
        noise: 缩放后的噪声模型。
        policy: 随噪声区间同步缩放的场景策略。
    """

    index: int
    snr_db: float | None
    constellation: Constellation
    noise: NoiseModel
    policy: ScenarioPolicy


def midpoint_snr(distance: float, noise: NoiseModel) -> float:
    """给定符号间距时的中点信噪比 (SNR̲ + SNR̄) / 2。"""
    w = noise.mean.width
    snr_hi = (distance + w) ** 2 / (8 * noise.sigma.variance_lo)
    snr_lo = (distance - w) ** 2 / (8 * noise.sigma.variance_hi) if w < distance else 0.0
    return (snr_lo + snr_hi) / 2


def _distance_for_snr(target: float, noise: NoiseModel) -> float:
    if midpoint_snr(0.0, noise) >= target:
        raise InvalidParameterError(
            f"target SNR {target:.6g} is below the minimum {midpoint_snr(0.0, noise):.6g} reachable with this mean width"
        )
    hi = max(1.0, 2 * noise.mean.width)
    while midpoint_snr(hi, noise) < target:
        hi *= 2
    return float(optimize.brentq(lambda d: midpoint_snr(d, noise) - target, 0.0, hi, xtol=1e-14, rtol=1e-15))


def _scale_policy(policy: ScenarioPolicy, factor: float) -> ScenarioPolicy:
    match policy:
        case FixedPolicy(mu=mu, sigma=sigma):
            return FixedPolicy(mu=mu, sigma=sigma * factor)
        case CustomPolicy(schedule=schedule):
            return CustomPolicy(schedule=[(mu, sigma * factor) for mu, sigma in schedule])
    return policy


def resolve_point(cfg: ExperimentConfig, index: int | None = None, snr_db: float | None = None) -> OperatingPoint:
    """
    把基准配置缩放到第 index 个扫描点，或直接缩放到 snr_db。

    scale_distance 固定噪声区间，用 brentq 求解使中点信噪比达到目标的符号间距；
    scale_sigma 固定星座与均值区间，标准差区间按闭式比例缩放。两者都未给出时返回基准配置。

    Raises:
        InvalidParameterError: 目标信噪比无法达到。
    """
    if snr_db is None and index is not None:
        snr_db = cfg.snr_db[index]
    point_index = index or 0
    if snr_db is None:
        return OperatingPoint(point_index, None, cfg.constellation, cfg.noise, cfg.policy)

    target = db_to_snr(snr_db)
    if cfg.sweep_mode is SweepMode.SCALE_DISTANCE:
        distance = _distance_for_snr(target, cfg.noise)
        c = cfg.constellation.with_distance(distance)
        return OperatingPoint(point_index, snr_db, c, cfg.noise, cfg.policy)

    factor = math.sqrt(midpoint_snr(cfg.constellation.distance, cfg.noise) / target)
    noise = NoiseModel(mean=cfg.noise.mean, sigma=cfg.noise.sigma.scaled(factor))
    return OperatingPoint(point_index, snr_db, cfg.constellation, noise, _scale_policy(cfg.policy, factor))


def detector_for(cfg: ExperimentConfig, point: OperatingPoint) -> ThresholdDetector:
    """
    按配置选择检测器。

    Raises:
        DetectorNonexistenceError: 选择最优检测器但其不存在。
    """
    match cfg.detector:
        case DetectorKind.OPTIMAL:
            return optimal_threshold(point.constellation, point.noise)
        case DetectorKind.MIN_DISTANCE:
            return min_distance_detector(point.constellation)
        case _:
            assert cfg.threshold is not None
            return ThresholdDetector(threshold=cfg.threshold)


def theory_envelope(cfg: ExperimentConfig, point: OperatingPoint) -> ErrorEnvelope:
    """所选检测器在该工作点的理论误码概率包络。"""
    match cfg.detector:
        case DetectorKind.OPTIMAL:
            return error_envelope(point.constellation, point.noise)
        case DetectorKind.MIN_DISTANCE:
            return min_distance_error_envelope(point.constellation, point.noise)
        case _:
            assert cfg.threshold is not None
            return error_envelope_at_threshold(cfg.threshold, point.constellation, point.noise)


def _count_errors(
    cfg: ExperimentConfig, point: OperatingPoint, detectors: Sequence[ThresholdDetector]
) -> list[int]:
    """在同一组符号与噪声实现上统计每个检测器的错误数。"""
    c, noise, policy, n = point.constellation, point.noise, point.policy, cfg.trials
    check_policy(policy, noise, n)

    def run_block(block: int, start: int, stop: int) -> list[int]:
        sent_a = symbol_block(cfg.seed, block, start, stop, point=point.index)
        sent = np.where(sent_a, c.x_a, c.x_b)
        y = sent + noise_block(policy, noise, n, cfg.seed, block, start, stop, point=point.index)
        return [int(np.count_nonzero(decide_many(d, c, y) != sent)) for d in detectors]

    parts = map_blocks(n, run_block, cfg.threads)
    return [sum(p[i] for p in parts) for i in range(len(detectors))]


def _trial_result(errors: int, trials: int) -> TrialResult:
    return TrialResult(errors=errors, trials=trials, ci_half_width=binomial_half_width(errors, trials))


def run_trials(cfg: ExperimentConfig, point: OperatingPoint | None = None) -> TrialResult:
    """
    发送 trials 个等概符号，叠加场景噪声后判决，统计错误率与 99% 二项置信区间半宽。

    Args:
        cfg: 实验配置。
        point: 工作点，为 None 时使用未缩放的基准配置。

    Returns:
        TrialResult: 错误数、试验数与置信区间半宽。

    Raises:
        DetectorNonexistenceError: 最优检测器不存在。
        InvalidParameterError: 场景策略与噪声区间不一致。
    """
    point = point or resolve_point(cfg)
    detector = detector_for(cfg, point)
    (errors,) = _count_errors(cfg, point, [detector])
    return _trial_result(errors, cfg.trials)


def theory_row(cfg: ExperimentConfig, snr_db: float, index: int = 0) -> SweepRow:
    """只含理论列的扫描行，经验列留空。"""
    point = resolve_point(cfg, index=index, snr_db=snr_db)
    envelope = theory_envelope(cfg, point)
    return SweepRow(
        snr_db=snr_db,
        pe_upper_theory=envelope.pe_upper,
        pe_lower_theory=envelope.pe_lower,
        pe_awgn_theory=q_function(math.sqrt(2 * db_to_snr(snr_db))),
    )


def sweep_error_curves(cfg: ExperimentConfig, sweep: Sequence[float] | None = None) -> list[SweepRow]:
    """
    信噪比扫描：每个点给出理论上下包络、AWGN 参考 Q(√(2·SNR))，以及可选的经验错误率。

    Args:
        cfg: 实验配置。
        sweep: 覆盖 cfg.snr_db 的扫描网格。

    Returns:
        list[SweepRow]: 每个扫描点一行。
    """
    grid = list(sweep) if sweep is not None else cfg.snr_db
    rows: list[SweepRow] = []
    for index, snr_db in enumerate(grid):
        row = theory_row(cfg, snr_db, index)
        if cfg.empirical:
            result = run_trials(cfg, resolve_point(cfg, index=index, snr_db=snr_db))
            row = row.model_copy(
                update={"pe_empirical": result.rate, "ci_half_width": result.ci_half_width, "trials": result.trials}
            )
        logger.info(
            "SNR {:.2f} dB: Pe in [{:.3e}, {:.3e}], empirical {}",
            snr_db,
            row.pe_lower_theory,
            row.pe_upper_theory,
            "-" if row.pe_empirical is None else f"{row.pe_empirical:.3e}",
        )
        rows.append(row)
    return rows


def compare_detectors(cfg: ExperimentConfig) -> list[ComparisonRow]:
    """
    在相同的噪声实现上比较最优检测器与最小距离检测器。

    均值区间退化时两个门限相同，仍然运行并记录警告。

    Raises:
        DetectorNonexistenceError: 最优检测器不存在。
    """
    if cfg.noise.mean.is_degenerate:
        logger.warning("Mean interval is degenerate, optimal and minimum distance detectors coincide.")

    rows: list[ComparisonRow] = []
    for index, snr_db in enumerate(cfg.snr_db):
        point = resolve_point(cfg, index=index)
        optimal = optimal_threshold(point.constellation, point.noise)
        baseline = min_distance_detector(point.constellation)
        errors_optimal, errors_baseline = _count_errors(cfg, point, [optimal, baseline])
        result_optimal = _trial_result(errors_optimal, cfg.trials)
        result_baseline = _trial_result(errors_baseline, cfg.trials)
        logger.info(
            "SNR {:.2f} dB: optimal {:.3e}, minimum distance {:.3e}", snr_db, result_optimal.rate, result_baseline.rate
        )
        rows.append(
            ComparisonRow(
                snr_db=snr_db,
                threshold_optimal=optimal.threshold,
                threshold_min_distance=baseline.threshold,
                pe_optimal=result_optimal.rate,
                ci_optimal=result_optimal.ci_half_width,
                pe_min_distance=result_baseline.rate,
                ci_min_distance=result_baseline.ci_half_width,
                pe_upper_optimal_theory=error_envelope(point.constellation, point.noise).pe_upper,
                pe_upper_min_distance_theory=min_distance_error_envelope(point.constellation, point.noise).pe_upper,
                trials=cfg.trials,
            )
        )
    return rows


def _fading_errors(cfg: ExperimentConfig, point: OperatingPoint) -> int:
    c, noise, policy, n = point.constellation, point.noise, point.policy, cfg.trials
    check_policy(policy, noise, n)
    gains = (
        np.array([g.value for g in cfg.custom_gains], dtype=np.complex128) if cfg.custom_gains is not None else None
    )

    def run_block(block: int, start: int, stop: int) -> int:
        seed, idx = cfg.seed, point.index
        sent_a = symbol_block(seed, block, start, stop, point=idx)
        h: npt.NDArray[np.complex128] = (
            gains[np.arange(start, stop) % len(gains)]
            if gains is not None
            else gain_block(seed, block, start, stop, point=idx)
        )
        z_re = noise_block(policy, noise, n, seed, block, start, stop, point=idx)
        z_im = noise_block(policy, noise, n, seed, block, start, stop, point=idx, stream=Stream.NOISE_IMAG)
        y = h * np.where(sent_a, c.x_a, c.x_b) + (z_re + 1j * z_im)
        decided_a = sufficient_statistics(h, y) > np.abs(h) * c.midpoint
        return int(np.count_nonzero(decided_a != sent_a))

    return sum(map_blocks(n, run_block, cfg.threads))


def fading_sweep(cfg: ExperimentConfig) -> list[SweepRow]:
    """
    瑞利衰落信道的信噪比扫描。

    理论列为平均误码概率包络；pe_awgn_theory 列在此给出经典瑞利信道的 ½(1 − √(SNR/(1+SNR)))。
    仿真对每个样本用充分统计量 S′ 与门限 |h|(x_A + x_B)/2 判决。custom_gains 非空时循环使用给定增益。

    Raises:
        InvalidParameterError: 噪声模型带有均值或均值不确定。
    """
    if not (cfg.noise.mean.is_degenerate and cfg.noise.mean.lo == 0):
        raise InvalidParameterError("fading sweep requires noise without mean or mean uncertainty")

    rows: list[SweepRow] = []
    for index, snr_db in enumerate(cfg.snr_db):
        point = resolve_point(cfg, index=index)
        envelope = averaged_error_envelope(point.constellation, point.noise.sigma)
        row = SweepRow(
            snr_db=snr_db,
            pe_upper_theory=envelope.pe_upper,
            pe_lower_theory=envelope.pe_lower,
            pe_awgn_theory=rayleigh_error_probability(db_to_snr(snr_db)),
        )
        if cfg.empirical:
            result = _trial_result(_fading_errors(cfg, point), cfg.trials)
            row = row.model_copy(
                update={"pe_empirical": result.rate, "ci_half_width": result.ci_half_width, "trials": result.trials}
            )
        logger.info("SNR {:.2f} dB: averaged Pe in [{:.3e}, {:.3e}]", snr_db, row.pe_lower_theory, row.pe_upper_theory)
        rows.append(row)
    return rows
