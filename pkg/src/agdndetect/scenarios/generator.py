"""场景噪声生成。

每个样本服从 N(μᵢ, σᵢ²)，(μᵢ, σᵢ) 由场景策略在不确定区间 [μ̲, μ̄] × [σ̲, σ̄] 内选取。
这类逐样本高斯混合属于次线性期望所表示的概率族，只用于验证包络的包含关系，并不要求达到包络。
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

import numpy as np

from ..schemas.scenarios import (
    BlockSwitchPolicy,
    CustomPolicy,
    FixedPolicy,
    IidUniformBoxPolicy,
    TwoPointSwitchPolicy,
)
from ..utils.errors import InvalidParameterError
from ..utils.logger import logger
from .rng import Stream, block_generator, check_seed, map_blocks

if TYPE_CHECKING:
    import numpy.typing as npt

    from ..schemas.noise import NoiseModel
    from ..schemas.scenarios import ScenarioPolicy

    type FloatArray = npt.NDArray[np.float64]
    type BoolArray = npt.NDArray[np.bool_]
    type ComplexArray = npt.NDArray[np.complex128]

__all__ = [
    "check_policy",
    "gain_block",
    "generate_noise",
    "generate_rayleigh_gains",
    "noise_block",
    "realize_parameters",
    "symbol_block",
]


def _in_box(mu: FloatArray, sigma: FloatArray, noise: NoiseModel) -> bool:
    return bool(
        np.all(mu >= noise.mean.lo)
        and np.all(mu <= noise.mean.hi)
        and np.all(sigma >= noise.sigma.sigma_lo)
        and np.all(sigma <= noise.sigma.sigma_hi)
    )


def check_policy(policy: ScenarioPolicy, noise: NoiseModel, n: int) -> None:
    """
    检查策略参数与噪声区间、样本数是否一致。

    Raises:
        InvalidParameterError: 固定参数或自定义序列超出区间，或自定义序列长度不等于 n。
    """
    match policy:
        case FixedPolicy(mu=mu, sigma=sigma):
            if not _in_box(np.array([mu]), np.array([sigma]), noise):
                raise InvalidParameterError(f"fixed parameters (mu={mu}, sigma={sigma}) lie outside the noise box")
        case CustomPolicy(schedule=schedule):
            if len(schedule) != n:
                raise InvalidParameterError(f"custom schedule has {len(schedule)} entries, expected {n}")
            arr = np.asarray(schedule, dtype=np.float64).reshape(-1, 2)
            if not _in_box(arr[:, 0], arr[:, 1], noise):
                raise InvalidParameterError("custom schedule leaves the noise box")
        case _:
            pass


def _corner_table(policy: BlockSwitchPolicy, n: int, seed: int, point: int) -> npt.NDArray[np.int64]:
    n_blocks = max(1, math.ceil(n / policy.block_len))
    return block_generator(seed, Stream.CORNERS, 0, point).integers(0, 4, size=n_blocks)


def _block_parameters(
    policy: ScenarioPolicy, noise: NoiseModel, n: int, seed: int, point: int, block: int, start: int, stop: int
) -> tuple[FloatArray, FloatArray]:
    m = stop - start
    mu_lo, mu_hi = noise.mean.lo, noise.mean.hi
    s_lo, s_hi = noise.sigma.sigma_lo, noise.sigma.sigma_hi

    match policy:
        case FixedPolicy(mu=mu, sigma=sigma):
            return np.full(m, mu), np.full(m, sigma)
        case IidUniformBoxPolicy():
            u = block_generator(seed, Stream.POLICY, block, point).random((m, 2))
            mus = np.minimum(mu_lo + (mu_hi - mu_lo) * u[:, 0], mu_hi)
            sigmas = np.minimum(s_lo + (s_hi - s_lo) * u[:, 1], s_hi)
            return mus, sigmas
        case TwoPointSwitchPolicy(p=p):
            pick = block_generator(seed, Stream.POLICY, block, point).random((m, 2)) < p
            return np.where(pick[:, 0], mu_hi, mu_lo), np.where(pick[:, 1], s_hi, s_lo)
        case BlockSwitchPolicy(block_len=block_len):
            corners = _corner_table(policy, n, seed, point)[np.arange(start, stop) // block_len]
            return np.where(corners & 1, mu_hi, mu_lo), np.where(corners & 2, s_hi, s_lo)
        case CustomPolicy(schedule=schedule):
            arr = np.asarray(schedule[start:stop], dtype=np.float64).reshape(-1, 2)
            return arr[:, 0].copy(), arr[:, 1].copy()
    raise InvalidParameterError(f"unsupported scenario policy: {policy!r}")


def realize_parameters(
    policy: ScenarioPolicy, noise: NoiseModel, n: int, seed: int, *, point: int = 0, threads: int = 1
) -> tuple[FloatArray, FloatArray]:
    """
    给出策略选定的逐样本参数序列 (μᵢ, σᵢ)。

    Args:
        policy: 场景策略。
        noise: 噪声模型。
        n: 样本数。
        seed: 64 位无符号种子。
        point: 扫描点序号。
        threads: 并行线程数，不影响结果。

    Returns:
        tuple[FloatArray, FloatArray]: 长度为 n 的 μ 与 σ 序列。
    """
    check_seed(seed)
    check_policy(policy, noise, n)
    parts = map_blocks(n, lambda b, lo, hi: _block_parameters(policy, noise, n, seed, point, b, lo, hi), threads)
    if not parts:
        return np.empty(0), np.empty(0)
    return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])


def noise_block(
    policy: ScenarioPolicy,
    noise: NoiseModel,
    n: int,
    seed: int,
    block: int,
    start: int,
    stop: int,
    *,
    point: int = 0,
    stream: Stream = Stream.NOISE,
) -> FloatArray:
    """
    生成 [start, stop) 范围内的噪声样本，供实验按块划分任务。

    调用方负责事先执行 check_policy；每块生成后都会断言参数位于区间内。
    """
    mus, sigmas = _block_parameters(policy, noise, n, seed, point, block, start, stop)
    if not _in_box(mus, sigmas, noise):
        raise InvalidParameterError("realized scenario parameters leave the noise box")
    z = block_generator(seed, stream, block, point).standard_normal(stop - start)
    return mus + sigmas * z


def symbol_block(seed: int, block: int, start: int, stop: int, *, point: int = 0) -> BoolArray:
    """生成 [start, stop) 范围内的等概符号，True 表示 x_A。"""
    return block_generator(seed, Stream.SYMBOLS, block, point).random(stop - start) < 0.5


def generate_noise(
    policy: ScenarioPolicy, noise: NoiseModel, n: int, seed: int, *, point: int = 0, threads: int = 1
) -> FloatArray:
    """
    按场景策略生成 n 个噪声样本。

    对固定的 (policy, noise, n, seed, point) 结果确定，与 threads 无关。

    Raises:
        InvalidParameterError: 策略参数超出区间、种子无效或自定义序列长度不符。
    """
    check_seed(seed)
    check_policy(policy, noise, n)
    logger.debug("Generating {} noise samples with policy {}", n, policy.type)
    parts = map_blocks(n, lambda b, lo, hi: noise_block(policy, noise, n, seed, b, lo, hi, point=point), threads)
    return np.concatenate(parts) if parts else np.empty(0)


def gain_block(seed: int, block: int, start: int, stop: int, *, point: int = 0) -> ComplexArray:
    """生成 [start, stop) 范围内的 𝒞𝒩(0, 1) 信道增益。"""
    g = block_generator(seed, Stream.GAINS, block, point).standard_normal((stop - start, 2)) * math.sqrt(0.5)
    return g[:, 0] + 1j * g[:, 1]


def generate_rayleigh_gains(n: int, seed: int, *, point: int = 0, threads: int = 1) -> ComplexArray:
    """
    生成 n 个独立的 𝒞𝒩(0, 1) 瑞利衰落增益，实部与虚部方差均为 ½。

    Raises:
        InvalidParameterError: n < 1 或种子无效。
    """
    if n < 1:
        raise InvalidParameterError(f"gain count must be at least 1, got {n}")
    check_seed(seed)
    parts = map_blocks(n, lambda b, lo, hi: gain_block(seed, b, lo, hi, point=point), threads)
    return np.concatenate(parts)
