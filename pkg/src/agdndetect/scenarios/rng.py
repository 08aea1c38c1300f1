"""基于 Philox 的计数器随机数生成。

每个 (seed, 用途, 扫描点, 块号) 都对应一个独立的 Philox 生成器：seed 与用途组成 128 位密钥，
扫描点与块号写入 256 位计数器的高两个字。样本按 BLOCK_SIZE 分块生成，因此结果只取决于输入，
与并行线程数无关。
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from enum import IntEnum, unique
from typing import TYPE_CHECKING

import numpy as np

from ..utils.errors import InvalidParameterError

if TYPE_CHECKING:
    from collections.abc import Callable

__all__ = ["BLOCK_SIZE", "SEED_LIMIT", "Stream", "block_generator", "block_ranges", "check_seed", "map_blocks"]

BLOCK_SIZE = 1 << 14
SEED_LIMIT = 1 << 64


@unique
class Stream(IntEnum):
    """随机数用途，写入 Philox 密钥的高 64 位。"""

    SYMBOLS = 1
    NOISE = 2
    POLICY = 3
    CORNERS = 4
    GAINS = 5
    NOISE_IMAG = 6


def check_seed(seed: int) -> int:
    if not 0 <= seed < SEED_LIMIT:
        raise InvalidParameterError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def block_generator(seed: int, stream: Stream, block: int, point: int = 0) -> np.random.Generator:
    """
    构造指定块的独立生成器。

    Args:
        seed: 64 位无符号种子。
        stream: 随机数用途。
        block: 块号。
        point: 扫描点序号，不同信噪比点互不相关。

    Returns:
        np.random.Generator: 以 Philox 为底层的生成器。
    """
    key = check_seed(seed) | (int(stream) << 64)
    counter = np.array([0, 0, point, block], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key, counter=counter))


def block_ranges(n: int, block_size: int = BLOCK_SIZE) -> list[tuple[int, int, int]]:
    """将 [0, n) 切分为 (块号, 起点, 终点) 三元组。"""
    if n < 0:
        raise InvalidParameterError(f"sample count must be non-negative, got {n}")
    return [(b, start, min(start + block_size, n)) for b, start in enumerate(range(0, n, block_size))]


def map_blocks[T](n: int, fn: Callable[[int, int, int], T], threads: int = 1) -> list[T]:
    """
    对每个块调用 fn(block, start, stop)，按块号顺序返回结果。

    threads > 1 时使用线程池。numpy 的生成与向量运算会释放 GIL，结果顺序由块号决定。
    """
    ranges = block_ranges(n)
    if threads <= 1 or len(ranges) <= 1:
        return [fn(*r) for r in ranges]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda r: fn(*r), ranges))
