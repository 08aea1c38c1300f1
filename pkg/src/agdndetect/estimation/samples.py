from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np
from pydantic import BaseModel, ConfigDict, FiniteFloat

from ..utils.errors import ConfigError, InvalidParameterError

if TYPE_CHECKING:
    from collections.abc import Iterable

    import numpy.typing as npt

    from ..schemas.noise import Constellation

    type FloatArray = npt.NDArray[np.float64]

__all__ = ["IoSample", "SampleSet", "load_samples_csv"]


class IoSample(BaseModel):
    """一组信道输入输出观测。

    Attributes:
        x: 发送符号，必须是星座点之一。
        y: 接收值。
    """

    model_config = ConfigDict(frozen=True)

    x: FiniteFloat
    y: FiniteFloat


@dataclass(frozen=True, slots=True)
class SampleSet:
    """
    按列存储的观测序列，估计算法直接在 numpy 数组上做滑动窗口运算。

    Attributes:
        x: 发送符号序列。
        y: 接收值序列。
    """

    x: FloatArray
    y: FloatArray

    def __post_init__(self) -> None:
        if self.x.shape != self.y.shape or self.x.ndim != 1:
            raise InvalidParameterError("x and y must be one-dimensional arrays of equal length")
        if not (np.all(np.isfinite(self.x)) and np.all(np.isfinite(self.y))):
            raise InvalidParameterError("samples must be finite")

    def __len__(self) -> int:
        return int(self.x.shape[0])

    @classmethod
    def from_arrays(cls, x: Iterable[float], y: Iterable[float]) -> SampleSet:
        return cls(x=np.asarray(list(x), dtype=np.float64), y=np.asarray(list(y), dtype=np.float64))

    @classmethod
    def from_samples(cls, samples: Iterable[IoSample]) -> SampleSet:
        items = list(samples)
        return cls.from_arrays((s.x for s in items), (s.y for s in items))

    @property
    def residuals(self) -> FloatArray:
        """噪声观测 y − x。"""
        return self.y - self.x

    def samples(self) -> list[IoSample]:
        return [IoSample(x=float(a), y=float(b)) for a, b in zip(self.x, self.y, strict=True)]

    def check_symbols(self, c: Constellation) -> None:
        """
        检查每个发送符号都是星座点。

        Raises:
            InvalidParameterError: 存在不属于星座的符号。
        """
        valid = np.isclose(self.x, c.x_a, rtol=0.0, atol=1e-9) | np.isclose(self.x, c.x_b, rtol=0.0, atol=1e-9)
        if not np.all(valid):
            bad = int(np.argmin(valid))
            raise InvalidParameterError(f"sample {bad}: symbol {self.x[bad]} is not a constellation point")


def _is_comment(row: list[str]) -> bool:
    return not row or not "".join(row).strip() or row[0].lstrip().startswith("#")


def load_samples_csv(path: str | Path) -> SampleSet:
    """
    读取两列 (x, y) 数值 CSV，表头可选，空行与以 # 开头的行被忽略。

    Args:
        path: 文件路径。

    Returns:
        SampleSet: 观测序列。

    Raises:
        ConfigError: 文件不可读、列数不为 2 或包含非数值内容。
    """
    xs: list[float] = []
    ys: list[float] = []
    header_allowed = True
    try:
        with Path(path).open(encoding="utf-8", newline="") as f:
            for lineno, row in enumerate(csv.reader(f), start=1):
                if _is_comment(row):
                    continue
                first, header_allowed = header_allowed, False
                if len(row) != 2:
                    raise ConfigError(f"{path}:{lineno}: expected 2 columns, got {len(row)}")
                try:
                    x, y = float(row[0]), float(row[1])
                except ValueError:
                    if first:
                        continue  # 表头
                    raise ConfigError(f"{path}:{lineno}: non-numeric value in {row!r}") from None
                xs.append(x)
                ys.append(y)
    except OSError as e:
        raise ConfigError(f"cannot read samples file {path}: {e}") from e

    if not xs:
        raise ConfigError(f"{path}: no samples found")
    try:
        return SampleSet.from_arrays(xs, ys)
    except InvalidParameterError as e:
        raise ConfigError(f"{path}: {e.msg}") from e
