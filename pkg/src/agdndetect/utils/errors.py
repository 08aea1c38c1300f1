from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from ..schemas.noise import SigmaBox

__all__ = [
    "AgdnError",
    "ConfigError",
    "DegenerateInputError",
    "DetectorNonexistenceError",
    "EstimationFailedError",
    "InvalidParameterError",
    "ModelAssumptionError",
    "SolverNotConvergedError",
]


class AgdnError(Exception):
    """基础异常，携带命令行退出码。"""

    exit_code: int = 1

    def __init__(self, msg: str):
        self.msg = msg
        super().__init__(msg)


class InvalidParameterError(AgdnError, ValueError):
    """参数超出定义域，例如非有限输入或无效的标准差区间。"""

    exit_code = 2


class ModelAssumptionError(InvalidParameterError):
    """调用方未声明定理所需的模型假设（例如复噪声实部与虚部的独立性）。"""


class ConfigError(AgdnError):
    """配置文件、命令行参数或输入文件无效。"""

    exit_code = 2


class DetectorNonexistenceError(AgdnError):
    """均值不确定区间宽度不小于符号间距时，最优检测器不存在。

    Attributes:
        width: 均值区间宽度 μ̄ − μ̲。
        distance: 符号间距 x_A − x_B。
    """

    exit_code = 3

    def __init__(self, width: float, distance: float):
        self.width = width
        self.distance = distance
        super().__init__(
            f"optimal detector does not exist: mean width {width:.6g} >= symbol distance {distance:.6g}"
        )


class EstimationFailedError(AgdnError):
    """标准差区间求解失败。

    Attributes:
        best: 求解过程中残差最小的迭代点，可能为 None。
        residual_norm: best 处两个残差绝对值的最大值。
        iterations: 已执行的局部迭代次数。
    """

    exit_code = 4

    def __init__(self, msg: str, best: SigmaBox | None = None, residual_norm: float = float("inf"), iterations: int = 0):
        self.best = best
        self.residual_norm = residual_norm
        self.iterations = iterations
        super().__init__(msg)


class DegenerateInputError(EstimationFailedError):
    """输入残差方差为零，无法构造 σ̲ > 0 的区间。"""


class SolverNotConvergedError(AgdnError):
    """单次局部求解未达到容差，由重试策略捕获。"""

    exit_code = 4

    def __init__(self, best: SigmaBox, residual_norm: float, iterations: int):
        self.best = best
        self.residual_norm = residual_norm
        self.iterations = iterations
        super().__init__(f"local refinement stopped at residual norm {residual_norm:.3g}")
