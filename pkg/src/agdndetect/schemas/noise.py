from __future__ import annotations

import math
from typing import Self

from pydantic import BaseModel, ConfigDict, Field, FiniteFloat, model_validator

__all__ = [
    "ComplexGain",
    "ComplexNoiseModel",
    "Constellation",
    "NoiseModel",
    "SigmaBox",
    "UncertaintyInterval",
]


class _ValueModel(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class UncertaintyInterval(_ValueModel):
    """均值不确定区间 [lo, hi]，对应最大分布 M_[μ̲, μ̄]。

    lo == hi 表示不存在均值不确定性。

    Attributes:
        lo: 区间下端 μ̲。
        hi: 区间上端 μ̄。
    """

    lo: FiniteFloat
    hi: FiniteFloat

    @model_validator(mode="after")
    def _check_order(self) -> Self:
        if self.lo > self.hi:
            raise ValueError(f"interval lower end {self.lo} exceeds upper end {self.hi}")
        return self

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return (self.lo + self.hi) / 2

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    @classmethod
    def point(cls, value: float) -> UncertaintyInterval:
        return cls(lo=value, hi=value)


class SigmaBox(_ValueModel):
    """G-正态分布 N(0, [σ̲², σ̄²]) 的标准差区间。

    Attributes:
        sigma_lo: 下标准差 σ̲，满足 σ̲² = −𝔼[−δ²]。
        sigma_hi: 上标准差 σ̄，满足 σ̄² = 𝔼[δ²]。
    """

    sigma_lo: FiniteFloat = Field(gt=0)
    sigma_hi: FiniteFloat = Field(gt=0)

    @model_validator(mode="after")
    def _check_order(self) -> Self:
        if self.sigma_lo > self.sigma_hi:
            raise ValueError(f"sigma_lo {self.sigma_lo} exceeds sigma_hi {self.sigma_hi}")
        return self

    @property
    def is_degenerate(self) -> bool:
        return self.sigma_lo == self.sigma_hi

    @property
    def variance_lo(self) -> float:
        return self.sigma_lo**2

    @property
    def variance_hi(self) -> float:
        return self.sigma_hi**2

    def scaled(self, factor: float) -> SigmaBox:
        return SigmaBox(sigma_lo=self.sigma_lo * factor, sigma_hi=self.sigma_hi * factor)

    @classmethod
    def point(cls, sigma: float) -> SigmaBox:
        return cls(sigma_lo=sigma, sigma_hi=sigma)

    @classmethod
    def from_variances(cls, variance_lo: float, variance_hi: float) -> SigmaBox:
        return cls(sigma_lo=math.sqrt(variance_lo), sigma_hi=math.sqrt(variance_hi))


class NoiseModel(_ValueModel):
    """AGDN 信道噪声 Z = M + δ。

    均值区间退化（lo == hi）即为无均值不确定的 AGDN 信道。

    Attributes:
        mean: 最大分布部分 M 的均值区间。
        sigma: G-正态部分 δ 的标准差区间。
    """

    mean: UncertaintyInterval = Field(default_factory=lambda: UncertaintyInterval(lo=0.0, hi=0.0))
    sigma: SigmaBox

    @property
    def is_degenerate(self) -> bool:
        return self.mean.is_degenerate and self.sigma.is_degenerate

    @classmethod
    def build(cls, mu_lo: float, mu_hi: float, sigma_lo: float, sigma_hi: float) -> NoiseModel:
        return cls(
            mean=UncertaintyInterval(lo=mu_lo, hi=mu_hi),
            sigma=SigmaBox(sigma_lo=sigma_lo, sigma_hi=sigma_hi),
        )

    @classmethod
    def gaussian(cls, sigma: float, mu: float = 0.0) -> NoiseModel:
        return cls(mean=UncertaintyInterval.point(mu), sigma=SigmaBox.point(sigma))


class Constellation(_ValueModel):
    """二元输入信号 X ∈ {x_A, x_B}，约定 x_A > x_B。"""

    x_a: FiniteFloat = 1.0
    x_b: FiniteFloat = -1.0

    @model_validator(mode="after")
    def _check_order(self) -> Self:
        if not self.x_a > self.x_b:
            raise ValueError(f"x_a ({self.x_a}) must be greater than x_b ({self.x_b})")
        return self

    @property
    def distance(self) -> float:
        return self.x_a - self.x_b

    @property
    def midpoint(self) -> float:
        return (self.x_a + self.x_b) / 2

    def with_distance(self, distance: float) -> Constellation:
        """保持中点不变，将符号间距缩放为 distance。"""
        center = self.midpoint
        return Constellation(x_a=center + distance / 2, x_b=center - distance / 2)

    def scaled(self, factor: float) -> Constellation:
        return Constellation(x_a=self.x_a * factor, x_b=self.x_b * factor)


class ComplexGain(_ValueModel):
    """复信道增益 h = h₁ + i·h₂。"""

    h_re: FiniteFloat
    h_im: FiniteFloat = 0.0

    @classmethod
    def from_complex(cls, h: complex) -> ComplexGain:
        return cls(h_re=h.real, h_im=h.imag)

    @property
    def value(self) -> complex:
        return complex(self.h_re, self.h_im)

    @property
    def magnitude(self) -> float:
        return math.hypot(self.h_re, self.h_im)

    @property
    def re_pos(self) -> float:
        return max(self.h_re, 0.0)

    @property
    def re_neg(self) -> float:
        return max(-self.h_re, 0.0)

    @property
    def im_pos(self) -> float:
        return max(self.h_im, 0.0)

    @property
    def im_neg(self) -> float:
        return max(-self.h_im, 0.0)


class ComplexNoiseModel(_ValueModel):
    """复噪声 Z′ = Re(Z′) + i·Im(Z′)。

    Attributes:
        re: 实部噪声模型。
        im: 虚部噪声模型。
        independent: 调用方声明虚部是实部的独立副本。旋转闭包定理只在该假设下成立，
            为 False 时衰落模块拒绝计算。
    """

    re: NoiseModel
    im: NoiseModel
    independent: bool = True

    @classmethod
    def isotropic(cls, noise: NoiseModel, *, independent: bool = True) -> ComplexNoiseModel:
        return cls(re=noise, im=noise, independent=independent)
