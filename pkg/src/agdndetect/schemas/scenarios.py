from typing import Annotated, Literal, get_args

from pydantic import BaseModel, ConfigDict, Field, FiniteFloat, TypeAdapter


class _PolicyModel(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class FixedPolicy(_PolicyModel):
    """固定参数策略：每个样本都使用同一组 (μ, σ)，即经典高斯噪声。

    Attributes:
        type: 策略类型，固定为'fixed'
        mu (float): 均值，必须位于均值区间内
        sigma (float): 标准差，必须位于标准差区间内
    """

    type: Literal["fixed"] = "fixed"
    mu: FiniteFloat = 0.0
    sigma: FiniteFloat = Field(default=1.0, gt=0)


class IidUniformBoxPolicy(_PolicyModel):
    """独立同分布均匀策略：每个样本的 (μᵢ, σᵢ) 在不确定区间内独立均匀抽取。

    Attributes:
        type: 策略类型，固定为'iid_uniform_box'
    """

    type: Literal["iid_uniform_box"] = "iid_uniform_box"


class TwoPointSwitchPolicy(_PolicyModel):
    """两点切换策略：每个样本独立地以概率 p 取上端点，否则取下端点，均值与标准差分别抽取。

    Attributes:
        type: 策略类型，固定为'two_point_switch'
        p (float): 取上端点 (μ̄ 或 σ̄) 的概率
    """

    type: Literal["two_point_switch"] = "two_point_switch"
    p: float = Field(default=0.5, ge=0.0, le=1.0)


class BlockSwitchPolicy(_PolicyModel):
    """分块切换策略：每 block_len 个连续样本共用一个随机角点 (μ, σ) ∈ {μ̲, μ̄} × {σ̲, σ̄}。

    Attributes:
        type: 策略类型，固定为'block_switch'
        block_len (int): 每块的样本数
    """

    type: Literal["block_switch"] = "block_switch"
    block_len: int = Field(default=1000, ge=1)


class CustomPolicy(_PolicyModel):
    """自定义策略：逐样本给出 (μᵢ, σᵢ)，长度必须与生成的样本数一致。

    Attributes:
        type: 策略类型，固定为'custom'
        schedule (list[tuple[float, float]]): 逐样本的 (μᵢ, σᵢ) 列表
    """

    type: Literal["custom"] = "custom"
    schedule: list[tuple[FiniteFloat, FiniteFloat]] = Field(default_factory=list)


ScenarioPolicy = Annotated[
    FixedPolicy | IidUniformBoxPolicy | TwoPointSwitchPolicy | BlockSwitchPolicy | CustomPolicy,
    Field(discriminator="type"),
]

POLICY_ADAPTER: TypeAdapter[ScenarioPolicy] = TypeAdapter(ScenarioPolicy)

POLICY_MAP: dict[str, type[_PolicyModel]] = {
    cls.model_fields["type"].default: cls for cls in get_args(get_args(ScenarioPolicy)[0])
}
