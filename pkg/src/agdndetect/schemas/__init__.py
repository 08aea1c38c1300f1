from .noise import ComplexGain, ComplexNoiseModel, Constellation, NoiseModel, SigmaBox, UncertaintyInterval
from .scenarios import (
    POLICY_ADAPTER,
    POLICY_MAP,
    BlockSwitchPolicy,
    CustomPolicy,
    FixedPolicy,
    IidUniformBoxPolicy,
    ScenarioPolicy,
    TwoPointSwitchPolicy,
)

__all__ = [
    "POLICY_ADAPTER",
    "POLICY_MAP",
    "BlockSwitchPolicy",
    "ComplexGain",
    "ComplexNoiseModel",
    "Constellation",
    "CustomPolicy",
    "FixedPolicy",
    "IidUniformBoxPolicy",
    "NoiseModel",
    "ScenarioPolicy",
    "SigmaBox",
    "TwoPointSwitchPolicy",
    "UncertaintyInterval",
]
