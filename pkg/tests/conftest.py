import math

import numpy as np
import pytest
from loguru import logger

from agdndetect.schemas.noise import Constellation, NoiseModel, SigmaBox


@pytest.fixture
def unit_constellation() -> Constellation:
    return Constellation(x_a=1.0, x_b=-1.0)


@pytest.fixture
def gaussian_noise() -> NoiseModel:
    return NoiseModel.gaussian(0.8)


@pytest.fixture
def sigma_box() -> SigmaBox:
    return SigmaBox(sigma_lo=1.0, sigma_hi=math.sqrt(2.0))


@pytest.fixture
def agdn_noise() -> NoiseModel:
    return NoiseModel.build(-0.1, 0.2, 0.8, 1.6)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240917)


@pytest.fixture
def draw_noise(rng: np.random.Generator):
    """Factory drawing random noise models with a nondegenerate sigma box."""

    def draw(*, max_width: float = 0.5) -> NoiseModel:
        mu_lo = rng.uniform(-0.5, 0.5)
        s_lo = rng.uniform(0.2, 2.0)
        return NoiseModel.build(mu_lo, mu_lo + rng.uniform(0.0, max_width), s_lo, s_lo * rng.uniform(1.01, 3.0))

    return draw


@pytest.fixture
def log_messages():
    """Collect loguru messages emitted during a test."""
    messages: list[str] = []
    handler_id = logger.add(lambda m: messages.append(m.record["message"]), level="DEBUG")
    yield messages
    logger.remove(handler_id)
