from .generator import (
    check_policy,
    gain_block,
    generate_noise,
    generate_rayleigh_gains,
    noise_block,
    realize_parameters,
    symbol_block,
)
from .rng import BLOCK_SIZE, Stream, block_generator, block_ranges, check_seed, map_blocks

__all__ = [
    "BLOCK_SIZE",
    "Stream",
    "block_generator",
    "block_ranges",
    "check_policy",
    "check_seed",
    "gain_block",
    "generate_noise",
    "generate_rayleigh_gains",
    "map_blocks",
    "noise_block",
    "realize_parameters",
    "symbol_block",
]
