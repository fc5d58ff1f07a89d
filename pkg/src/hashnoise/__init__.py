"""Perlin-style gradient noise with hash-computed lattice gradients."""

from .gradient import hash_gradient, hash_gradient_2d, hash_gradient_3d, table_gradient, table_permute
from .hashes import (
    ALL_VARIANTS,
    HASH_VARIANTS,
    HashVariant,
    dispatch,
    fnv1,
    jenkins,
    murmur,
    partial_fnv1,
    partial_jenkins,
)
from .noise import NoiseConfig, clouds, fade, noise, noise_grid, noise_raw, turbulence

__version__ = "0.1.0"
