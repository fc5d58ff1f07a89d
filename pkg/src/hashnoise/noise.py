"""Gradient noise over a pluggable lattice gradient, plus turbulence and clouds."""

from dataclasses import dataclass

import numpy as np

from . import _engine
from .hashes import HashVariant

HASH_PERIOD = 1 << 20
TABLE_PERIOD = 256

SKY_BLUE = (0.30, 0.45, 0.85)
WHITE = (1.0, 1.0, 1.0)


@dataclass(frozen=True)
class NoiseConfig:
    """Everything that determines a noise field.

    ``period`` defaults to 2**20 for hash variants and is pinned to 256 for
    the table baseline.
    """

    variant: HashVariant = HashVariant.PARTIAL_FNV1
    dim: int = 2
    period: int | None = None
    clamp: bool = True

    def __post_init__(self):
        variant = HashVariant.parse(self.variant)
        object.__setattr__(self, "variant", variant)
        if self.dim not in (2, 3):
            raise ValueError(f"dim must be 2 or 3, got {self.dim}")
        period = self.period
        if period is None:
            period = TABLE_PERIOD if variant is HashVariant.TABLE else HASH_PERIOD
        period = int(period)
        if variant is HashVariant.TABLE and period != TABLE_PERIOD:
            raise ValueError("the table baseline has a fixed period of 256")
        if period < 2:
            raise ValueError(f"period must be >= 2, got {period}")
        object.__setattr__(self, "period", period)


def _fade(t):
    return t * t * t * (t * (t * 6.0 - 15.0) + 10.0)


def fade(t):
    """Quintic interpolant 6t^5 - 15t^4 + 10t^3 on [0, 1]."""
    arr = np.asarray(t, dtype=np.float64)
    if not np.all((arr >= 0.0) & (arr <= 1.0)):
        raise ValueError("fade is only defined on [0, 1]")
    out = _fade(arr)
    return float(out) if out.ndim == 0 else out


def _points(config, p):
    pts = np.asarray(p, dtype=np.float64)
    if pts.ndim == 0 or pts.shape[-1] != config.dim:
        raise ValueError(f"expected points with {config.dim} coordinates, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise ValueError("noise input must be finite")
    return pts


def noise_raw(config, p):
    """Unclamped noise at one point (shape ``(dim,)``) or many (``(..., dim)``)."""
    pts = _points(config, p)
    flat = pts.reshape(-1, config.dim)
    out = _engine.evaluate(config.variant.code, config.dim, flat, config.period)
    out = out.reshape(pts.shape[:-1])
    return float(out) if out.ndim == 0 else out


def noise(config, p):
    """Noise value(s); clipped to [-1, 1] when ``config.clamp`` is set."""
    v = noise_raw(config, p)
    if config.clamp:
        v = np.clip(v, -1.0, 1.0)
        if np.ndim(v) == 0:
            v = float(v)
    return v


def _check_dims(config, z):
    if (z is None) != (config.dim == 2):
        raise ValueError("a depth z is required for 3D grids and rejected for 2D")


def noise_grid(config, xs, ys, z=None):
    """Noise on the raster ``xs`` by ``ys`` (at depth *z* in 3D), shape
    ``(len(ys), len(xs))``.  Bit-identical to :func:`noise` at the same points."""
    _check_dims(config, z)
    xs = np.asarray(xs, dtype=np.float64).ravel()
    ys = np.asarray(ys, dtype=np.float64).ravel()
    if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys)) and (z is None or np.isfinite(z))):
        raise ValueError("noise input must be finite")
    out = _engine.evaluate_grid(config.variant.code, xs, ys, config.period, z)
    if config.clamp:
        np.clip(out, -1.0, 1.0, out=out)
    return out


def _check_octaves(octaves):
    if int(octaves) != octaves or octaves < 1:
        raise ValueError(f"octaves must be an integer >= 1, got {octaves}")
    return int(octaves)


def _octave_sum(sample, octaves):
    total = 0.0
    norm = 0.0
    for i in range(_check_octaves(octaves)):
        freq = float(1 << i)
        total = total + np.abs(sample(freq)) / freq
        norm += 1.0 / freq
    return total / norm


def turbulence(config, p, octaves):
    """Sum of |noise| over octaves of doubling frequency, normalized to [0, 1]."""
    _check_octaves(octaves)
    pts = _points(config, p)
    out = _octave_sum(lambda f: noise(config, pts * f), octaves)
    return float(out) if np.ndim(out) == 0 else out


def turbulence_grid(config, xs, ys, octaves, z=None):
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    return _octave_sum(
        lambda f: noise_grid(config, xs * f, ys * f, None if z is None else z * f), octaves
    )


def sky_blend(t):
    """Blend sky blue toward white by *t*; adds a trailing RGB axis."""
    t = np.asarray(t, dtype=np.float64)[..., None]
    return (1.0 - t) * np.array(SKY_BLUE) + t * np.array(WHITE)


def clouds(config, p, octaves):
    """Blend sky blue toward white by turbulence; returns RGB in [0, 1]."""
    return sky_blend(turbulence(config, p, octaves))


def clouds_grid(config, xs, ys, octaves, z=None):
    return sky_blend(turbulence_grid(config, xs, ys, octaves, z))
