"""Rasterize noise fields and write binary PGM/PPM files."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .hashes import HASH_VARIANTS, HashVariant
from .noise import NoiseConfig, clouds_grid, noise_grid, turbulence_grid

MODES = ("noise", "turbulence", "clouds")


@dataclass(frozen=True)
class ImageBuffer:
    width: int
    height: int
    channels: int
    pixels: bytes

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("image dimensions must be positive")
        if self.channels not in (1, 3):
            raise ValueError(f"channels must be 1 or 3, got {self.channels}")
        if len(self.pixels) != self.width * self.height * self.channels:
            raise ValueError("pixel buffer length does not match the image size")

    def array(self):
        """Pixels as a read-only ``(height, width, channels)`` uint8 array."""
        a = np.frombuffer(self.pixels, dtype=np.uint8)
        return a.reshape(self.height, self.width, self.channels)


@dataclass(frozen=True)
class RenderSpec:
    config: NoiseConfig = field(default_factory=NoiseConfig)
    mode: str = "noise"
    width: int = 256
    height: int = 256
    scale: float = 8.0
    octaves: int = 5
    slice: float = 0.5

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {', '.join(MODES)}, got {self.mode!r}")
        if int(self.width) != self.width or int(self.height) != self.height:
            raise ValueError("width and height must be integers")
        if self.width < 1 or self.height < 1:
            raise ValueError("width and height must be >= 1")
        if not (np.isfinite(self.scale) and self.scale > 0):
            raise ValueError(f"scale must be positive, got {self.scale}")
        if int(self.octaves) != self.octaves or self.octaves < 1:
            raise ValueError(f"octaves must be an integer >= 1, got {self.octaves}")
        if not np.isfinite(self.slice):
            raise ValueError("slice must be finite")

    @property
    def channels(self):
        return 3 if self.mode == "clouds" else 1


def to_byte(x):
    """Map [0, 1] to byte levels, rounding halves up."""
    return np.floor(np.clip(x, 0.0, 1.0) * 255.0 + 0.5).astype(np.uint8)


def noise_byte(v):
    return to_byte((np.asarray(v) + 1.0) / 2.0)


def pixel_axes(spec, rows=None):
    """Sample coordinates of pixel centers: (xs over columns, ys over rows)."""
    rows = np.arange(spec.height) if rows is None else np.asarray(rows)
    xs = (np.arange(spec.width) + 0.5) / spec.width * spec.scale
    ys = (rows + 0.5) / spec.height * spec.scale
    return xs, ys


def pixel_points(spec, rows=None):
    """Sample points as an array of shape ``(rows, width, dim)``."""
    xs, ys = pixel_axes(spec, rows)
    axes = list(np.meshgrid(xs, ys))
    if spec.config.dim == 3:
        axes.append(np.full(axes[0].shape, float(spec.slice)))
    return np.stack(axes, axis=-1)


def render_rows(spec, rows):
    """Bytes for a contiguous run of rows, shape ``(len(rows), width, channels)``."""
    xs, ys = pixel_axes(spec, rows)
    z = float(spec.slice) if spec.config.dim == 3 else None
    if spec.mode == "noise":
        return noise_byte(noise_grid(spec.config, xs, ys, z))[..., None]
    if spec.mode == "turbulence":
        return to_byte(turbulence_grid(spec.config, xs, ys, spec.octaves, z))[..., None]
    return to_byte(clouds_grid(spec.config, xs, ys, spec.octaves, z))


def render(spec, workers=1):
    """Render *spec*; rows are split into ``workers`` bands rendered concurrently."""
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    out = np.empty((spec.height, spec.width, spec.channels), dtype=np.uint8)
    bands = [b for b in np.array_split(np.arange(spec.height), workers) if b.size]

    def fill(rows):
        out[rows[0]:rows[-1] + 1] = render_rows(spec, rows)

    if len(bands) == 1:
        fill(bands[0])
    else:
        with ThreadPoolExecutor(max_workers=len(bands)) as pool:
            list(pool.map(fill, bands))
    return ImageBuffer(spec.width, spec.height, spec.channels, out.tobytes())


def encode_pnm(image):
    magic = b"P5" if image.channels == 1 else b"P6"
    return magic + f"\n{image.width} {image.height}\n255\n".encode("ascii") + image.pixels


def write_pnm(image, path):
    path = Path(path)
    try:
        path.write_bytes(encode_pnm(image))
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def read_pnm(path):
    """Parse a binary PGM/PPM with maxval 255 back into an ImageBuffer."""
    data = Path(path).read_bytes()
    fields = []
    pos = 0
    while len(fields) < 4:
        while pos < len(data) and data[pos:pos + 1].isspace():
            pos += 1
        if data[pos:pos + 1] == b"#":
            pos = data.index(b"\n", pos)
            continue
        end = pos
        while end < len(data) and not data[end:end + 1].isspace():
            end += 1
        fields.append(data[pos:end])
        pos = end
    magic, w, h, maxval = fields
    if magic not in (b"P5", b"P6") or maxval != b"255":
        raise ValueError(f"{path}: not a binary 8-bit PGM/PPM")
    return ImageBuffer(int(w), int(h), 1 if magic == b"P5" else 3, data[pos + 1:])


def figure_matrix(out_dir, size=(256, 256), dim=2, variants=HASH_VARIANTS, **kwargs):
    """Render every mode for every variant; returns the written paths in
    row order (variant-major, then noise, turbulence, clouds)."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    width, height = size
    paths = []
    for variant in variants:
        variant = HashVariant.parse(variant)
        config = NoiseConfig(variant=variant, dim=dim)
        for mode in MODES:
            spec = RenderSpec(config=config, mode=mode, width=width, height=height, **kwargs)
            ext = "ppm" if spec.channels == 3 else "pgm"
            label = chr(ord("a") + len(paths))
            paths.append(write_pnm(render(spec), out_dir / f"{label}_{mode}_{variant.value}.{ext}"))
    return paths
