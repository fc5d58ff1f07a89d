"""Render-throughput benchmark across gradient sources."""

import statistics
import time
from dataclasses import dataclass, field

from .hashes import ALL_VARIANTS, HashVariant
from .noise import NoiseConfig
from .render import RenderSpec, render


@dataclass
class BenchResult:
    variant: HashVariant
    dim: int
    pixels: int
    repetitions: int
    seconds_per_rep: list = field(default_factory=list)

    @property
    def median_seconds(self):
        return statistics.median(self.seconds_per_rep)

    @property
    def megapixels_per_second(self):
        return self.pixels / self.median_seconds / 1e6

    def as_dict(self):
        return {
            "variant": self.variant.value,
            "label": self.variant.label,
            "dim": self.dim,
            "pixels": self.pixels,
            "repetitions": self.repetitions,
            "secondsPerRep": list(self.seconds_per_rep),
            "medianMs": self.median_seconds * 1e3,
            "megapixelsPerSecond": self.megapixels_per_second,
        }


def run_bench(dim=2, size=(800, 600), reps=5, variants=ALL_VARIANTS, clock=time.perf_counter):
    """Time a full noise render per variant.

    Variants are interleaved within each repetition so slow drifts in machine
    load hit all of them alike; one untimed warm-up render precedes timing.
    """
    if reps < 3:
        raise ValueError(f"need at least 3 repetitions for a median, got {reps}")
    width, height = size
    specs = [
        RenderSpec(config=NoiseConfig(variant=v, dim=dim), mode="noise", width=width, height=height)
        for v in map(HashVariant.parse, variants)
    ]
    results = [BenchResult(s.config.variant, dim, width * height, reps) for s in specs]
    for s in specs:
        render(s)
    for _ in range(reps):
        for s, r in zip(specs, results):
            t0 = clock()
            render(s)
            r.seconds_per_rep.append(clock() - t0)
    return results


def format_table(results):
    lines = [f"{'variant':<16} {'median ms':>10} {'MP/s':>8}"]
    for r in results:
        lines.append(f"{r.variant.label:<16} {r.median_seconds * 1e3:>10.2f} {r.megapixels_per_second:>8.2f}")
    return "\n".join(lines) + "\n"
