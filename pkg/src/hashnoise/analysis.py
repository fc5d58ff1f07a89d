"""Statistical checks on noise fields and hash kernels.

All sampling goes through a seeded splitmix64 stream, so every report is a
pure function of its arguments.  Large samples are consumed in fixed-size
chunks and folded with pairwise moment updates; the chunking is fixed, so
results never depend on how the work is scheduled.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from .hashes import MASK, HashVariant, hash_words
from .noise import NoiseConfig, noise_raw

SAMPLE_EXTENT = 256.0
CHUNK = 1 << 17

_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_U64 = (1 << 64) - 1


def splitmix64(z):
    """The splitmix64 output function applied to one 64-bit state."""
    z = (z ^ (z >> 30)) * _MIX1 & _U64
    z = (z ^ (z >> 27)) * _MIX2 & _U64
    return z ^ (z >> 31)


class Prng:
    """splitmix64 stream.  ``next_u64`` and the bulk methods draw from the
    same sequence, so they can be mixed freely."""

    def __init__(self, seed):
        self.state = int(seed) & _U64

    def next_u64(self):
        self.state = (self.state + _GAMMA) & _U64
        return splitmix64(self.state)

    def u64(self, n):
        """Next *n* outputs as a uint64 array."""
        steps = np.arange(1, n + 1, dtype=np.uint64)
        with np.errstate(over="ignore"):
            z = np.uint64(self.state) + steps * np.uint64(_GAMMA)
            z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
            z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        z ^= z >> np.uint64(31)
        self.state = (self.state + n * _GAMMA) & _U64
        return z

    def uniform(self, n):
        """*n* doubles in [0, 1) built from the top 53 bits of each output."""
        return (self.u64(n) >> np.uint64(11)).astype(np.float64) * 2.0**-53

    def words(self, n):
        """*n* 32-bit words (upper halves of the outputs) as int64."""
        return (self.u64(n) >> np.uint64(32)).astype(np.int64)


class RunningMoments:
    """Count, mean, central moments M2..M4, min and max, merged chunk by chunk."""

    def __init__(self):
        self.n = 0
        self.mean = 0.0
        self.m2 = 0.0
        self.m3 = 0.0
        self.m4 = 0.0
        self.min = np.inf
        self.max = -np.inf

    def update(self, values):
        x = np.asarray(values, dtype=np.float64).ravel()
        nb = x.size
        if nb == 0:
            return self
        mb = float(x.mean())
        d = x - mb
        d2 = d * d
        m2b = float(d2.sum())
        m3b = float((d2 * d).sum())
        m4b = float((d2 * d2).sum())
        self.min = min(self.min, float(x.min()))
        self.max = max(self.max, float(x.max()))

        na = self.n
        if na == 0:
            self.n, self.mean, self.m2, self.m3, self.m4 = nb, mb, m2b, m3b, m4b
            return self
        n = na + nb
        delta = mb - self.mean
        dn = delta / n
        m2a, m3a = self.m2, self.m3
        self.m4 += (m4b + delta * dn**3 * na * nb * (na * na - na * nb + nb * nb)
                    + 6.0 * dn * dn * (na * na * m2b + nb * nb * m2a)
                    + 4.0 * dn * (na * m3b - nb * m3a))
        self.m3 += (m3b + delta * dn * dn * na * nb * (na - nb)
                    + 3.0 * dn * (na * m2b - nb * m2a))
        self.m2 += m2b + delta * dn * na * nb
        self.mean += dn * nb
        self.n = n
        return self

    @property
    def variance(self):
        """Population variance."""
        return self.m2 / self.n if self.n else 0.0

    @property
    def skewness(self):
        if self.m2 == 0.0:
            return 0.0
        return np.sqrt(self.n) * self.m3 / self.m2**1.5

    @property
    def excess_kurtosis(self):
        if self.m2 == 0.0:
            return 0.0
        return self.n * self.m4 / (self.m2 * self.m2) - 3.0


@dataclass
class SampleStats:
    count: int
    mean: float
    variance: float
    min: float
    max: float
    out_of_range: int
    skewness: float = 0.0
    excess_kurtosis: float = 0.0


@dataclass
class Histogram:
    bins: list
    total: int
    lo: float = -1.0
    hi: float = 1.0

    @property
    def center(self):
        return self.bins[len(self.bins) // 2]

    def edges(self):
        return np.linspace(self.lo, self.hi, len(self.bins) + 1)


@dataclass
class AvalancheReport:
    variant: HashVariant
    trials: int
    per_input_bit: list = field(default_factory=list)

    @property
    def mean_flipped_bits(self):
        return float(np.mean(self.per_input_bit))


def _check_bins(n, bins):
    if int(bins) != bins or bins < 3 or bins % 2 == 0:
        raise ValueError(f"bins must be an odd integer >= 3, got {bins}")
    if n < bins:
        raise ValueError(f"need at least as many samples as bins ({n} < {bins})")


def sample_values(config, n, seed, chunk=CHUNK):
    """Yield raw (unclamped) noise values at *n* seeded points in [0, 256)^dim."""
    if n < 1:
        raise ValueError(f"need at least one sample, got {n}")
    rng = Prng(seed)
    done = 0
    while done < n:
        m = min(chunk, n - done)
        pts = rng.uniform(m * config.dim).reshape(m, config.dim) * SAMPLE_EXTENT
        yield noise_raw(config, pts)
        done += m


def bin_counts(values, bins):
    """Counts of *values* (clipped to [-1, 1]) in *bins* equal bins over [-1, 1]."""
    v = np.clip(np.asarray(values, dtype=np.float64), -1.0, 1.0)
    idx = np.floor((v + 1.0) * (bins / 2.0)).astype(np.int64)
    np.minimum(idx, bins - 1, out=idx)
    return np.bincount(idx, minlength=bins)


def summarize(config, chunks, bins=None):
    """Fold chunks of raw noise values into SampleStats (and a Histogram when
    *bins* is given).  Moments use clamped values when the config clamps;
    ``out_of_range`` always counts |raw| > 1."""
    moments = RunningMoments()
    counts = np.zeros(bins or 0, dtype=np.int64)
    outside = 0
    for raw in chunks:
        raw = np.asarray(raw, dtype=np.float64).ravel()
        moments.update(np.clip(raw, -1.0, 1.0) if config.clamp else raw)
        outside += int(np.count_nonzero(np.abs(raw) > 1.0))
        if bins:
            counts += bin_counts(raw, bins)
    if moments.n == 0:
        raise ValueError("need at least one sample")
    stats = SampleStats(
        count=moments.n,
        mean=moments.mean,
        variance=moments.variance,
        min=moments.min,
        max=moments.max,
        out_of_range=outside,
        skewness=float(moments.skewness),
        excess_kurtosis=float(moments.excess_kurtosis),
    )
    if not bins:
        return stats
    return stats, Histogram(bins=counts.tolist(), total=int(counts.sum()))


def stats_at(config, points, bins=None):
    """Statistics of the noise at explicit points (shape ``(n, dim)``)."""
    pts = np.asarray(points, dtype=np.float64).reshape(-1, config.dim)
    if bins:
        _check_bins(len(pts), bins)
    chunks = (noise_raw(config, pts[i:i + CHUNK]) for i in range(0, len(pts), CHUNK))
    return summarize(config, chunks, bins)


def survey(config, n, seed, bins=41):
    """SampleStats and Histogram from one pass over the same seeded samples."""
    _check_bins(n, bins)
    return summarize(config, sample_values(config, n, seed), bins)


def sample_stats(config, n, seed):
    """Moments of the noise at *n* seeded points in [0, 256)^dim."""
    return summarize(config, sample_values(config, n, seed))


def histogram(config, n, bins, seed):
    """Counts of clamped noise values in *bins* uniform bins over [-1, 1]."""
    _check_bins(n, bins)
    return summarize(config, sample_values(config, n, seed), bins)[1]


def flip_counts(variant, keys, mask):
    """popcount(H(k) ^ H(k ^ mask)) for each key."""
    variant = HashVariant.parse(variant)
    if variant is HashVariant.TABLE:
        raise ValueError("variant has no scalar hash")
    keys = np.ascontiguousarray(np.asarray(keys, dtype=np.int64) & MASK)
    flipped = np.ascontiguousarray(keys ^ (int(mask) & MASK))
    a = np.empty_like(keys)
    b = np.empty_like(keys)
    hash_words(variant.code, keys, a, keys.size)
    hash_words(variant.code, flipped, b, keys.size)
    return np.bitwise_count((a ^ b).astype(np.uint64)).astype(np.int64)


def avalanche(variant, trials, seed):
    """Mean number of output bits flipped by flipping each input bit."""
    variant = HashVariant.parse(variant)
    if variant is HashVariant.TABLE:
        raise ValueError("variant has no scalar hash")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    keys = Prng(seed).words(trials)
    per_bit = [float(flip_counts(variant, keys, 1 << i).mean()) for i in range(32)]
    return AvalancheReport(variant=variant, trials=int(trials), per_input_bit=per_bit)


def _bits(a):
    return np.ascontiguousarray(a, dtype=np.float64).view(np.uint64)


def period_probes(config, probes, seed):
    """Probe points with integer parts in [0, period) and fractional parts on a
    2**-10 grid, so shifting by the period is exact."""
    rng = Prng(seed)
    cells = np.floor(rng.uniform(probes * config.dim) * config.period)
    ticks = np.floor(rng.uniform(probes * config.dim) * 1024.0) / 1024.0
    return (cells + ticks).reshape(probes, config.dim)


def period_check(config, probes, seed, evaluate=noise_raw):
    """True iff the field repeats bit-for-bit under a shift by the period along
    every axis at every probe.  *evaluate* is ``(config, points) -> values``."""
    if probes < 1:
        raise ValueError(f"probes must be >= 1, got {probes}")
    pts = period_probes(config, probes, seed)
    base = _bits(evaluate(config, pts))
    for axis in range(config.dim):
        shifted = pts.copy()
        shifted[:, axis] += config.period
        if not np.array_equal(base, _bits(evaluate(config, shifted))):
            return False
    return True


def report(config, n, seed, stats=None, hist=None, aval=None):
    """Flat dictionary with the keys of the JSON report."""
    doc = {
        "variant": config.variant.value,
        "dim": config.dim,
        "n": int(n),
        "seed": int(seed),
        "period": config.period,
        "mean": None,
        "variance": None,
        "min": None,
        "max": None,
        "outOfRange": None,
        "skewness": None,
        "excessKurtosis": None,
        "bins": None,
        "meanFlippedBits": None,
        "perInputBit": None,
    }
    if stats is not None:
        doc.update(
            mean=stats.mean,
            variance=stats.variance,
            min=stats.min,
            max=stats.max,
            outOfRange=stats.out_of_range,
            skewness=stats.skewness,
            excessKurtosis=stats.excess_kurtosis,
        )
    if hist is not None:
        doc["bins"] = list(hist.bins)
    if aval is not None:
        doc["meanFlippedBits"] = aval.mean_flipped_bits
        doc["perInputBit"] = list(aval.per_input_bit)
    return doc


def to_json(doc):
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def to_text(doc):
    """``key=value`` lines; list values are space separated."""
    lines = []
    for key, value in doc.items():
        if value is None:
            continue
        if isinstance(value, list):
            value = " ".join(f"{v:.6g}" if isinstance(v, float) else str(v) for v in value)
        elif isinstance(value, float):
            value = repr(value)
        lines.append(f"{key}={value}")
    return "\n".join(lines) + "\n"


__all__ = [
    "AvalancheReport",
    "Histogram",
    "NoiseConfig",
    "Prng",
    "RunningMoments",
    "SampleStats",
    "avalanche",
    "bin_counts",
    "flip_counts",
    "histogram",
    "period_check",
    "report",
    "sample_stats",
    "stats_at",
    "summarize",
    "survey",
]
