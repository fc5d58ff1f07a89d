"""Acceptance suite: one test per criterion, each at its stated tolerance.

Run under pytest for a PASS/FAIL summary at the end of the session, or
directly (``python3 tests/test_acceptance.py``) for the same lines on stdout.
"""

import subprocess
import sys
import tempfile
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracle  # noqa: E402
from hashnoise import analysis, bench, hashes, shadergen  # noqa: E402
from hashnoise.hashes import ALL_VARIANTS, HASH_VARIANTS  # noqa: E402
from hashnoise.noise import NoiseConfig, noise, noise_raw  # noqa: E402
from hashnoise.render import RenderSpec, render  # noqa: E402

SEED = 12345
N = 1_000_000
GOLDEN = Path(__file__).parent / "golden"
KERNELS = {
    "fnv1": hashes.fnv1,
    "partial-fnv1": hashes.partial_fnv1,
    "jenkins": hashes.jenkins,
    "partial-jenkins": hashes.partial_jenkins,
    "murmur": hashes.murmur,
}

CRITERIA = {}
RESULTS = {}


def criterion(n, title):
    def register(fn):
        CRITERIA[n] = (title, fn)
        return fn
    return register


def configs(variants=ALL_VARIANTS):
    return [NoiseConfig(variant=v, dim=d) for v in variants for d in (2, 3)]


def tag(config):
    return f"{config.variant.value}/{config.dim}d"


# ---------------------------------------------------------------------------

@criterion(1, "hash oracle equivalence")
def hash_oracle():
    t0 = time.perf_counter()
    keys = np.random.default_rng(SEED).integers(-(1 << 31), 1 << 31, 10_000)
    mismatches = {}
    for name, fn in KERNELS.items():
        want = np.array([oracle.HASHES[name](int(k)) for k in keys])
        mismatches[name] = int(np.sum(fn(keys) != want))
    elapsed = time.perf_counter() - t0
    assert sum(mismatches.values()) == 0, mismatches
    assert elapsed < 5.0, f"{elapsed:.2f} s"
    return f"0 mismatches over 5 x 10^4 keys in {elapsed:.2f} s"


@criterion(2, "fixed points")
def fixed_points():
    assert hashes.jenkins(0) == 0
    assert hashes.partial_jenkins(0) == 0
    return "jenkins(0) = partial_jenkins(0) = 0"


@criterion(3, "lattice zeros")
def lattice_zeros():
    worst = 0.0
    for config in configs():
        pts = np.random.default_rng(SEED).integers(-(1 << 19), 1 << 19, (1000, config.dim)).astype(float)
        worst = max(worst, float(np.abs(noise(config, pts)).max()))
    assert worst < 1e-12, worst
    return f"max |noise| = {worst:.1e}"


@criterion(4, "periodicity")
def periodicity():
    failed = []
    for config in configs():
        assert config.period == (256 if config.variant.value == "table" else 1 << 20)
        if not analysis.period_check(config, 1000, SEED):
            failed.append(tag(config))
    assert not failed, failed
    return "bit-identical under period shifts on every axis, 12 configs"


_surveys = {}


def survey(config):
    """One seeded 10^6-sample pass per config, shared by criteria 5 to 7."""
    key = (config.variant, config.dim)
    if key not in _surveys:
        t0 = time.perf_counter()
        stats, hist = analysis.survey(config, N, SEED, 41)
        _surveys[key] = stats, hist, time.perf_counter() - t0
    return _surveys[key]


@criterion(5, "zero mean")
def zero_mean():
    worst, slowest = 0.0, 0.0
    for config in configs():
        stats, _, elapsed = survey(config)
        assert abs(stats.mean) <= 0.01, (tag(config), stats.mean)
        assert elapsed < 30.0, (tag(config), elapsed)
        worst, slowest = max(worst, abs(stats.mean)), max(slowest, elapsed)
    return f"max |mean| = {worst:.2e}, slowest survey {slowest:.2f} s"


@criterion(6, "range")
def value_range():
    worst = 0.0
    for config in configs():
        pts = analysis.Prng(SEED).uniform(N * config.dim).reshape(N, config.dim) * analysis.SAMPLE_EXTENT
        v = noise(config, pts)
        assert np.all((v >= -1.0) & (v <= 1.0)), tag(config)
        raw = noise_raw(config, pts)
        rate = float(np.mean(np.abs(raw) > 1.0))
        stats, _, _ = survey(config)
        assert stats.out_of_range == int(np.sum(np.abs(raw) > 1.0))
        assert rate <= 0.001, (tag(config), rate)
        worst = max(worst, rate)
    return f"clamped output all in [-1, 1], max pre-clamp exceedance {worst:.2%}"


@criterion(7, "gaussian-like shape")
def shape():
    lows, ratios = [], []
    for config in configs():
        stats, hist, _ = survey(config)
        outer = max(hist.bins[0], hist.bins[-1])
        assert hist.center >= 10 * outer, (tag(config), hist.center, outer)
        assert stats.excess_kurtosis > -0.5, (tag(config), stats.excess_kurtosis)
        lows.append(stats.excess_kurtosis)
        ratios.append(hist.center / max(outer, 1))
    return f"min excess kurtosis {min(lows):.3f}, min center/outer {min(ratios):.0f}"


@criterion(8, "performance ordering")
def performance():
    pairs = [("fnv1", "partial-fnv1"), ("jenkins", "partial-jenkins")]
    variants = [v for pair in pairs for v in pair]
    notes = []
    for dim in (2, 3):
        results = bench.run_bench(dim=dim, size=(800, 600), reps=5, variants=variants)
        median = {r.variant.value: r.median_seconds for r in results}
        for full, partial in pairs:
            ratio = median[full] / median[partial]
            assert median[partial] < median[full], (dim, full, median)
            assert ratio >= 1.2, (dim, full, round(ratio, 3))
            notes.append(f"{dim}d {full} {ratio:.2f}x")
    return ", ".join(notes)


@criterion(9, "oracle raster")
def oracle_raster():
    worst = 0
    for variant in ALL_VARIANTS:
        spec = RenderSpec(config=NoiseConfig(variant=variant), width=8, height=8)
        got = np.frombuffer(render(spec).pixels, dtype=np.uint8).reshape(8, 8).astype(int)
        want = np.array([[
            oracle.to_byte((oracle.noise(variant.value, [(i + 0.5) / 8 * 8, (j + 0.5) / 8 * 8]) + 1) / 2)
            for i in range(8)] for j in range(8)])
        worst = max(worst, int(np.abs(got - want).max()))
    assert worst <= 1, worst
    return f"max byte difference {worst} over 6 variants"


@criterion(10, "golden files")
def golden_files():
    for variant in HASH_VARIANTS:
        want = (GOLDEN / f"{variant.value}.glsl").read_bytes()
        assert shadergen.generate(variant).text.encode() == want, variant.value
    assert b"1540483477" in (GOLDEN / "murmur.glsl").read_bytes()
    return "5 shaders byte-identical to golden files"


@criterion(11, "figure matrix")
def figure_matrix():
    with tempfile.TemporaryDirectory() as tmp:
        t0 = time.perf_counter()
        subprocess.run([sys.executable, "-m", "hashnoise", "figures", "--outdir", tmp, "--size", "256x256"],
                       check=True, capture_output=True)
        elapsed = time.perf_counter() - t0
        files = sorted(Path(tmp).iterdir())
        assert len(files) == 15, len(files)
        for f in files:
            magic, w, h, payload = oracle.read_netpbm(f.read_bytes())
            channels = 3 if f.suffix == ".ppm" else 1
            assert magic == ("P6" if channels == 3 else "P5"), f.name
            assert (w, h) == (256, 256) and len(payload) == w * h * channels, f.name
    assert elapsed < 10.0, f"{elapsed:.2f} s"
    return f"15 valid images in {elapsed:.2f} s (fresh process)"


# ---------------------------------------------------------------------------

def check(n):
    title, fn = CRITERIA[n]
    try:
        detail = fn()
    except AssertionError as exc:
        RESULTS[n] = (False, title, f"{exc}")
        raise
    RESULTS[n] = (True, title, detail)


def summary_line(n):
    ok, title, detail = RESULTS[n]
    return f"{'PASS' if ok else 'FAIL'} {n:>2} {title}: {detail}"


def summary_lines():
    return [summary_line(n) for n in sorted(RESULTS)]


@pytest.mark.slow
@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    check(n)


if __name__ == "__main__":
    for n in sorted(CRITERIA):
        try:
            check(n)
        except AssertionError:
            pass
        print(summary_line(n), flush=True)
    sys.exit(0 if all(ok for ok, _, _ in RESULTS.values()) else 1)
