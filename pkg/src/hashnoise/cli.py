"""Command-line front end: render, stats, bench, shadergen, figures."""

import argparse
import json
import sys
import time
from pathlib import Path

from . import analysis, bench, render, shadergen
from .hashes import ALL_VARIANTS, HASH_VARIANTS, HashVariant
from .noise import NoiseConfig

HASH_CHOICES = [v.value for v in ALL_VARIANTS]


def _size(text):
    try:
        w, h = (int(part) for part in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected WIDTHxHEIGHT, got {text!r}") from None
    if w < 1 or h < 1:
        raise argparse.ArgumentTypeError(f"image size must be positive, got {text!r}")
    return w, h


def _add_noise_args(p, hashes=HASH_CHOICES):
    p.add_argument("--hash", choices=hashes, default="partial-fnv1", help="gradient source")
    p.add_argument("--dim", type=int, choices=(2, 3), default=2)
    p.add_argument("--period", type=int, default=None,
                   help="lattice period (default 2^20; the table is fixed at 256)")


def build_parser():
    parser = argparse.ArgumentParser(prog="hashnoise", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("render", help="render a noise field to PGM/PPM")
    p.add_argument("--mode", choices=render.MODES, default="noise")
    _add_noise_args(p)
    p.add_argument("--size", type=_size, default=(256, 256), metavar="WxH")
    p.add_argument("--scale", type=float, default=8.0, help="lattice cells across the width")
    p.add_argument("--octaves", type=int, default=5)
    p.add_argument("--slice", type=float, default=0.5, help="z coordinate for 3D noise")
    p.add_argument("--workers", type=int, default=1, help="row bands rendered in parallel")
    p.add_argument("--out", required=True, type=Path)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("stats", help="distribution and avalanche statistics")
    _add_noise_args(p)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--bins", type=int, default=41)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=10_000, help="keys for the avalanche test")
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bench", help="render throughput for every gradient source")
    p.add_argument("--dim", type=int, choices=(2, 3), default=2)
    p.add_argument("--size", type=_size, default=(800, 600), metavar="WxH")
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("shadergen", help="emit GLSL for a hash (and its gradient)")
    p.add_argument("--hash", choices=[v.value for v in HASH_VARIANTS], required=True)
    p.add_argument("--gradient", action="store_true")
    p.add_argument("--dim", type=int, choices=(2, 3), default=None)
    p.add_argument("--out", type=Path, default=None, help="output file (default stdout)")
    p.set_defaults(func=cmd_shadergen)

    p = sub.add_parser("figures", help="render every mode for every hash variant")
    p.add_argument("--outdir", type=Path, required=True)
    p.add_argument("--size", type=_size, default=(256, 256), metavar="WxH")
    p.add_argument("--dim", type=int, choices=(2, 3), default=2)
    p.add_argument("--with-table", action="store_true", help="add the table baseline row")
    p.set_defaults(func=cmd_figures)
    return parser


def _config(args):
    return NoiseConfig(variant=HashVariant.parse(args.hash), dim=args.dim, period=args.period)


def cmd_render(args):
    w, h = args.size
    spec = render.RenderSpec(config=_config(args), mode=args.mode, width=w, height=h,
                             scale=args.scale, octaves=args.octaves, slice=args.slice)
    t0 = time.perf_counter()
    image = render.render(spec, workers=args.workers)
    path = render.write_pnm(image, args.out)
    print(f"{path} {(time.perf_counter() - t0) * 1e3:.1f} ms")
    return 0


def cmd_stats(args):
    config = _config(args)
    stats, hist = analysis.survey(config, args.samples, args.seed, args.bins)
    aval = None
    if config.variant is not HashVariant.TABLE:
        aval = analysis.avalanche(config.variant, args.trials, args.seed)
    doc = analysis.report(config, args.samples, args.seed, stats, hist, aval)
    sys.stdout.write(analysis.to_json(doc) if args.json else analysis.to_text(doc))
    return 0


def cmd_bench(args):
    results = bench.run_bench(dim=args.dim, size=args.size, reps=args.reps)
    if args.json:
        w, h = args.size
        doc = {"dim": args.dim, "width": w, "height": h, "reps": args.reps,
               "results": [r.as_dict() for r in results]}
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write(bench.format_table(results))
    return 0


def cmd_shadergen(args):
    src = shadergen.generate(args.hash, gradient=args.gradient, dim=args.dim)
    if args.out is None:
        sys.stdout.write(src.text)
    else:
        args.out.write_text(src.text)
        print(args.out)
    return 0


def cmd_figures(args):
    variants = ALL_VARIANTS if args.with_table else HASH_VARIANTS
    t0 = time.perf_counter()
    paths = render.figure_matrix(args.outdir, size=args.size, dim=args.dim, variants=variants)
    for p in paths:
        print(p)
    print(f"{len(paths)} images {(time.perf_counter() - t0) * 1e3:.1f} ms")
    return 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"{parser.prog} {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
