"""Command-line interface.

Subcommands: dim (fit a dimension from one image), extract (descriptor
CSV for an image or dataset), eval (full K-fold protocol), synth
(generate texture fixtures), scan (dump a dataset manifest). Exit codes:
0 success, 2 I/O error, 3 configuration error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import analysis, csvio, synth
from .descriptor import DescriptorConfig, extract_descriptors, multiscale_project, truncate
from .errors import ConfigError, LoadError
from .estimator import ScaleSet, fit_dimension, loglog_curve
from .ingestion import load_image, scan_dataset, write_pgm

EXIT_IO = 2
EXIT_CONFIG = 3

PROGRESS_EVERY = 50


def _add_descriptor_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, default=0.2,
                   help="occupancy exponent (default 0.2)")
    p.add_argument("--a0", type=float, default=0.1,
                   help="Gaussian smoothing width in log-scale units (default 0.1)")
    p.add_argument("--t-keep", type=int, default=8,
                   help="number of leading curve points kept (default 8)")
    p.add_argument("--variant", default="grid",
                   help="counting variant: grid or gliding (default grid)")
    p.add_argument("--scales", default=None,
                   help="cell sizes, '2..11' or '2,4,8' (default: per-image ladder)")


def _parse_scales(spec):
    return None if spec is None else ScaleSet.parse(spec)


def _config(args) -> DescriptorConfig:
    return DescriptorConfig(alpha=args.alpha, a0=args.a0, t_keep=args.t_keep,
                            variant=args.variant, scales=_parse_scales(args.scales))


def _progress_printer(stream):
    if not stream.isatty():
        return None

    def report(done, total):
        if done % PROGRESS_EVERY == 0 or done == total:
            print(f"processed {done}/{total} images", file=stream)

    return report


def cmd_dim(args) -> int:
    img = load_image(args.image)
    scales = _parse_scales(args.scales)
    if scales is None:
        scales = ScaleSet.default_for(img.width, img.height)
    if args.variant not in ("grid", "gliding"):
        raise ConfigError(f"unknown variant '{args.variant}'")
    curve = loglog_curve(img, scales, alpha=args.alpha, variant=args.variant)
    csvio.emit(args.out, csvio.curve_csv(curve))
    print(f"D = {fit_dimension(curve):.12f}")
    return 0


def cmd_extract(args) -> int:
    cfg = _config(args)
    target = Path(args.path)
    rows = []
    if target.is_dir():
        manifest = scan_dataset(target)
        progress = _progress_printer(sys.stderr)
        X = analysis.descriptor_matrix(manifest, cfg, jobs=args.jobs,
                                       progress=progress)
        for i, (relpath, cls) in enumerate(manifest.samples):
            rows.append((relpath, manifest.classes[cls], X[i]))
    else:
        vec = extract_descriptors(load_image(target), cfg, source=str(target))
        rows.append((str(target), "", vec.values))
    csvio.emit(args.out, csvio.descriptor_csv(rows, cfg.t_keep))
    return 0


def cmd_eval(args) -> int:
    cfg = _config(args)
    manifest = scan_dataset(args.root, min_per_class=args.k)
    report = analysis.evaluate(
        manifest, cfg, k=args.k, seed=args.seed, classifier=args.classifier,
        n_components=args.pca_components, pca_global=args.pca_global,
        jobs=args.jobs, progress=_progress_printer(sys.stderr))
    csvio.emit(args.summary_out, csvio.summary_csv(report))
    csvio.emit(args.confusion_out, csvio.confusion_csv(report, list(manifest.classes)))
    print(report.summary_line())
    return 0


def cmd_synth(args) -> int:
    params = {}
    if args.kind == "blur-noise":
        params["sigma"] = args.sigma
    elif args.kind == "grating":
        params["period"] = args.period
    elif args.kind == "checkerboard":
        params["cell"] = args.cell
    images = synth.generate_textures(args.kind, args.count, args.size,
                                     args.seed, **params)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    stem = args.kind.replace("-", "_")
    for i, img in enumerate(images):
        write_pgm(img, outdir / f"{stem}_{i:03d}.pgm")
    print(f"wrote {len(images)} {args.kind} images to {outdir}")
    return 0


def cmd_scan(args) -> int:
    manifest = scan_dataset(args.root)
    csvio.emit(args.out, csvio.manifest_csv(manifest))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="probdim",
        description="Probability-dimension fractal descriptors for texture images")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dim", help="fit a fractal dimension from one image")
    p.add_argument("image")
    p.add_argument("--alpha", type=float, default=0.2)
    p.add_argument("--variant", default="grid")
    p.add_argument("--scales", default=None)
    p.add_argument("--out", default="-", help="curve CSV destination (default stdout)")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("extract", help="write a descriptor CSV")
    p.add_argument("path", help="image file or dataset root")
    _add_descriptor_flags(p)
    p.add_argument("--jobs", type=int, default=1,
                   help="parallel extraction workers (default 1)")
    p.add_argument("--out", default="-", help="CSV destination (default stdout)")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("eval", help="run the K-fold classification protocol")
    p.add_argument("root", help="dataset root, one directory per class")
    _add_descriptor_flags(p)
    p.add_argument("--k", type=int, default=5, help="fold count (default 5)")
    p.add_argument("--seed", type=int, default=42, help="fold shuffle seed (default 42)")
    p.add_argument("--classifier", default="linear-svm",
                   help="nearest-mean, knn1 or linear-svm (default linear-svm)")
    p.add_argument("--pca-components", type=int, default=None,
                   help="PCA components kept (default: all)")
    p.add_argument("--pca-global", action="store_true",
                   help="fit PCA once on all data instead of per training fold")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--summary-out", default="eval_summary.csv")
    p.add_argument("--confusion-out", default="eval_confusion.csv")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("synth", help="generate synthetic texture PGMs")
    p.add_argument("kind", help="blur-noise, grating or checkerboard")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--size", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sigma", type=float, default=2.0, help="blur-noise smoothing")
    p.add_argument("--period", type=int, default=8, help="grating wavelength")
    p.add_argument("--cell", type=int, default=8, help="checkerboard cell size")
    p.add_argument("--outdir", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("scan", help="dump a dataset manifest as CSV")
    p.add_argument("root")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_scan)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except LoadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
