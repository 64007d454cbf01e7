"""Command line interface.

Exit codes: 0 success, 1 usage error, 2 I/O or decode error, 3 partial batch
failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .batch import (
    ManifestError,
    OutputDirUnwritable,
    emit_failures_csv,
    emit_report_csv,
    load_manifest,
    run_batch,
)
from .enhance import DEFAULT_LEVELS, EnhanceParams, enhance_pipeline, equalize, negative
from .metrics import DimensionMismatch, PeakConvention, compare, format_psnr
from .pgm import PgmError, PgmVariant, read_pgm, write_pgm
from .raster import cumulative, histogram

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_PARTIAL = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2 by default
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _levels(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError("levels must be >= 2")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mammo-enhance", description="Grayscale PGM enhancement toolkit.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, metavar="COMMAND")
    sub.required = True

    def add_format(p):
        p.add_argument("--format", choices=("p2", "p5"), default="p5", help="output PGM variant")

    p = sub.add_parser("negative", help="write the negative of a PGM")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    add_format(p)

    p = sub.add_parser("equalize", help="histogram-equalize a PGM")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--levels", type=_levels, default=DEFAULT_LEVELS)
    add_format(p)

    p = sub.add_parser("enhance", help="negative followed by equalization")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--levels", type=_levels, default=DEFAULT_LEVELS)
    p.add_argument("--no-negative", action="store_true", help="skip the negative step")
    add_format(p)

    p = sub.add_parser("compare", help="print MSE and PSNR of two PGMs")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--peak", type=int, choices=(256, 255), default=256)

    p = sub.add_parser("histogram", help="print level counts as CSV")
    p.add_argument("input")
    p.add_argument("--cumulative", action="store_true")

    p = sub.add_parser("batch", help="run the enhancement experiment over a manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--in-dir", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--report", help="report CSV path (default: <out-dir>/report.csv)")
    p.add_argument("--levels", type=_levels, default=DEFAULT_LEVELS)
    p.add_argument("--peak", type=int, choices=(256, 255), default=256)
    p.add_argument("--jobs", type=_positive, default=1)
    return parser


def _transform(args, fn) -> int:
    img = read_pgm(args.input)
    write_pgm(args.output, fn(img), PgmVariant.from_name(args.format))
    return EXIT_OK


def _cmd_compare(args) -> int:
    a, b = read_pgm(args.a), read_pgm(args.b)
    report = compare(a, b, PeakConvention.from_peak(args.peak))
    print(f"mse={report.mse:.2f} psnr_db={format_psnr(report.psnr_db)}")
    return EXIT_OK


def _cmd_histogram(args) -> int:
    h = histogram(read_pgm(args.input))
    values = cumulative(h).cum if args.cumulative else h.counts
    out = ["level,count"] + [f"{v},{int(c)}" for v, c in enumerate(values)]
    sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK


def _cmd_batch(args) -> int:
    with open(args.manifest, encoding="utf-8", newline="") as fh:
        entries = load_manifest(fh)
    params = EnhanceParams(levels=args.levels)
    report = run_batch(
        entries,
        args.in_dir,
        args.out_dir,
        params,
        PeakConvention.from_peak(args.peak),
        jobs=args.jobs,
    )
    report_path = Path(args.report) if args.report else Path(args.out_dir) / "report.csv"
    report_path.write_text(emit_report_csv(report), encoding="utf-8")
    for f in report.failures:
        print(f"failed {f.image_id}: {f.cause}: {f.message}", file=sys.stderr)
    if report.failures:
        failures_path = report_path.with_name(report_path.stem + "_failures.csv")
        failures_path.write_text(emit_failures_csv(report), encoding="utf-8")
        return EXIT_PARTIAL
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    cmd = args.command
    try:
        if cmd == "negative":
            return _transform(args, negative)
        if cmd == "equalize":
            params = EnhanceParams(levels=args.levels)
            return _transform(args, lambda img: equalize(img, params))
        if cmd == "enhance":
            params = EnhanceParams(levels=args.levels, apply_negative_first=not args.no_negative)
            return _transform(args, lambda img: enhance_pipeline(img, params))
        if cmd == "compare":
            return _cmd_compare(args)
        if cmd == "histogram":
            return _cmd_histogram(args)
        if cmd == "batch":
            return _cmd_batch(args)
    except (DimensionMismatch, PgmError, ManifestError, OutputDirUnwritable, OSError) as exc:
        print(f"mammo-enhance {cmd}: {exc}", file=sys.stderr)
        return EXIT_IO
    raise AssertionError(f"unhandled command {cmd}")


if __name__ == "__main__":
    sys.exit(main())
