"""Grayscale mammogram enhancement: negative transform, histogram
equalization, MSE/PSNR validation, and a manifest-driven batch runner."""

from .batch import (
    BatchReport,
    ManifestEntry,
    emit_report_csv,
    load_manifest,
    run_batch,
)
from .enhance import EnhanceParams, enhance_pipeline, equalize, negative
from .metrics import INFINITE, MetricsReport, PeakConvention, compare, mse, psnr
from .pgm import PgmVariant, center_crop, decode_pgm, encode_pgm, read_pgm, write_pgm
from .raster import CumulativeHistogram, GrayImage, Histogram, cumulative, histogram, new_image

__all__ = [
    "BatchReport",
    "CumulativeHistogram",
    "EnhanceParams",
    "GrayImage",
    "Histogram",
    "INFINITE",
    "ManifestEntry",
    "MetricsReport",
    "PeakConvention",
    "PgmVariant",
    "center_crop",
    "compare",
    "cumulative",
    "decode_pgm",
    "emit_report_csv",
    "encode_pgm",
    "enhance_pipeline",
    "equalize",
    "histogram",
    "load_manifest",
    "mse",
    "negative",
    "new_image",
    "psnr",
    "read_pgm",
    "run_batch",
    "write_pgm",
]
