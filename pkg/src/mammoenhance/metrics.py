"""MSE and PSNR between two equal-sized rasters.

The default peak is 256*256 (65536), which reproduces the published numbers;
255*255 is available as the conventional alternative.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .raster import GrayImage

INFINITE = math.inf


class DimensionMismatch(ValueError):
    def __init__(self, a: GrayImage, b: GrayImage):
        super().__init__(
            f"dimension mismatch: {a.width}x{a.height} vs {b.width}x{b.height}"
        )
        self.a_shape = (a.width, a.height)
        self.b_shape = (b.width, b.height)


class PeakConvention(enum.IntEnum):
    """Squared peak value used in the PSNR numerator."""

    PAPER = 256 * 256
    CONVENTIONAL = 255 * 255

    @classmethod
    def from_peak(cls, peak: int) -> "PeakConvention":
        if peak == 256:
            return cls.PAPER
        if peak == 255:
            return cls.CONVENTIONAL
        raise ValueError(f"peak must be 256 or 255, got {peak}")

    @property
    def peak(self) -> int:
        return 256 if self is PeakConvention.PAPER else 255


@dataclass(frozen=True)
class MetricsReport:
    mse: float
    psnr_db: float
    peak: PeakConvention = PeakConvention.PAPER

    @property
    def psnr_text(self) -> str:
        return format_psnr(self.psnr_db)


def _check_shapes(a: GrayImage, b: GrayImage) -> None:
    if a.width != b.width or a.height != b.height:
        raise DimensionMismatch(a, b)


def squared_error_sum(a: GrayImage, b: GrayImage) -> int:
    """Exact sum of squared signed differences."""
    _check_shapes(a, b)
    diff = a.array - b.array
    # per-row sums stay within int64 for any allowed size; the grand total may not
    row_sums = np.einsum("ij,ij->i", diff, diff)
    return sum(int(s) for s in row_sums)


def mse(a: GrayImage, b: GrayImage) -> float:
    return squared_error_sum(a, b) / (a.width * a.height)


def psnr(mse_value: float, peak: PeakConvention = PeakConvention.PAPER) -> float:
    """``10 * log10(peak_squared / mse)``; ``INFINITE`` when ``mse == 0``."""
    if mse_value < 0 or math.isnan(mse_value):
        raise ValueError(f"mse must be non-negative, got {mse_value}")
    if mse_value == 0:
        return INFINITE
    return 10.0 * math.log10(int(peak) / mse_value)


def compare(a: GrayImage, b: GrayImage, peak: PeakConvention = PeakConvention.PAPER) -> MetricsReport:
    m = mse(a, b)
    return MetricsReport(m, psnr(m, peak), peak)


def format_psnr(value: float) -> str:
    return "inf" if math.isinf(value) else f"{value:.3f}"
