"""Grayscale raster value types and their histograms.

Pixels are held as a read-only, row-major ``int64`` array so that later
arithmetic (differences, ``maxval - v``) never wraps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

MAX_MAXVAL = 65535

PixelData = Union[Sequence[int], np.ndarray]


class RasterError(ValueError):
    """Base class for invalid raster construction."""


class LengthMismatch(RasterError):
    pass


class PixelOutOfRange(RasterError):
    pass


class ZeroDimension(RasterError):
    pass


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class GrayImage:
    """An immutable ``width x height`` raster of gray levels in ``[0, maxval]``.

    Use :func:`new_image` to build one from untrusted data; the constructor
    validates too, but :func:`new_image` also accepts plain sequences.
    """

    width: int
    height: int
    maxval: int
    pixels: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ZeroDimension(f"dimensions must be positive, got {self.width}x{self.height}")
        if not 1 <= self.maxval <= MAX_MAXVAL:
            raise PixelOutOfRange(f"maxval {self.maxval} outside [1, {MAX_MAXVAL}]")
        px = self.pixels
        if px.ndim != 1 or px.size != self.width * self.height:
            raise LengthMismatch(
                f"expected {self.width * self.height} pixels, got {px.size}"
            )
        if px.size and (int(px.min()) < 0 or int(px.max()) > self.maxval):
            raise PixelOutOfRange(
                f"pixel values span [{int(px.min())}, {int(px.max())}], allowed [0, {self.maxval}]"
            )

    @property
    def shape(self) -> tuple[int, int]:
        return (self.height, self.width)

    @property
    def array(self) -> np.ndarray:
        """Read-only ``(height, width)`` view of the pixels."""
        return self.pixels.reshape(self.height, self.width)

    def with_pixels(self, pixels: PixelData) -> "GrayImage":
        return new_image(self.width, self.height, self.maxval, pixels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrayImage):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and self.maxval == other.maxval
            and np.array_equal(self.pixels, other.pixels)
        )

    __hash__ = None  # type: ignore[assignment]


def new_image(width: int, height: int, maxval: int, pixels: PixelData) -> GrayImage:
    """Validate arguments and return a :class:`GrayImage`."""
    if width < 1 or height < 1:
        raise ZeroDimension(f"dimensions must be positive, got {width}x{height}")
    arr = np.asarray(pixels)
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        raise PixelOutOfRange(f"pixels must be integers, got dtype {arr.dtype}")
    arr = np.array(arr, dtype=np.int64).reshape(-1)
    return GrayImage(int(width), int(height), int(maxval), _frozen(arr))


@dataclass(frozen=True, eq=False)
class Histogram:
    maxval: int
    counts: np.ndarray = field(repr=False)
    total: int

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Histogram):
            return NotImplemented
        return (
            self.maxval == other.maxval
            and self.total == other.total
            and np.array_equal(self.counts, other.counts)
        )

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True, eq=False)
class CumulativeHistogram:
    maxval: int
    cum: np.ndarray = field(repr=False)
    total: int

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CumulativeHistogram):
            return NotImplemented
        return (
            self.maxval == other.maxval
            and self.total == other.total
            and np.array_equal(self.cum, other.cum)
        )

    __hash__ = None  # type: ignore[assignment]


def histogram(img: GrayImage) -> Histogram:
    """Count occurrences of every level ``0..maxval``."""
    counts = np.bincount(img.pixels, minlength=img.maxval + 1).astype(np.int64)
    return Histogram(img.maxval, _frozen(counts), img.width * img.height)


def cumulative(h: Histogram) -> CumulativeHistogram:
    cum = np.cumsum(h.counts, dtype=np.int64)
    return CumulativeHistogram(h.maxval, _frozen(cum), h.total)
