"""Negative transform, histogram equalization, and the composed pipeline."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .raster import GrayImage, cumulative, histogram, new_image

DEFAULT_LEVELS = 256

# Above this C_w * Th can leave int64; fall back to Python ints.
_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class EnhanceParams:
    """Pipeline configuration.

    ``levels`` is the number of output gray levels used by equalization
    (256 by default).
    """

    levels: int = DEFAULT_LEVELS
    apply_negative_first: bool = True

    def __post_init__(self) -> None:
        if isinstance(self.levels, bool) or not isinstance(self.levels, int):
            raise TypeError(f"levels must be an int, got {type(self.levels).__name__}")
        if self.levels < 2:
            raise ValueError(f"levels must be >= 2, got {self.levels}")


def negative(img: GrayImage) -> GrayImage:
    """Pointwise complement ``maxval - v``."""
    return new_image(img.width, img.height, img.maxval, img.maxval - img.pixels)


def equalization_lut(img: GrayImage, levels: int) -> np.ndarray:
    """Level mapping ``m(v) = min(C_w(v) * levels // N, levels - 1, maxval)``.

    ``C_w`` is the cumulative histogram and ``N`` the pixel count. Computed
    in exact integer arithmetic.
    """
    cum = cumulative(histogram(img)).cum
    n = img.width * img.height
    top = min(levels - 1, img.maxval)
    if n * levels < _INT64_SAFE:
        lut = cum * levels // n
    else:
        lut = np.array([int(c) * levels // n for c in cum], dtype=object)
    return np.minimum(lut, top).astype(np.int64)


def equalize(img: GrayImage, params: EnhanceParams = EnhanceParams()) -> GrayImage:
    lut = equalization_lut(img, params.levels)
    return new_image(img.width, img.height, img.maxval, lut[img.pixels])


def enhance_pipeline(img: GrayImage, params: EnhanceParams = EnhanceParams()) -> GrayImage:
    """Negative (optional, on by default) followed by equalization."""
    if params.apply_negative_first:
        img = negative(img)
    return equalize(img, params)
