"""Deterministic stand-in rasters for exercising the pipeline without the
real corpus."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import numpy as np

from .batch import MANIFEST_HEADER, ManifestEntry
from .pgm import write_pgm
from .raster import GrayImage, new_image


def gradient(size: int = 1024, maxval: int = 255) -> GrayImage:
    """Diagonal ramp covering ``0..maxval``."""
    y, x = np.mgrid[0:size, 0:size]
    ramp = (x + y) * maxval // max(2 * (size - 1), 1)
    return new_image(size, size, maxval, ramp)


def phantom(seed: int, size: int = 1024) -> GrayImage:
    """Dark background with a bright lobe and a sprinkle of small bright specks."""
    rng = np.random.default_rng(seed)
    y, x = np.mgrid[0:size, 0:size] / size
    cx, cy = 0.2 + 0.1 * rng.random(), 0.5 + 0.1 * (rng.random() - 0.5)
    lobe = np.exp(-(((x - cx) / 0.35) ** 2 + ((y - cy) / 0.45) ** 2))
    img = 20 + 150 * lobe + rng.normal(0, 6, (size, size))
    specks = rng.integers(0, size, (40, 2))
    img[specks[:, 0], specks[:, 1]] = 250
    return new_image(size, size, 255, np.clip(np.rint(img), 0, 255).astype(np.int64))


def write_corpus(entries: Sequence[ManifestEntry], in_dir: Path, size: int = 1024) -> Path:
    """Write one phantom per entry plus ``manifest.csv``; return the manifest path."""
    in_dir = Path(in_dir)
    in_dir.mkdir(parents=True, exist_ok=True)
    lines = [",".join(MANIFEST_HEADER)]
    for seed, e in enumerate(entries):
        write_pgm(in_dir / e.filename, phantom(seed, size))
        lines.append(
            ",".join((e.image_id, e.image_class.value, e.abnormality.value, e.tissue.value, e.filename))
        )
    manifest = in_dir / "manifest.csv"
    manifest.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return manifest
