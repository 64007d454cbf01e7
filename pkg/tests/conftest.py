import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from mammoenhance.raster import GrayImage, new_image  # noqa: E402

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


@st.composite
def gray_images(draw, max_dim=16, maxvals=(1, 15, 255, 65535)):
    width = draw(st.integers(1, max_dim))
    height = draw(st.integers(1, max_dim))
    maxval = draw(st.sampled_from(maxvals))
    pixels = draw(st.lists(st.integers(0, maxval), min_size=width * height, max_size=width * height))
    return new_image(width, height, maxval, pixels)


@st.composite
def image_pairs(draw, max_dim=12, maxvals=(255,)):
    a = draw(gray_images(max_dim=max_dim, maxvals=maxvals))
    pixels = draw(st.lists(st.integers(0, a.maxval), min_size=a.pixels.size, max_size=a.pixels.size))
    return a, a.with_pixels(pixels)


def random_image(rng: np.random.Generator, max_dim: int, maxval: int) -> GrayImage:
    w, h = int(rng.integers(1, max_dim + 1)), int(rng.integers(1, max_dim + 1))
    return new_image(w, h, maxval, rng.integers(0, maxval + 1, size=w * h))


@pytest.fixture
def rng():
    return np.random.default_rng(20181)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{status}] {name}: {detail}")
