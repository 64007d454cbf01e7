"""PGM (netpbm portable graymap) reader and writer, P2 and P5.

Header comments (``#`` to end of line) are accepted between header tokens.
In P5 the binary payload begins right after the single whitespace byte that
terminates ``maxval``. Samples wider than one byte are big-endian.
"""

from __future__ import annotations

import enum
import re

import numpy as np

from .raster import MAX_MAXVAL, GrayImage, new_image

MAX_DIMENSION = 1 << 16

_WHITESPACE = b" \t\n\v\f\r"
_DIGITS = re.compile(rb"[0-9]+")


class PgmVariant(enum.Enum):
    ASCII_P2 = "P2"
    BINARY_P5 = "P5"

    @classmethod
    def from_name(cls, name: str) -> "PgmVariant":
        try:
            return {"p2": cls.ASCII_P2, "p5": cls.BINARY_P5}[name.lower()]
        except KeyError:
            raise ValueError(f"unknown PGM variant {name!r}, expected p2 or p5") from None


class PgmError(ValueError):
    """Base class for every decode failure."""


class BadMagic(PgmError):
    pass


class HeaderSyntax(PgmError):
    pass


class MaxvalOutOfRange(PgmError):
    pass


class TruncatedPayload(PgmError):
    pass


class SampleOutOfRange(PgmError):
    pass


class SampleSyntax(PgmError):
    """A P2 sample token is not a non-negative decimal integer."""


class TargetExceedsSource(ValueError):
    pass


def _skip_space_and_comments(data: bytes, pos: int) -> int:
    n = len(data)
    while pos < n:
        c = data[pos : pos + 1]
        if c == b"#":
            nl = data.find(b"\n", pos)
            pos = n if nl < 0 else nl + 1
        elif c in _WHITESPACE:
            pos += 1
        else:
            break
    return pos


def _header_int(data: bytes, pos: int, name: str) -> tuple[int, int]:
    pos = _skip_space_and_comments(data, pos)
    m = _DIGITS.match(data, pos)
    if m is None:
        got = data[pos : pos + 8]
        raise HeaderSyntax(f"expected {name} at byte {pos}, found {got!r}")
    end = m.end()
    if end < len(data) and data[end : end + 1] not in _WHITESPACE and data[end : end + 1] != b"#":
        raise HeaderSyntax(f"malformed {name} token at byte {pos}")
    return int(m.group()), end


def decode_pgm(data: bytes) -> GrayImage:
    """Decode a single P2 or P5 document."""
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise BadMagic(f"expected 'P2' or 'P5', found {magic!r}")
    if len(data) > 2 and data[2:3] not in _WHITESPACE and data[2:3] != b"#":
        raise BadMagic(f"magic number followed by {data[2:3]!r}")
    pos = 2
    width, pos = _header_int(data, pos, "width")
    height, pos = _header_int(data, pos, "height")
    maxval, pos = _header_int(data, pos, "maxval")
    if width < 1 or height < 1:
        raise HeaderSyntax(f"dimensions must be positive, got {width}x{height}")
    if width > MAX_DIMENSION or height > MAX_DIMENSION:
        raise HeaderSyntax(f"dimensions {width}x{height} exceed {MAX_DIMENSION} per axis")
    if not 1 <= maxval <= MAX_MAXVAL:
        raise MaxvalOutOfRange(f"maxval {maxval} outside [1, {MAX_MAXVAL}]")

    if magic == b"P5":
        return _decode_p5_payload(data, pos, width, height, maxval)
    return _decode_p2_payload(data, pos, width, height, maxval, width * height)


def _decode_p5_payload(data: bytes, pos: int, width: int, height: int, maxval: int) -> GrayImage:
    if pos >= len(data) or data[pos : pos + 1] not in _WHITESPACE:
        raise TruncatedPayload("missing whitespace byte after maxval")
    pos += 1
    n = width * height
    sample_bytes = 1 if maxval <= 255 else 2
    need = n * sample_bytes
    avail = len(data) - pos
    if avail < need:
        raise TruncatedPayload(f"payload has {avail} bytes, need {need}")
    dtype = np.uint8 if sample_bytes == 1 else np.dtype(">u2")
    samples = np.frombuffer(data, dtype=dtype, count=n, offset=pos).astype(np.int64)
    if n and int(samples.max()) > maxval:
        bad = int(samples.max())
        raise SampleOutOfRange(f"sample {bad} exceeds maxval {maxval}")
    return new_image(width, height, maxval, samples)


def _decode_p2_payload(
    data: bytes, pos: int, width: int, height: int, maxval: int, n: int
) -> GrayImage:
    body = data[pos:]
    if b"#" in body:
        body = re.sub(rb"#[^\n]*", b" ", body)
    tokens = body.split(maxsplit=n)[:n]
    if len(tokens) < n:
        raise TruncatedPayload(f"found {len(tokens)} samples, need {n}")
    for t in tokens:
        if not t.isdigit():
            raise SampleSyntax(f"invalid sample token {t[:16]!r}")
    samples = [int(t) for t in tokens]
    top = max(samples)
    if top > maxval:
        raise SampleOutOfRange(f"sample {top} exceeds maxval {maxval}")
    return new_image(width, height, maxval, np.array(samples, dtype=np.int64))


def encode_pgm(img: GrayImage, variant: PgmVariant = PgmVariant.BINARY_P5) -> bytes:
    header = f"{variant.value}\n{img.width} {img.height}\n{img.maxval}\n".encode("ascii")
    if variant is PgmVariant.BINARY_P5:
        dtype = np.uint8 if img.maxval <= 255 else np.dtype(">u2")
        return header + img.pixels.astype(dtype).tobytes()
    rows = img.array
    lines = [" ".join(map(str, row.tolist())) for row in rows]
    return header + ("\n".join(lines) + "\n").encode("ascii")


def read_pgm(path) -> GrayImage:
    with open(path, "rb") as fh:
        return decode_pgm(fh.read())


def write_pgm(path, img: GrayImage, variant: PgmVariant = PgmVariant.BINARY_P5) -> None:
    with open(path, "wb") as fh:
        fh.write(encode_pgm(img, variant))


def center_crop(img: GrayImage, target_w: int, target_h: int) -> GrayImage:
    """Return the centered ``target_w x target_h`` window of ``img``.

    Offsets are ``floor((dim - target) / 2)`` on each axis. Used to bring two
    rasters to a common size before they are compared.
    """
    if target_w < 1 or target_h < 1:
        raise TargetExceedsSource(f"target {target_w}x{target_h} must be positive")
    if target_w > img.width or target_h > img.height:
        raise TargetExceedsSource(
            f"target {target_w}x{target_h} exceeds source {img.width}x{img.height}"
        )
    x0 = (img.width - target_w) // 2
    y0 = (img.height - target_h) // 2
    window = img.array[y0 : y0 + target_h, x0 : x0 + target_w]
    return new_image(target_w, target_h, img.maxval, window)
