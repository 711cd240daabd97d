"""Binary PGM (P5, maxval 255) reading and writing.

The writer always emits the exact header "P5\\n<w> <h>\\n255\\n" followed by
raw pixel bytes. The reader is tolerant in what the PGM spec allows
(comments and arbitrary whitespace between header tokens) and strict
about everything else: wrong magic, wrong maxval, missing pixels, or
trailing bytes are all distinct errors.
"""

from __future__ import annotations

import numpy as np

from .errors import (BadMagic, BadMaxval, MalformedHeader, TrailingData,
                     TruncatedPixels)

MAXVAL = 255
_WHITESPACE = b" \t\n\r\x0b\x0c"


class GrayImage:
    """An 8-bit single-channel raster. Pixel data is read-only."""

    def __init__(self, width: int, height: int, pixels):
        width = int(width)
        height = int(height)
        if width < 1 or height < 1:
            raise ValueError(f"image dimensions must be positive, got {width}x{height}")
        if isinstance(pixels, (bytes, bytearray)):
            arr = np.frombuffer(bytes(pixels), dtype=np.uint8)
        else:
            arr = np.asarray(pixels, dtype=np.uint8)
        if arr.size != width * height:
            raise ValueError(
                f"expected {width * height} pixels for {width}x{height}, got {arr.size}")
        arr = arr.reshape(height, width).copy()
        arr.flags.writeable = False
        self.width = width
        self.height = height
        self.pixels = arr

    def tobytes(self) -> bytes:
        """Raw pixel bytes in row-major order."""
        return self.pixels.tobytes()

    def __eq__(self, other) -> bool:
        return (isinstance(other, GrayImage)
                and self.width == other.width
                and self.height == other.height
                and np.array_equal(self.pixels, other.pixels))

    def __repr__(self) -> str:
        return f"GrayImage({self.width}x{self.height})"


def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    """Skip whitespace and comments, then collect one header token."""
    n = len(data)
    while pos < n:
        if data[pos] == 0x23:  # '#' starts a comment running to end of line
            while pos < n and data[pos] != 0x0A:
                pos += 1
        elif data[pos] in _WHITESPACE:
            pos += 1
        else:
            break
    start = pos
    while pos < n and data[pos] not in _WHITESPACE and data[pos] != 0x23:
        pos += 1
    if start == pos:
        raise MalformedHeader("header token missing")
    return data[start:pos], pos


def read_pgm(data: bytes) -> GrayImage:
    """Parse binary PGM bytes into a GrayImage."""
    data = bytes(data)
    if data[:2] != b"P5":
        raise BadMagic(f"expected P5 magic, got {data[:2]!r}")
    pos = 2
    values = []
    for name in ("width", "height", "maxval"):
        token, pos = _next_token(data, pos)
        if not token.isdigit():
            raise MalformedHeader(f"{name} is not an unsigned integer: {token!r}")
        values.append(int(token))
    width, height, maxval = values
    if width < 1 or height < 1:
        raise MalformedHeader(f"bad dimensions {width}x{height}")
    if maxval != MAXVAL:
        raise BadMaxval(f"only maxval 255 is supported, got {maxval}")
    if pos >= len(data) or data[pos] not in _WHITESPACE:
        raise MalformedHeader("missing whitespace byte before pixel data")
    pos += 1
    expected = width * height
    remaining = len(data) - pos
    if remaining < expected:
        raise TruncatedPixels(f"need {expected} pixel bytes, found {remaining}")
    if remaining > expected:
        raise TrailingData(f"{remaining - expected} bytes after the pixel data")
    return GrayImage(width, height, data[pos:pos + expected])


def write_pgm(image: GrayImage) -> bytes:
    """Serialize a GrayImage as binary PGM."""
    header = f"P5\n{image.width} {image.height}\n{MAXVAL}\n".encode("ascii")
    return header + image.tobytes()
