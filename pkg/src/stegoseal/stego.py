"""Embedding a byte stream into a grayscale cover image.

Two modes:

    overwrite  payload bytes replace the first pixels in raster order,
               starting at the top-left corner; fast and plainly visible
    lsb1       one payload bit per pixel in the least significant bit,
               MSB-first within each payload byte; imperceptible

Extraction only needs the embedded byte count and the mode; pixels beyond
the embedding region are never touched.
"""

from __future__ import annotations

import numpy as np

from .errors import CapacityExceeded
from .pgm import GrayImage

OVERWRITE = "overwrite"
LSB1 = "lsb1"
MODES = (OVERWRITE, LSB1)


def _check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"unknown embed mode {mode!r}, expected one of {MODES}")
    return mode


def capacity(image: GrayImage, mode: str = OVERWRITE) -> int:
    """Maximum payload size in bytes for this image and mode."""
    n = image.width * image.height
    return n if _check_mode(mode) == OVERWRITE else n // 8


def embed(cover: GrayImage, payload: bytes, mode: str = OVERWRITE) -> GrayImage:
    """Return a new image with `payload` embedded; the cover is untouched."""
    limit = capacity(cover, mode)
    if len(payload) > limit:
        raise CapacityExceeded(len(payload), limit)
    flat = cover.pixels.ravel().copy()
    data = np.frombuffer(bytes(payload), dtype=np.uint8)
    if mode == OVERWRITE:
        flat[: data.size] = data
    else:
        bits = np.unpackbits(data)
        flat[: bits.size] = (flat[: bits.size] & 0xFE) | bits
    return GrayImage(cover.width, cover.height, flat)


def extract(stego: GrayImage, length: int, mode: str = OVERWRITE) -> bytes:
    """Read back `length` embedded bytes."""
    limit = capacity(stego, mode)
    if length > limit:
        raise CapacityExceeded(length, limit)
    if length < 0:
        raise ValueError("length must be non-negative")
    flat = stego.pixels.ravel()
    if mode == OVERWRITE:
        return flat[:length].tobytes()
    return np.packbits(flat[: 8 * length] & 1).tobytes()
