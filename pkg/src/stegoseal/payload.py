"""The 3-row payload block and its 8x8 tiling.

A sealed message travels as a byte matrix D with three rows of equal
length L (default 128):

    row 0: ciphertext, zero-padded
    row 1: serialized key text, zero-padded
    row 2: digest hex text, zero-padded

Byte 0 is reserved for padding and therefore forbidden inside the row
content, which makes stripping unambiguous.

For the transform stage D is flattened row-major into an 8 x (3L/8)
matrix and cut into consecutive 8x8 column bands, left to right. With the
default L=128 that is 384 bytes in 6 tiles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadShape, MalformedBlock, NulInPayload, RowOverflow

DEFAULT_ROW_LENGTH = 128
ROWS = 3
TILE = 8


@dataclass(frozen=True, eq=False)
class PayloadBlock:
    rows: np.ndarray

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=np.uint8)
        if rows.ndim != 2 or rows.shape[0] != ROWS or rows.shape[1] < 1:
            raise MalformedBlock(f"expected a 3xL byte matrix, got shape {rows.shape}")
        object.__setattr__(self, "rows", rows)

    @property
    def row_length(self) -> int:
        return self.rows.shape[1]

    def __eq__(self, other) -> bool:
        return isinstance(other, PayloadBlock) and np.array_equal(self.rows, other.rows)


def _row_bytes(text: str, row: int, limit: int) -> np.ndarray:
    data = text.encode("utf-8")
    if b"\x00" in data:
        raise NulInPayload(row)
    if len(data) > limit:
        raise RowOverflow(row, len(data), limit)
    buf = np.zeros(limit, dtype=np.uint8)
    buf[: len(data)] = np.frombuffer(data, dtype=np.uint8)
    return buf


def pack(ciphertext: str, key_text: str, digest_hex: str,
         row_length: int = DEFAULT_ROW_LENGTH) -> PayloadBlock:
    """Build the 3-row block from ciphertext, key text and digest hex."""
    rows = np.stack([
        _row_bytes(ciphertext, 0, row_length),
        _row_bytes(key_text, 1, row_length),
        _row_bytes(digest_hex, 2, row_length),
    ])
    return PayloadBlock(rows)


def unpack(block: PayloadBlock) -> tuple[str, str, str]:
    """Strip trailing zero padding and return (ciphertext, key, digest)."""
    if not isinstance(block, PayloadBlock):
        block = PayloadBlock(np.asarray(block))
    out = []
    for row in block.rows:
        nz = np.nonzero(row)[0]
        data = row[: nz[-1] + 1].tobytes() if nz.size else b""
        try:
            out.append(data.decode("utf-8"))
        except UnicodeDecodeError as exc:
            raise MalformedBlock(f"row is not valid UTF-8: {exc}") from None
    return tuple(out)


def to_tiles(block: PayloadBlock) -> np.ndarray:
    """Cut the block into 8x8 tiles; returns an array of shape (n, 8, 8).

    The flattened block is laid out as an 8-row matrix and split into
    vertical 8x8 bands left to right, so concatenating the tiles' columns
    reconstructs that matrix exactly.
    """
    total = block.rows.size
    if total % (TILE * TILE) != 0:
        raise BadShape(f"{total} bytes does not divide into 8x8 tiles")
    wide = block.rows.reshape(TILE, total // TILE)
    return np.stack(np.hsplit(wide, total // (TILE * TILE)))


def from_tiles(tiles, row_length: int = DEFAULT_ROW_LENGTH) -> PayloadBlock:
    """Exact inverse of to_tiles for a given row length."""
    arr = np.asarray(tiles)
    if arr.ndim != 3 or arr.shape[1:] != (TILE, TILE):
        raise BadShape(f"expected tiles of shape (n, 8, 8), got {arr.shape}")
    if arr.shape[0] * TILE * TILE != ROWS * row_length:
        raise BadShape(
            f"{arr.shape[0]} tiles carry {arr.shape[0] * TILE * TILE} bytes, "
            f"but 3x{row_length} needs {ROWS * row_length}")
    wide = np.hstack(list(arr))
    return PayloadBlock(wide.reshape(ROWS, row_length))
