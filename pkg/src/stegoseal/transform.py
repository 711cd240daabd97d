"""8x8 orthonormal DCT-II, its inverse, and scaled integer quantization.

Quantization divides each coefficient by q[u][v] after multiplying by an
integer scale S and rounds half away from zero; dequantization multiplies
back. With the default all-ones matrix the step is a pure precision
choice: the per-coefficient error is at most 1/(2S), and the worst-case
pixel error after the inverse transform is bounded by kappa/(2S) with
kappa = (max_x sum_u |C[u,x]|)^2 = 6.98. Any S >= 7 therefore guarantees
that rounding the reconstruction recovers every 8-bit tile exactly; 7 is
the smallest such integer and is the frozen default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BadShape

BLOCK = 8
DEFAULT_SCALE = 7


def _basis() -> np.ndarray:
    c = np.empty((BLOCK, BLOCK))
    for u in range(BLOCK):
        alpha = math.sqrt(1.0 / BLOCK) if u == 0 else math.sqrt(2.0 / BLOCK)
        for x in range(BLOCK):
            c[u, x] = alpha * math.cos((2 * x + 1) * u * math.pi / (2 * BLOCK))
    return c


_C = _basis()
_C.flags.writeable = False


def _as_block(m, name: str) -> np.ndarray:
    arr = np.asarray(m, dtype=np.float64)
    if arr.shape != (BLOCK, BLOCK):
        raise BadShape(f"{name} must be 8x8, got shape {arr.shape}")
    return arr


def dct2(tile) -> np.ndarray:
    """Forward 2D DCT-II of an 8x8 tile (orthonormal, energy preserving)."""
    return _C @ _as_block(tile, "tile") @ _C.T


def idct2(coeffs) -> np.ndarray:
    """Inverse 2D DCT; idct2(dct2(t)) == t up to float rounding."""
    return _C.T @ _as_block(coeffs, "coeffs") @ _C


def round_half_away(x) -> np.ndarray:
    """Round to nearest integer with ties going away from zero."""
    x = np.asarray(x, dtype=np.float64)
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


@dataclass(frozen=True)
class QuantMatrix:
    """Per-coefficient divisors plus the integer pre-scale S."""

    values: np.ndarray = field(default_factory=lambda: np.ones((BLOCK, BLOCK), np.int64))
    scale: int = DEFAULT_SCALE

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.int64)
        if vals.shape != (BLOCK, BLOCK):
            raise BadShape(f"quant matrix must be 8x8, got {vals.shape}")
        if (vals < 1).any():
            raise ValueError("quant matrix entries must be >= 1")
        if int(self.scale) < 1:
            raise ValueError("quant scale must be >= 1")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "scale", int(self.scale))

    @classmethod
    def identity(cls, scale: int = DEFAULT_SCALE) -> "QuantMatrix":
        return cls(np.ones((BLOCK, BLOCK), np.int64), scale)


def quantize(coeffs, quant: QuantMatrix | None = None) -> np.ndarray:
    """Map coefficients to integers: round(S * c / q), half away from zero."""
    q = quant if quant is not None else QuantMatrix.identity()
    c = _as_block(coeffs, "coeffs")
    return round_half_away(q.scale * c / q.values).astype(np.int64)


def dequantize(quantized, quant: QuantMatrix | None = None) -> np.ndarray:
    """Invert quantize up to rounding: d * q / S."""
    q = quant if quant is not None else QuantMatrix.identity()
    d = np.asarray(quantized, dtype=np.int64)
    if d.shape != (BLOCK, BLOCK):
        raise BadShape(f"quantized block must be 8x8, got {d.shape}")
    return d * q.values / q.scale
