"""Classical ciphers used by the sealing pipeline: Caesar and Hill.

Neither cipher is secure; they are kept byte-faithful so that sealed
messages round-trip exactly and tampering shows up in the digest check.
"""

from __future__ import annotations

from math import gcd

import numpy as np

from .errors import BadLength, EmptyInput, NotInvertible

ALPHABET_SIZE = 26
HILL_BLOCK = 3
HILL_PAD = "X"


def _check_shift(shift: int) -> int:
    if not 0 <= int(shift) < ALPHABET_SIZE:
        raise ValueError(f"caesar shift must be in [0, 25], got {shift}")
    return int(shift)


def caesar_encrypt(plaintext: str, shift: int) -> str:
    """Shift every Latin letter forward by `shift`, preserving case.

    Digits, spaces, punctuation and anything non-ASCII-letter pass through
    unchanged, so message length and layout are preserved.
    """
    k = _check_shift(shift)
    out = []
    for ch in plaintext:
        if "a" <= ch <= "z":
            out.append(chr((ord(ch) - 97 + k) % 26 + 97))
        elif "A" <= ch <= "Z":
            out.append(chr((ord(ch) - 65 + k) % 26 + 65))
        else:
            out.append(ch)
    return "".join(out)


def caesar_decrypt(ciphertext: str, shift: int) -> str:
    """Inverse of caesar_encrypt with the same shift."""
    k = _check_shift(shift)
    return caesar_encrypt(ciphertext, (ALPHABET_SIZE - k) % ALPHABET_SIZE)


def normalize_letters(text: str) -> str:
    """Uppercase `text` and drop everything that is not A-Z.

    Mod-26 arithmetic is only defined on letters, so this is the canonical
    form the Hill cipher operates on.
    """
    return "".join(ch for ch in text.upper() if "A" <= ch <= "Z")


def _as_key(key) -> np.ndarray:
    k = np.asarray(key, dtype=np.int64)
    if k.shape != (HILL_BLOCK, HILL_BLOCK):
        raise ValueError(f"hill key must be 3x3, got shape {k.shape}")
    return k % ALPHABET_SIZE


def _det3(k: np.ndarray) -> int:
    a, b, c = int(k[0, 0]), int(k[0, 1]), int(k[0, 2])
    d, e, f = int(k[1, 0]), int(k[1, 1]), int(k[1, 2])
    g, h, i = int(k[2, 0]), int(k[2, 1]), int(k[2, 2])
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _adjugate3(k: np.ndarray) -> np.ndarray:
    a, b, c = int(k[0, 0]), int(k[0, 1]), int(k[0, 2])
    d, e, f = int(k[1, 0]), int(k[1, 1]), int(k[1, 2])
    g, h, i = int(k[2, 0]), int(k[2, 1]), int(k[2, 2])
    cof = [
        [e * i - f * h, -(d * i - f * g), d * h - e * g],
        [-(b * i - c * h), a * i - c * g, -(a * h - b * g)],
        [b * f - c * e, -(a * f - c * d), a * e - b * d],
    ]
    return np.array(cof, dtype=np.int64).T


def hill_key_inverse(key) -> np.ndarray:
    """Return the matrix inverse of `key` mod 26.

    Computed as adjugate times the modular inverse of the determinant.
    Raises NotInvertible when gcd(det mod 26, 26) != 1.
    """
    k = _as_key(key)
    det = _det3(k) % ALPHABET_SIZE
    if gcd(det, ALPHABET_SIZE) != 1:
        raise NotInvertible(f"det = {det} shares a factor with 26")
    det_inv = pow(det, -1, ALPHABET_SIZE)
    return (det_inv * _adjugate3(k)) % ALPHABET_SIZE


def hill_encrypt(plaintext: str, key) -> str:
    """Encrypt with the Hill cipher: C = P K mod 26 on length-3 row vectors.

    The plaintext is normalized to uppercase letters and padded with 'X' to
    a multiple of 3. The caller is responsible for remembering how many pad
    letters were added; see hill_pad_count.
    """
    k = _as_key(key)
    text = normalize_letters(plaintext)
    if not text:
        raise EmptyInput("no letters to encrypt after normalization")
    text += HILL_PAD * hill_pad_count(plaintext)
    vals = np.frombuffer(text.encode("ascii"), dtype=np.uint8).astype(np.int64) - 65
    rows = vals.reshape(-1, HILL_BLOCK)
    enc = (rows @ k) % ALPHABET_SIZE
    return "".join(chr(v + 65) for v in enc.ravel())


def hill_decrypt(ciphertext: str, key, pad_count: int = 0) -> str:
    """Invert hill_encrypt: P = C K^-1 mod 26, then strip `pad_count` letters.

    The ciphertext must normalize to a letter count divisible by 3.
    """
    if not 0 <= pad_count < HILL_BLOCK:
        raise ValueError(f"pad_count must be 0, 1 or 2, got {pad_count}")
    text = normalize_letters(ciphertext)
    if len(text) % HILL_BLOCK != 0:
        raise BadLength(f"ciphertext has {len(text)} letters, not a multiple of 3")
    if not text:
        return ""
    k_inv = hill_key_inverse(key)
    vals = np.frombuffer(text.encode("ascii"), dtype=np.uint8).astype(np.int64) - 65
    dec = (vals.reshape(-1, HILL_BLOCK) @ k_inv) % ALPHABET_SIZE
    plain = "".join(chr(v + 65) for v in dec.ravel())
    return plain[: len(plain) - pad_count] if pad_count else plain


def hill_pad_count(plaintext: str) -> int:
    """Number of 'X' letters hill_encrypt appends for this plaintext."""
    return -len(normalize_letters(plaintext)) % HILL_BLOCK
