"""End-to-end sealing and verification of a message inside a cover image.

Sealing runs encrypt -> hash -> pack -> tile -> dct2 -> quantize ->
zig-zag -> huffman -> embed. Verification runs the exact reverse and
yields one of three verdicts:

    VERIFIED     the decoded stream is the canonical encoding of its own
                 content, the recomputed digest equals the embedded one,
                 and the expected key (if given) matches
    TAMPERED     the stream decoded but one of those checks failed
    UNDECODABLE  the stream would not decode at all; no message is claimed

The canonical-encoding check exists because quantization rounding can
absorb a tiny coefficient change: a bit flip that swaps two near-equal
symbols may reconstruct the very same payload bytes and so slip past the
digest comparison. Re-encoding the recovered block is deterministic and
must reproduce the extracted stream byte for byte.

The key travels inside the payload (row 1), so verification needs no
out-of-band secret; anyone holding the image can decode and re-seal it.
This mirrors the scheme's design and is an integrity mechanism only, not
confidentiality. When a key is supplied for verification it is checked
against the embedded one as an extra tamper signal.

With the Hill cipher the protected message is its normalized form
(uppercase letters only); 'X' padding added for the 3-letter blocks is
stripped on verification by trying each possible pad count against the
embedded digest.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import digest as _digest
from .cipher import (caesar_decrypt, caesar_encrypt, hill_decrypt,
                     hill_encrypt, hill_key_inverse, normalize_letters)
from .entropy import (build_table, decode_prefix, encode, signed_to_symbol,
                      symbol_to_signed, zigzag_scan, zigzag_unscan)
from .errors import (BadShape, EmptyMessage, MalformedBlock, OutOfRange,
                     StegosealError)
from .payload import (DEFAULT_ROW_LENGTH, ROWS, PayloadBlock, from_tiles,
                      pack, to_tiles, unpack)
from .pgm import GrayImage
from .stego import MODES, OVERWRITE, capacity, embed, extract
from .transform import (DEFAULT_SCALE, QuantMatrix, dct2, dequantize, idct2,
                        quantize, round_half_away)

CAESAR = "caesar"
HILL = "hill"
CIPHERS = (CAESAR, HILL)

VERIFIED = "VERIFIED"
TAMPERED = "TAMPERED"
UNDECODABLE = "UNDECODABLE"


@dataclass
class SealConfig:
    """Everything the pipeline needs besides the message and the cover."""

    cipher: str = CAESAR
    caesar_key: int | None = None
    hill_key: object = None
    digest_algorithm: str = _digest.DEFAULT_ALGORITHM
    row_length: int = DEFAULT_ROW_LENGTH
    embed_mode: str = OVERWRITE
    quant_scale: int = DEFAULT_SCALE

    def validate(self, require_key: bool = False) -> None:
        if self.cipher not in CIPHERS:
            raise ValueError(f"unknown cipher {self.cipher!r}")
        if self.digest_algorithm not in _digest.ALGORITHMS:
            raise ValueError(f"unknown digest algorithm {self.digest_algorithm!r}")
        if self.embed_mode not in MODES:
            raise ValueError(f"unknown embed mode {self.embed_mode!r}")
        if self.row_length < 1 or (ROWS * self.row_length) % 64 != 0:
            raise ValueError(
                f"row length {self.row_length} does not tile into 8x8 blocks")
        if self.quant_scale < 1:
            raise ValueError("quant scale must be >= 1")
        if self.caesar_key is not None and self.hill_key is not None:
            raise ValueError("provide a key for one cipher only")
        if self.cipher == CAESAR:
            if self.hill_key is not None:
                raise ValueError("hill key given but cipher is caesar")
            if self.caesar_key is not None and not 0 <= self.caesar_key <= 25:
                raise ValueError(f"caesar key must be in [0, 25], got {self.caesar_key}")
            if require_key and self.caesar_key is None:
                raise ValueError("sealing with the caesar cipher needs caesar_key")
        else:
            if self.caesar_key is not None:
                raise ValueError("caesar key given but cipher is hill")
            if require_key and self.hill_key is None:
                raise ValueError("sealing with the hill cipher needs hill_key")
            if self.hill_key is not None:
                hill_key_inverse(self.hill_key)  # raises NotInvertible early

    def key_text(self) -> str:
        """Serialize the key for payload row 1."""
        if self.cipher == CAESAR:
            return str(self.caesar_key)
        k = np.asarray(self.hill_key, dtype=np.int64) % 26
        return ",".join(str(v) for v in k.ravel())


@dataclass
class VerificationReport:
    verdict: str
    recovered_message: str = ""
    embedded_digest: str = ""
    recomputed_digest: str = ""
    reason: str = ""


def parse_key_text(text: str):
    """Parse payload row 1 back into ("caesar", shift) or ("hill", matrix)."""
    if "," in text:
        parts = text.split(",")
        if len(parts) != 9:
            raise MalformedBlock(f"hill key row has {len(parts)} entries, needs 9")
        try:
            vals = [int(p) for p in parts]
        except ValueError:
            raise MalformedBlock("hill key row is not all integers") from None
        if any(not 0 <= v <= 25 for v in vals):
            raise MalformedBlock("hill key entries must be in [0, 25]")
        return HILL, np.array(vals, dtype=np.int64).reshape(3, 3)
    try:
        shift = int(text)
    except ValueError:
        raise MalformedBlock(f"key row {text!r} is not an integer") from None
    if not 0 <= shift <= 25:
        raise MalformedBlock(f"caesar key {shift} out of range")
    return CAESAR, shift


def _block_symbols(block: PayloadBlock, quant: QuantMatrix) -> list:
    """Forward transform: tiles -> coefficients -> zig-zag symbol stream."""
    symbols = []
    for tile in to_tiles(block):
        coeffs = quantize(dct2(tile), quant)
        symbols.extend(signed_to_symbol(zigzag_scan(coeffs)).tolist())
    return symbols


def _symbols_to_stream(symbols) -> bytes:
    table = build_table(Counter(symbols))
    return encode(symbols, table).to_bytes()


def _recover_block(symbols, row_length: int, quant: QuantMatrix) -> PayloadBlock:
    """Inverse transform: symbol stream back to the 3-row byte block."""
    if len(symbols) != ROWS * row_length:
        raise BadShape(
            f"decoded {len(symbols)} symbols, expected {ROWS * row_length}")
    values = symbol_to_signed(np.asarray(symbols, dtype=np.int64))
    tiles = []
    for chunk in values.reshape(-1, 64):
        rec = round_half_away(idct2(dequantize(zigzag_unscan(chunk), quant)))
        if (rec < 0).any() or (rec > 255).any():
            raise MalformedBlock("reconstructed bytes fall outside [0, 255]")
        tiles.append(rec.astype(np.uint8))
    return from_tiles(np.stack(tiles), row_length)


def seal(message: str, config: SealConfig, cover: GrayImage) -> GrayImage:
    """Seal `message` into `cover`; the result verifies under the same config."""
    if not message:
        raise EmptyMessage("refusing to seal an empty message")
    config.validate(require_key=True)
    if config.cipher == CAESAR:
        protected = message
        ciphertext = caesar_encrypt(message, config.caesar_key)
    else:
        ciphertext = hill_encrypt(message, config.hill_key)
        protected = normalize_letters(message)
    digest_hex = _digest.hash_message(protected, config.digest_algorithm).hex
    block = pack(ciphertext, config.key_text(), digest_hex, config.row_length)

    quant = QuantMatrix.identity(config.quant_scale)
    symbols = _block_symbols(block, quant)
    try:
        recovered = _recover_block(symbols, config.row_length, quant)
    except MalformedBlock:
        recovered = None
    if recovered != block:
        raise ValueError(
            f"quant scale {config.quant_scale} is too coarse to reconstruct "
            "the payload; use the default or anything >= 7")
    return embed(cover, _symbols_to_stream(symbols), config.embed_mode)


def verify(stego: GrayImage, config: SealConfig | None = None) -> VerificationReport:
    """Extract, decode and check a sealed image. Never raises on bad data."""
    config = config if config is not None else SealConfig()
    config.validate(require_key=False)
    quant = QuantMatrix.identity(config.quant_scale)
    data = extract(stego, capacity(stego, config.embed_mode), config.embed_mode)
    try:
        symbols, _, consumed = decode_prefix(data)
        block = _recover_block(symbols, config.row_length, quant)
        ciphertext, key_text, embedded_digest = unpack(block)
        kind, key = parse_key_text(key_text)
        message, recomputed = _decrypt_and_hash(ciphertext, kind, key, embedded_digest)
    except StegosealError as exc:
        return VerificationReport(UNDECODABLE,
                                  reason=f"{type(exc).__name__}: {exc}")

    problems = []
    if recomputed != embedded_digest:
        problems.append("digest mismatch")
    # Re-encode from the reconstructed block, not from the decoded symbols:
    # rounding maps near-equal symbol streams onto the same bytes, and only
    # the block's own forward encoding is canonical for that content.
    if _symbols_to_stream(_block_symbols(block, quant)) != data[:consumed]:
        problems.append("stream is not the canonical encoding of its content")
    if not _expected_key_matches(config, kind, key):
        problems.append("embedded key differs from the expected key")
    verdict = VERIFIED if not problems else TAMPERED
    return VerificationReport(verdict, message, embedded_digest, recomputed,
                              "; ".join(problems))


def tamper(image: GrayImage, pixel_index: int, bit: int) -> GrayImage:
    """Flip one bit of one pixel; bit 0 is the least significant."""
    if not 0 <= pixel_index < image.width * image.height:
        raise OutOfRange(f"pixel {pixel_index} outside {image.width}x{image.height}")
    if not 0 <= bit <= 7:
        raise OutOfRange(f"bit {bit} outside [0, 7]")
    flat = image.pixels.ravel().copy()
    flat[pixel_index] ^= 1 << bit
    return GrayImage(image.width, image.height, flat)


def _decrypt_and_hash(ciphertext: str, kind: str, key, embedded_digest: str):
    """Decrypt and recompute the digest, resolving Hill pad ambiguity.

    The digest algorithm is recovered from the embedded digest's length, so
    verification works whatever algorithm the sealer chose.
    """
    algorithm = _digest.algorithm_for_hex_length(len(embedded_digest))
    if kind == CAESAR:
        message = caesar_decrypt(ciphertext, key)
        if algorithm is None:
            return message, ""
        return message, _digest.hash_message(message, algorithm).hex
    full = hill_decrypt(ciphertext, key)
    if algorithm is None:
        return full, ""
    candidates = [full]
    if full.endswith("X"):
        candidates.append(full[:-1])
    if full.endswith("XX"):
        candidates.append(full[:-2])
    for candidate in candidates:
        recomputed = _digest.hash_message(candidate, algorithm).hex
        if recomputed == embedded_digest:
            return candidate, recomputed
    return full, _digest.hash_message(full, algorithm).hex


def _expected_key_matches(config: SealConfig, kind: str, key) -> bool:
    if config.caesar_key is not None:
        return kind == CAESAR and key == config.caesar_key
    if config.hill_key is not None:
        expected = np.asarray(config.hill_key, dtype=np.int64) % 26
        return kind == HILL and np.array_equal(key, expected)
    return True
