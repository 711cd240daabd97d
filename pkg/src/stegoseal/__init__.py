"""stegoseal: seal a message into a grayscale image and verify its integrity.

The message is encrypted with a classical cipher, hashed, packed into a
3-row byte block together with the key and the digest, transform-coded
(8x8 DCT, quantization, zig-zag), Huffman-coded into a self-describing
stream, and embedded into the cover image. Verification reverses every
step and reports VERIFIED, TAMPERED or UNDECODABLE.
"""

from .digest import DigestHex, hash_message
from .errors import StegosealError
from .pgm import GrayImage, read_pgm, write_pgm
from .pipeline import (CAESAR, HILL, TAMPERED, UNDECODABLE, VERIFIED,
                       SealConfig, VerificationReport, seal, tamper, verify)
from .stego import LSB1, OVERWRITE, capacity, embed, extract

__version__ = "0.1.0"

__all__ = [
    "CAESAR", "HILL", "LSB1", "OVERWRITE", "TAMPERED", "UNDECODABLE",
    "VERIFIED", "DigestHex", "GrayImage", "SealConfig", "StegosealError",
    "VerificationReport", "capacity", "embed", "extract", "hash_message",
    "read_pgm", "seal", "tamper", "verify", "write_pgm",
]
