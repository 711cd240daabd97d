"""Seal a message into a cover image, verify it, then tamper and watch it fail.

Writes cover.pgm / sealed.pgm / tampered.pgm under demos/output/.
"""

from pathlib import Path

import numpy as np

from stegoseal import GrayImage, SealConfig, seal, tamper, verify, write_pgm

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)


def synthetic_cover(size=256):
    """A smooth gradient with a little deterministic texture."""
    y, x = np.mgrid[0:size, 0:size]
    base = 96 + 64 * np.sin(x / 17.0) * np.cos(y / 23.0) + x * 0.15 + y * 0.1
    rng = np.random.default_rng(2024)
    noise = rng.normal(0, 6, (size, size))
    return GrayImage(size, size, np.clip(base + noise, 0, 255).astype(np.uint8))


def show(report):
    print(f"  verdict            {report.verdict}")
    print(f"  recovered message  {report.recovered_message!r}")
    print(f"  embedded digest    {report.embedded_digest[:32]}...")
    print(f"  recomputed digest  {report.recomputed_digest[:32]}...")
    if report.reason:
        print(f"  reason             {report.reason}")


message = "I'm so proud to be Egyptian"
config = SealConfig(caesar_key=16)

cover = synthetic_cover()
(OUT / "cover.pgm").write_bytes(write_pgm(cover))
print(f"cover image: 256x256, saved to {OUT / 'cover.pgm'}")

sealed = seal(message, config, cover)
(OUT / "sealed.pgm").write_bytes(write_pgm(sealed))
changed = int(np.count_nonzero(sealed.pixels != cover.pixels))
print(f"\nsealed {message!r} with caesar key 16 ({changed} pixels changed)")

print("\nverifying the sealed image:")
show(verify(sealed, config))

print("\nverifying without supplying the key (it travels in the image):")
show(verify(sealed))

broken = tamper(sealed, 200, 0)
(OUT / "tampered.pgm").write_bytes(write_pgm(broken))
print("\nafter flipping a single bit of pixel 200:")
show(verify(broken, config))

print("\nverifying the untouched cover (nothing embedded):")
show(verify(cover, config))
