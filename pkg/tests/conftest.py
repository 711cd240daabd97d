import numpy as np
import pytest

from stegoseal import GrayImage


@pytest.fixture
def cover():
    """A deterministic random 256x256 cover image."""
    rng = np.random.default_rng(0xC0FFEE)
    return GrayImage(256, 256, rng.integers(0, 256, 256 * 256, dtype=np.uint8))


def make_cover(seed, width=256, height=256):
    rng = np.random.default_rng(seed)
    return GrayImage(width, height, rng.integers(0, 256, width * height, dtype=np.uint8))
