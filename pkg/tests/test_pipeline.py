import random
import string

import numpy as np
import pytest

from stegoseal.errors import (CapacityExceeded, EmptyMessage, OutOfRange,
                              RowOverflow)
from stegoseal.pgm import GrayImage
from stegoseal.pipeline import (TAMPERED, UNDECODABLE, VERIFIED, SealConfig,
                                parse_key_text, seal, tamper, verify)
from stegoseal.stego import LSB1, OVERWRITE, capacity, extract

from conftest import make_cover

PAPER_MESSAGE = "I'm so proud to be Egyptian"


def paper_config(**overrides):
    return SealConfig(caesar_key=16, **overrides)


def stream_length(image, mode=OVERWRITE):
    from stegoseal.entropy import decode_prefix
    data = extract(image, capacity(image, mode), mode)
    _, _, consumed = decode_prefix(data)
    return consumed


# --- seal ----------------------------------------------------------------


def test_seal_and_verify_paper_example(cover):
    sealed = seal(PAPER_MESSAGE, paper_config(), cover)
    report = verify(sealed, paper_config())
    assert report.verdict == VERIFIED
    assert report.recovered_message == PAPER_MESSAGE
    assert report.embedded_digest == report.recomputed_digest
    assert report.reason == ""


def test_seal_is_deterministic(cover):
    a = seal(PAPER_MESSAGE, paper_config(), cover)
    b = seal(PAPER_MESSAGE, paper_config(), cover)
    assert a == b


def test_seal_rejects_empty_message(cover):
    with pytest.raises(EmptyMessage):
        seal("", paper_config(), cover)


def test_seal_message_too_long_for_row(cover):
    with pytest.raises(RowOverflow):
        seal("x" * 4000, paper_config(), cover)


def test_seal_requires_key(cover):
    with pytest.raises(ValueError):
        seal("hi", SealConfig(), cover)


def test_seal_too_small_cover():
    tiny = GrayImage(8, 8, bytes(64))
    with pytest.raises(CapacityExceeded):
        seal(PAPER_MESSAGE, paper_config(), tiny)


def test_seal_rejects_lossy_scale(cover):
    with pytest.raises(ValueError):
        seal(PAPER_MESSAGE, paper_config(quant_scale=1), cover)


def test_config_validation():
    with pytest.raises(ValueError):
        SealConfig(cipher="rot13").validate()
    with pytest.raises(ValueError):
        SealConfig(caesar_key=26).validate()
    with pytest.raises(ValueError):
        SealConfig(caesar_key=3, hill_key=np.eye(3, dtype=int)).validate()
    with pytest.raises(ValueError):
        SealConfig(row_length=100).validate()  # 300 bytes does not tile
    from stegoseal.errors import NotInvertible
    with pytest.raises(NotInvertible):
        SealConfig(cipher="hill", hill_key=2 * np.eye(3, dtype=int)).validate()


# --- verify --------------------------------------------------------------


def test_verify_round_trip_mixed_configs():
    rng = random.Random(1)
    chars = string.ascii_letters + string.digits + " .,!?'-"
    for i in range(200):
        cover = make_cover(1000 + i, 128, 128)
        mode = OVERWRITE if i % 2 else LSB1
        algorithm = "sha256" if i % 3 == 0 else "sha512"
        if i % 4 == 0:
            key = random_hill_key(rng)
            config = SealConfig(cipher="hill", hill_key=key, embed_mode=mode,
                                digest_algorithm=algorithm)
            message = "".join(rng.choice(string.ascii_uppercase)
                              for _ in range(rng.randint(1, 100)))
            expected = message
        else:
            config = SealConfig(caesar_key=rng.randrange(26), embed_mode=mode,
                                digest_algorithm=algorithm)
            message = "".join(rng.choice(chars) for _ in range(rng.randint(1, 120)))
            expected = message
        report = verify(seal(message, config, cover), config)
        assert report.verdict == VERIFIED, report.reason
        assert report.recovered_message == expected


def random_hill_key(rng):
    from math import gcd
    while True:
        k = np.array([[rng.randrange(26) for _ in range(3)] for _ in range(3)])
        if gcd(int(round(np.linalg.det(k))) % 26, 26) == 1:
            return k


def test_verify_untouched_cover(cover):
    report = verify(cover, paper_config())
    assert report.verdict == UNDECODABLE
    assert report.recovered_message == ""


def test_verify_without_key(cover):
    sealed = seal(PAPER_MESSAGE, paper_config(), cover)
    report = verify(sealed, SealConfig())
    assert report.verdict == VERIFIED
    assert report.recovered_message == PAPER_MESSAGE


def test_verify_infers_digest_algorithm(cover):
    sealed = seal("short", paper_config(digest_algorithm="sha256"), cover)
    report = verify(sealed, SealConfig())
    assert report.verdict == VERIFIED


def test_verify_key_cross_check(cover):
    sealed = seal(PAPER_MESSAGE, paper_config(), cover)
    wrong = verify(sealed, SealConfig(caesar_key=15))
    assert wrong.verdict == TAMPERED
    assert "key" in wrong.reason


def test_verify_hill_round_trip(cover):
    key = [[6, 24, 1], [13, 16, 10], [20, 17, 15]]
    config = SealConfig(cipher="hill", hill_key=key)
    for message, expected in [
        ("HELLO", "HELLO"),          # pad 1
        ("FOXES", "FOXES"),          # pad 1 after a legit letter
        ("SIXX", "SIXX"),            # message ends in X, pad 2
        ("Attack at dawn!", "ATTACKATDAWN"),
        ("ARMY", "ARMY"),
    ]:
        report = verify(seal(message, config, cover), config)
        assert report.verdict == VERIFIED, report.reason
        assert report.recovered_message == expected


def test_verify_single_bit_flips_sample(cover):
    sealed = seal(PAPER_MESSAGE, paper_config(), cover)
    n = stream_length(sealed)
    rng = random.Random(2)
    for _ in range(60):
        pixel = rng.randrange(n)
        bit = rng.randrange(8)
        report = verify(tamper(sealed, pixel, bit), paper_config())
        assert report.verdict in (TAMPERED, UNDECODABLE)


def test_verify_locality_outside_flips(cover):
    sealed = seal(PAPER_MESSAGE, paper_config(), cover)
    n = stream_length(sealed)
    total = sealed.width * sealed.height
    rng = random.Random(3)
    for _ in range(1000):
        pixel = rng.randrange(n, total)
        report = verify(tamper(sealed, pixel, rng.randrange(8)), paper_config())
        assert report.verdict == VERIFIED


def test_verify_lsb1_locality(cover):
    config = paper_config(embed_mode=LSB1)
    sealed = seal(PAPER_MESSAGE, config, cover)
    n = stream_length(sealed, LSB1)
    rng = random.Random(4)
    # bits above the LSB never matter, nor do pixels past the region
    for _ in range(300):
        pixel = rng.randrange(8 * n)
        report = verify(tamper(sealed, pixel, rng.randrange(1, 8)), config)
        assert report.verdict == VERIFIED
    for _ in range(300):
        pixel = rng.randrange(8 * n, sealed.width * sealed.height)
        report = verify(tamper(sealed, pixel, rng.randrange(8)), config)
        assert report.verdict == VERIFIED


def test_verify_lsb1_flips_inside_region(cover):
    config = paper_config(embed_mode=LSB1)
    sealed = seal(PAPER_MESSAGE, config, cover)
    n = stream_length(sealed, LSB1)
    rng = random.Random(5)
    for _ in range(60):
        report = verify(tamper(sealed, rng.randrange(8 * n), 0), config)
        assert report.verdict in (TAMPERED, UNDECODABLE)


def test_verify_never_raises_on_noise():
    rng = np.random.default_rng(6)
    for i in range(50):
        noise = GrayImage(64, 64, rng.integers(0, 256, 64 * 64, dtype=np.uint8))
        report = verify(noise, SealConfig())
        assert report.verdict == UNDECODABLE


def test_verify_forged_stream_header_is_undecodable(cover):
    # a stream-looking prefix that decodes but carries no valid block
    forged = cover.pixels.ravel().copy()
    forged[0] = 0x48
    forged[1:3] = (0, 1)      # one table entry
    forged[3:5] = (5, 1)      # symbol 5, code length 1
    forged[5:9] = (0, 0, 0, 64)   # 64 symbols
    forged[9:17] = 0          # 64 zero bits decode to 64 copies of symbol 5
    img = GrayImage(cover.width, cover.height, forged)
    assert verify(img, SealConfig()).verdict == UNDECODABLE


# --- tamper --------------------------------------------------------------


def test_tamper_is_involution(cover):
    once = tamper(cover, 1000, 3)
    assert once != cover
    assert tamper(once, 1000, 3) == cover


def test_tamper_bit0_changes_by_one(cover):
    out = tamper(cover, 0, 0)
    delta = int(out.pixels.ravel()[0]) - int(cover.pixels.ravel()[0])
    assert abs(delta) == 1
    assert np.count_nonzero(out.pixels != cover.pixels) == 1


def test_tamper_out_of_range(cover):
    with pytest.raises(OutOfRange):
        tamper(cover, 65536, 0)
    with pytest.raises(OutOfRange):
        tamper(cover, 0, 8)
    with pytest.raises(OutOfRange):
        tamper(cover, -1, 0)


# --- key row parsing -------------------------------------------------------


def test_parse_key_text():
    assert parse_key_text("16") == ("caesar", 16)
    kind, key = parse_key_text("1,2,3,4,5,6,7,8,9")
    assert kind == "hill"
    assert np.array_equal(key, np.arange(1, 10).reshape(3, 3))


def test_parse_key_text_errors():
    from stegoseal.errors import MalformedBlock
    for bad in ("", "abc", "26", "1,2,3", "1,2,3,4,5,6,7,8,x", "1,2,3,4,5,6,7,8,99"):
        with pytest.raises(MalformedBlock):
            parse_key_text(bad)
