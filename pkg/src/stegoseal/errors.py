"""Exception hierarchy shared by all stegoseal modules.

Everything raised on a bad input derives from StegosealError, so callers
that must never crash on untrusted data (the verifier, the CLI) can catch
one base class.
"""


class StegosealError(Exception):
    """Base class for all errors raised by this package."""


# --- ciphers ---------------------------------------------------------------

class NotInvertible(StegosealError):
    """Hill key matrix has no inverse mod 26 (gcd(det, 26) != 1)."""


class EmptyInput(StegosealError):
    """Nothing left to encrypt after normalization."""


class BadLength(StegosealError):
    """Sequence length does not match what the operation requires."""


# --- payload block ---------------------------------------------------------

class RowOverflow(StegosealError):
    """A payload row does not fit in the configured row length."""

    def __init__(self, row, actual, limit):
        super().__init__(f"row {row}: {actual} bytes exceeds row length {limit}")
        self.row = row
        self.actual = actual
        self.limit = limit


class NulInPayload(RowOverflow):
    """A payload row contains byte 0, which is reserved for padding."""

    def __init__(self, row):
        StegosealError.__init__(self, f"row {row} contains a NUL byte")
        self.row = row
        self.actual = None
        self.limit = None


class MalformedBlock(StegosealError):
    """Payload block does not have the expected 3-row structure."""


class BadShape(StegosealError):
    """Matrix or tile sequence has the wrong dimensions."""


# --- entropy coding --------------------------------------------------------

class EmptyAlphabet(StegosealError):
    """Huffman table requested for zero symbols."""


class UnknownSymbol(StegosealError):
    """Symbol to encode has no codeword in the table."""


class CorruptHeader(StegosealError):
    """Encoded stream header cannot be parsed or is not canonical."""


class TruncatedStream(StegosealError):
    """Payload bits end before the declared symbol count is reached."""


class DanglingBits(StegosealError):
    """Bits or bytes remain after the declared symbol count was decoded."""


# --- PGM images ------------------------------------------------------------

class BadMagic(StegosealError):
    """Input is not a binary (P5) PGM file."""


class BadMaxval(StegosealError):
    """PGM maxval is not 255."""


class MalformedHeader(StegosealError):
    """PGM header tokens are missing or not integers."""


class TruncatedPixels(StegosealError):
    """Fewer pixel bytes than the header declares."""


class TrailingData(StegosealError):
    """Bytes remain after the declared pixel count."""


# --- embedding -------------------------------------------------------------

class CapacityExceeded(StegosealError):
    """Payload does not fit in the cover image."""

    def __init__(self, needed, available):
        super().__init__(f"payload needs {needed} bytes, image holds {available}")
        self.needed = needed
        self.available = available


# --- pipeline --------------------------------------------------------------

class OutOfRange(StegosealError):
    """Pixel index or bit position outside the image."""


class EmptyMessage(StegosealError):
    """Refused to seal an empty message."""
