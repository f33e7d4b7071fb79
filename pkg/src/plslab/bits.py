"""Bit-string primitives used by every label format.

Labels are plain '0'/'1' strings.  Every field is self-delimiting:
unsigned values use Elias-gamma (a unary length prefix followed by the
binary payload), signed values are zigzag-mapped first, and opaque
sub-labels are wrapped with a gamma-coded bit length.
"""

MAX_SUM_BITS = 63  # comparison sums are rejected beyond signed 64-bit range


class DecodeError(Exception):
    """Raised when a label bit string cannot be parsed."""


def gamma_encode(n: int) -> str:
    # Elias-gamma for n >= 1: (len-1) zeros, then n in binary.
    if n < 1:
        raise ValueError("gamma code needs n >= 1")
    b = bin(n)[2:]
    return "0" * (len(b) - 1) + b


class BitWriter:
    def __init__(self):
        self._parts = []

    def raw(self, bits: str):
        self._parts.append(bits)

    def uint(self, x: int):
        if x < 0:
            raise ValueError("uint is for nonnegative values")
        self.raw(gamma_encode(x + 1))

    def sint(self, x: int):
        # zigzag: 0, -1, 1, -2, ... -> 0, 1, 2, 3, ...
        self.uint(x * 2 if x >= 0 else -x * 2 - 1)

    def field(self, bits: str):
        self.uint(len(bits))
        self.raw(bits)

    def getvalue(self) -> str:
        return "".join(self._parts)


class BitReader:
    def __init__(self, bits: str):
        self.bits = bits
        self.pos = 0

    def _take(self, k: int) -> str:
        if self.pos + k > len(self.bits):
            raise DecodeError("truncated label")
        out = self.bits[self.pos:self.pos + k]
        self.pos += k
        return out

    def uint(self) -> int:
        bits = self.bits
        i = bits.find("1", self.pos)
        if i < 0:
            raise DecodeError("truncated label")
        zeros = i - self.pos
        if zeros > 128:
            raise DecodeError("overlong gamma prefix")
        end = i + 1 + zeros
        if end > len(bits):
            raise DecodeError("truncated label")
        self.pos = end
        return int(bits[i:end], 2) - 1

    def sint(self) -> int:
        z = self.uint()
        x = (z + 1) // 2 if z % 2 else z // 2
        if z % 2:
            x = -x
        if abs(x) >= 1 << MAX_SUM_BITS:
            raise DecodeError("signed value out of 64-bit range")
        return x

    def field(self) -> str:
        n = self.uint()
        return self._take(n)

    def done(self) -> bool:
        return self.pos == len(self.bits)

    def expect_done(self):
        if not self.done():
            raise DecodeError("trailing bits in label")


def to_hex(bits: str) -> str:
    """Hex dump of a bit string; a marker bit keeps the length exact."""
    padded = bits + "1"
    padded += "0" * (-len(padded) % 4)
    return "%0*x" % (len(padded) // 4, int(padded, 2)) if padded else ""


def from_hex(h: str) -> str:
    if not h:
        raise DecodeError("empty hex field")
    bits = bin(int(h, 16))[2:].zfill(len(h) * 4)
    cut = bits.rfind("1")
    if cut < 0:
        raise DecodeError("missing hex padding marker")
    return bits[:cut]


def bytes_to_bits(data: bytes) -> str:
    return "".join(f"{b:08b}" for b in data)


def bits_to_bytes(bits: str) -> bytes:
    if len(bits) % 8:
        raise DecodeError("bit string is not byte aligned")
    return bytes(int(bits[i:i + 8], 2) for i in range(0, len(bits), 8))
