"""Constant-bits-per-word storage for skew-tolerant codes.

A code whose consecutive changes stay within k positions is determined by
its first word, the first change, and a stream of per-step records: the
signed offset to the next change position (in [-k, k]) and the value
direction.  Fixed-width records need ceil(log2(2k+1)) + 1 bits; for binary
k=1 the offset is a single bit and the direction is implied, so each step
costs exactly 1 bit.

Container format (``SKTG``): magic, version byte, big-endian header fields,
MSB-first bit stream, and a trailing CRC-32 of everything before it.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass

from .core import Code, Indexing, STANDARD, sym_width, transitions
from .errors import MalformedStream, NotAGrayStep, NotSkewTolerant

_MAGIC = b"SKTG"
_VERSION = 1


class _BitWriter:
    def __init__(self):
        self.buf = bytearray()
        self.acc = 0
        self.fill = 0
        self.bits = 0

    def write(self, value: int, width: int):
        if width == 0:
            return
        self.bits += width
        for shift in range(width - 1, -1, -1):
            self.acc = (self.acc << 1) | ((value >> shift) & 1)
            self.fill += 1
            if self.fill == 8:
                self.buf.append(self.acc)
                self.acc = 0
                self.fill = 0

    def getvalue(self) -> bytes:
        if self.fill:
            return bytes(self.buf) + bytes([self.acc << (8 - self.fill)])
        return bytes(self.buf)


class _BitReader:
    def __init__(self, data: bytes, bits: int):
        self.data = data
        self.bits = bits
        self.pos = 0

    def read(self, width: int) -> int:
        if width == 0:
            return 0
        if self.pos + width > self.bits:
            raise MalformedStream("bit stream truncated")
        value = 0
        for _ in range(width):
            byte = self.data[self.pos >> 3]
            value = (value << 1) | ((byte >> (7 - (self.pos & 7))) & 1)
            self.pos += 1
        return value


def step_record_bits(m: int, k: int) -> int:
    """Bits per step record for alphabet m and skew bound k."""
    if m == 2 and k == 1:
        return 1
    return (2 * k).bit_length() + 1


@dataclass(frozen=True)
class CompressedCode:
    """Parsed compressed form of a code; ``to_bytes`` gives the container."""

    m: int
    n: int
    size: int
    cyclic: bool
    k: int
    left_label: int          # 1 for standard indexing, -L for signed
    payload: bytes           # first word + first transition + step stream
    payload_bits: int

    @property
    def step_count(self) -> int:
        return (self.size - 1 if self.cyclic else self.size - 2) if self.size >= 2 else 0

    @property
    def record_bits(self) -> int:
        return step_record_bits(self.m, self.k)

    @property
    def header_bits(self) -> int:
        return self.payload_bits - self.step_count * self.record_bits

    @property
    def stream_bits(self) -> int:
        return self.step_count * self.record_bits

    def to_bytes(self) -> bytes:
        out = bytearray()
        out += _MAGIC
        out.append(_VERSION)
        out += self.m.to_bytes(2, "big")
        out += self.n.to_bytes(2, "big")
        out += self.size.to_bytes(8, "big")
        flags = (1 if self.cyclic else 0) | (2 if self.left_label < 1 else 0)
        out.append(flags)
        out.append(self.k)
        if self.left_label < 1:
            out += (-self.left_label).to_bytes(2, "big")
        out += self.payload_bits.to_bytes(4, "big")
        out += self.payload
        out += zlib.crc32(bytes(out)).to_bytes(4, "big")
        return bytes(out)

    @classmethod
    def from_bytes(cls, data: bytes) -> "CompressedCode":
        if len(data) < 23 or data[:4] != _MAGIC:
            raise MalformedStream("bad magic")
        if data[4] != _VERSION:
            raise MalformedStream(f"unsupported version {data[4]}")
        if zlib.crc32(data[:-4]) != int.from_bytes(data[-4:], "big"):
            raise MalformedStream("checksum mismatch")
        m = int.from_bytes(data[5:7], "big")
        n = int.from_bytes(data[7:9], "big")
        size = int.from_bytes(data[9:17], "big")
        flags = data[17]
        k = data[18]
        at = 19
        left_label = 1
        if flags & 2:
            left = int.from_bytes(data[at:at + 2], "big")
            at += 2
            left_label = -left
        payload_bits = int.from_bytes(data[at:at + 4], "big")
        at += 4
        payload = data[at:-4]
        if m < 2 or n < 1 or size < 2:
            raise MalformedStream("header out of range")
        if len(payload) != (payload_bits + 7) // 8:
            raise MalformedStream("payload length mismatch")
        return cls(m, n, size, bool(flags & 1), k, left_label, payload, payload_bits)


def compress(code: Code) -> CompressedCode:
    """Compress a code; k is the measured skew bound of its transitions."""
    if code.size < 2:
        raise ValueError("compression needs at least 2 words")
    try:
        ts = transitions(code)
    except NotAGrayStep as exc:
        raise NotSkewTolerant(str(exc)) from exc
    positions = ts.positions
    count = len(positions)
    pairs = count if code.cyclic else count - 1
    k = 0
    for i in range(pairs):
        gap = abs(positions[(i + 1) % count] - positions[i])
        if gap > k:
            k = gap

    w = sym_width(code.m)
    writer = _BitWriter()
    first = code.symbols(0)
    for s in first:
        writer.write(s, w)
    left = code.indexing.left_label
    writer.write(positions[0] - left, 16)  # storage offset of the first change
    writer.write(0 if ts.directions[0] > 0 else 1, 1)

    rbits = step_record_bits(code.m, k)
    if code.m == 2 and k == 1:
        for i in range(1, count):
            writer.write(1 if positions[i] > positions[i - 1] else 0, 1)
    else:
        dbits = (2 * k).bit_length()
        for i in range(1, count):
            writer.write(positions[i] - positions[i - 1] + k, dbits)
            writer.write(0 if ts.directions[i] > 0 else 1, 1)
    assert rbits * (count - 1) + len(first) * w + 17 == writer.bits
    return CompressedCode(code.m, code.n, code.size, code.cyclic, k, left,
                          writer.getvalue(), writer.bits)


def decompress(cc: CompressedCode) -> Code:
    """Rebuild the exact code a CompressedCode was made from."""
    m, n = cc.m, cc.n
    w = sym_width(m)
    mask = (1 << w) - 1
    reader = _BitReader(cc.payload, cc.payload_bits)
    symbols = [reader.read(w) for _ in range(n)]
    if any(s >= m for s in symbols):
        raise MalformedStream("first-word symbol out of range")
    word = 0
    for i, s in enumerate(symbols):
        word |= s << (w * i)
    offset = reader.read(16)
    if offset >= n:
        raise MalformedStream("first change position out of range")
    direction = 1 if reader.read(1) == 0 else -1

    k = cc.k
    binary_k1 = m == 2 and k == 1
    dbits = (2 * k).bit_length()
    words = [word]

    def apply(word: int, off: int, direction: int) -> int:
        shift = w * off
        s = (word >> shift) & mask
        return (word & ~(mask << shift)) | (((s + direction) % m) << shift)

    steps = cc.step_count
    generate = steps - 1 if cc.cyclic else steps  # last cyclic step only closes
    cur = apply(word, offset, direction)
    words.append(cur)
    for i in range(steps):
        if binary_k1:
            delta = 1 if reader.read(1) else -1
            direction = 1
        else:
            delta = reader.read(dbits) - k
            direction = 1 if reader.read(1) == 0 else -1
        offset += delta
        if not 0 <= offset < n:
            raise MalformedStream("change position walked out of range")
        if i < generate:
            cur = apply(cur, offset, direction)
            words.append(cur)
        else:
            if apply(cur, offset, direction) != words[0]:
                raise MalformedStream("cyclic stream does not close on the first word")
    if len(words) != cc.size:
        raise MalformedStream("word count mismatch")
    indexing = STANDARD if cc.left_label == 1 else Indexing(cc.left_label)
    return Code.from_packed(words, n, m, cyclic=cc.cyclic, indexing=indexing)
