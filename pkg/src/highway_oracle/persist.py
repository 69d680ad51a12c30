"""Binary labelling files.

Layout, all integers little-endian::

    b"BHL1" | u32 n | u32 k | k * u32 landmark ids
    | k*k * u32 highway (row-major, 0xFFFFFFFF = unreachable)
    | for each vertex: u32 count, count * (u32 landmark index, u32 distance)
    | u64 FNV-1a of every preceding byte
"""
from __future__ import annotations

import struct
from array import array
from sys import byteorder

from .labelling import INF, HighwayLabelling, LandmarkSet

MAGIC = b"BHL1"
UNREACHABLE = 0xFFFFFFFF

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK = (1 << 64) - 1


class FormatError(ValueError):
    code = "format"


class BadMagic(FormatError):
    code = "bad_magic"


class Truncated(FormatError):
    code = "truncated"


class ChecksumMismatch(FormatError):
    code = "checksum"


def fnv1a64(data: bytes) -> int:
    h = _FNV_OFFSET
    for b in data:
        h = ((h ^ b) * _FNV_PRIME) & _MASK
    return h


def _u32s(values) -> bytes:
    a = array("I", values)
    if a.itemsize != 4:
        a = array("L", values)
    if byteorder != "little":
        a.byteswap()
    return a.tobytes()


def _enc(d) -> int:
    return UNREACHABLE if d == INF else int(d)


def _dec(x: int):
    return INF if x == UNREACHABLE else x


def serialize(lab: HighwayLabelling) -> bytes:
    k = lab.k
    words = [lab.n, k]
    words.extend(lab.landmarks)
    for row in lab.highway:
        words.extend(_enc(d) for d in row)
    for entries in lab.labels:
        words.append(len(entries))
        for i, d in entries:
            words.append(i)
            words.append(d)
    body = MAGIC + _u32s(words)
    return body + struct.pack("<Q", fnv1a64(body))


def deserialize(data: bytes) -> HighwayLabelling:
    if len(data) < 4 or data[:4] != MAGIC:
        raise BadMagic("bad magic")
    if len(data) < 4 + 8 + 8 or (len(data) - 12) % 4:
        raise Truncated("truncated stream")
    body, tail = data[:-8], data[-8:]
    words = array("I")
    if words.itemsize != 4:
        words = array("L")
    words.frombytes(body[4:])
    if byteorder != "little":
        words.byteswap()

    pos = 0

    def take(count: int):
        nonlocal pos
        if pos + count > len(words):
            raise Truncated("truncated stream")
        chunk = words[pos:pos + count]
        pos += count
        return chunk

    n, k = take(2)
    landmark_ids = list(take(k))
    flat = take(k * k)
    highway = [[_dec(x) for x in flat[i * k:(i + 1) * k]] for i in range(k)]
    labels = []
    for _ in range(n):
        (count,) = take(1)
        pairs = take(2 * count)
        labels.append(tuple((pairs[j], pairs[j + 1]) for j in range(0, 2 * count, 2)))
    # a damaged count that overshoots the data is indistinguishable from truncation;
    # anything else that fails the checksum is reported as a checksum mismatch
    (stored,) = struct.unpack("<Q", tail)
    if stored != fnv1a64(body):
        raise ChecksumMismatch("checksum mismatch")
    if pos != len(words):
        raise FormatError("trailing bytes after label section")
    return HighwayLabelling(LandmarkSet(landmark_ids), highway, labels)


def save(lab: HighwayLabelling, path) -> None:
    with open(path, "wb") as fh:
        fh.write(serialize(lab))


def load(path) -> HighwayLabelling:
    with open(path, "rb") as fh:
        return deserialize(fh.read())
