"""Row-cache file format.

Layout, all integers little-endian::

    b"LAVR1"            5 bytes magic
    n                   1 byte level
    count               8 bytes, number of rows (= 2^n)
    per row a = 1..2^n:
        p_a             8 bytes period length
        a*1 .. a*p_a    p_a x 8 bytes, 1-based values

Nothing in a loaded file is trusted: besides the shape checks every
stored entry is re-derived from the recursion using the other stored
rows, so any single corrupted byte is rejected.
"""

from __future__ import annotations

import os
import struct
from pathlib import Path

import numpy as np

from .core import MAX_LEVEL, CompressedTable, LaverError

MAGIC = b"LAVR1"
_HEADER = struct.Struct("<5sBQ")
_U64 = struct.Struct("<Q")


class CacheFormatError(LaverError, ValueError):
    pass


def dumps(table: CompressedTable) -> bytes:
    parts = [_HEADER.pack(MAGIC, table.n, table.size)]
    vals = table.values.astype("<u8")
    for a in range(table.size):
        start, p = int(table.offsets[a]), int(table.periods[a])
        parts.append(_U64.pack(p))
        parts.append(vals[start:start + p].tobytes())
    return b"".join(parts)


def loads(data: bytes) -> CompressedTable:
    if len(data) < _HEADER.size:
        raise CacheFormatError("file shorter than header")
    magic, n, count = _HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise CacheFormatError(f"bad magic {magic!r}")
    if n > MAX_LEVEL:
        raise CacheFormatError(f"level {n} above {MAX_LEVEL}")
    top = 1 << n
    if count != top:
        raise CacheFormatError(f"row count {count} != 2^{n}")
    pos = _HEADER.size
    periods = np.empty(top, dtype=np.int64)
    chunks = []
    for a in range(1, top + 1):
        if pos + 8 > len(data):
            raise CacheFormatError(f"truncated before period of row {a}")
        (p,) = _U64.unpack_from(data, pos)
        pos += 8
        if p == 0 or p & (p - 1) or p > top:
            raise CacheFormatError(f"row {a}: period {p} is not a power of 2 in 1..{top}")
        end = pos + 8 * p
        if end > len(data):
            raise CacheFormatError(f"truncated inside row {a}")
        row = np.frombuffer(data, dtype="<u8", count=p, offset=pos).astype(np.int64)
        pos = end
        _check_row(n, a, row)
        periods[a - 1] = p
        chunks.append(row)
    if pos != len(data):
        raise CacheFormatError(f"{len(data) - pos} trailing bytes")
    offsets = np.zeros(top, dtype=np.int64)
    np.cumsum(periods[:-1], out=offsets[1:])
    values = np.concatenate(chunks)
    _check_recursion(n, periods, offsets, values)
    for arr in (periods, offsets, values):
        arr.setflags(write=False)
    return CompressedTable(n, periods, offsets, values)


def _check_row(n: int, a: int, row: np.ndarray) -> None:
    top = 1 << n
    if a == top:
        if len(row) != top or not np.array_equal(row, np.arange(1, top + 1)):
            raise CacheFormatError(f"row of 2^{n} is not the identity")
        return
    if row[0] != a + 1:
        raise CacheFormatError(f"row {a} starts at {row[0]}, not {a + 1}")
    if row[-1] != top:
        raise CacheFormatError(f"row {a} period does not end at 2^{n}")
    if len(row) > 1 and not np.all(np.diff(row) > 0):
        raise CacheFormatError(f"row {a} period is not strictly increasing")


def _check_recursion(n, periods, offsets, values) -> None:
    """a * (b + 1) = (a * b) * (a + 1) for every stored entry."""
    top = 1 << n
    for a in range(1, top):
        start, p = int(offsets[a - 1]), int(periods[a - 1])
        row = values[start:start + p]
        prev = row[:-1]
        want = values[offsets[prev - 1] + a % periods[prev - 1]]
        if not np.array_equal(row[1:], want):
            raise CacheFormatError(f"row {a} violates the defining recursion")


def write_cache(table: CompressedTable, path: str | os.PathLike) -> None:
    Path(path).write_bytes(dumps(table))


def read_cache(path: str | os.PathLike) -> CompressedTable:
    return loads(Path(path).read_bytes())
