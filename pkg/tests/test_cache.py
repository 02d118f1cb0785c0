import struct

import pytest
from hypothesis import given
from hypothesis import strategies as st

from laver.cache import MAGIC, CacheFormatError, dumps, loads, read_cache, write_cache
from laver.core import get_table


def test_layout_of_level_one():
    data = dumps(get_table(1))
    want = MAGIC + bytes([1]) + struct.pack("<Q", 2)
    want += struct.pack("<QQ", 1, 2)          # row 1: period 1, value 2
    want += struct.pack("<QQQ", 2, 1, 2)      # row 2: identity
    assert data == want


@pytest.mark.parametrize("n", range(0, 13))
def test_round_trip(n, tmp_path):
    tab = get_table(n)
    path = tmp_path / "t.lavr"
    write_cache(tab, path)
    back = read_cache(path)
    assert back.identical(tab)
    assert path.read_bytes() == dumps(back)


@pytest.mark.parametrize("n", range(0, 6))
def test_every_bit_flip_rejected(n):
    data = dumps(get_table(n))
    for pos in range(len(data)):
        for bit in range(8):
            bad = bytearray(data)
            bad[pos] ^= 1 << bit
            with pytest.raises(CacheFormatError):
                loads(bytes(bad))


@given(st.integers(6, 10), st.data())
def test_random_byte_corruption_rejected(n, data):
    raw = dumps(get_table(n))
    pos = data.draw(st.integers(0, len(raw) - 1))
    val = data.draw(st.integers(0, 255).filter(lambda v: v != raw[pos]))
    bad = bytearray(raw)
    bad[pos] = val
    with pytest.raises(CacheFormatError):
        loads(bytes(bad))


@pytest.mark.parametrize("mutate,msg", [
    (lambda d: d[:3], "shorter"),
    (lambda d: b"LAVR2" + d[5:], "magic"),
    (lambda d: d + b"\0", "trailing"),
    (lambda d: d[:-8], "truncated"),
    (lambda d: d[:5] + bytes([63]) + d[6:], "level"),
])
def test_structural_errors(mutate, msg):
    with pytest.raises(CacheFormatError, match=msg):
        loads(mutate(dumps(get_table(3))))


def test_swapped_rows_rejected():
    # two rows of equal period swapped keep every per-row shape check happy
    tab = get_table(4)
    data = bytearray(dumps(tab))
    # rows 5 and 6 both have period 4, so the byte ranges line up
    start5 = 14 + sum(8 + 8 * tab.period(a) for a in range(1, 5))
    size = 8 + 8 * 4
    r5, r6 = data[start5:start5 + size], data[start5 + size:start5 + 2 * size]
    data[start5:start5 + 2 * size] = r6 + r5
    with pytest.raises(CacheFormatError):
        loads(bytes(data))
