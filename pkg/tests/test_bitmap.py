import numpy as np
import pytest

from laver.bitmap import BitmapSpec, encode_pbm, parse_range, render, write_bitmap


def test_row_bits_identity_row():
    img = render(BitmapSpec("row-bits", 2, 4, 4))
    assert img.astype(int).tolist() == [[0, 0, 1, 0, 1, 0, 0, 1, 1, 1, 0, 0]]


def test_period_grid_level_two():
    img = render(BitmapSpec("period-grid", 2))
    marks = sorted((int(c) + 1, int(r)) for r, c in np.argwhere(img))
    assert marks == [(1, 1), (2, 1), (3, 0), (4, 2)]


def test_plain_header_and_wrapping():
    data = encode_pbm(render(BitmapSpec("row-bits", 4)))
    lines = data.decode().splitlines()
    assert lines[0] == "P1"
    assert lines[1] == "80 16"
    assert max(len(x) for x in lines[2:]) <= 70


def test_raw_packing():
    img = np.array([[1, 0, 1, 0, 0, 0, 0, 0, 1]], dtype=bool)
    assert encode_pbm(img, raw=True) == b"P4\n9 1\n" + bytes([0b10100000, 0b10000000])


@pytest.mark.parametrize("kind", ["row-bits", "period-grid"])
@pytest.mark.parametrize("raw", [False, True])
def test_byte_determinism(kind, raw, tmp_path):
    spec = BitmapSpec(kind, 5, 3, 20, raw=raw)
    write_bitmap(spec, tmp_path / "a.pbm")
    write_bitmap(spec, tmp_path / "b.pbm")
    assert (tmp_path / "a.pbm").read_bytes() == (tmp_path / "b.pbm").read_bytes()


def test_bad_specs():
    with pytest.raises(ValueError):
        render(BitmapSpec("rows", 2))
    with pytest.raises(ValueError):
        render(BitmapSpec("row-bits", 2, 3, 9))
    with pytest.raises(ValueError):
        parse_range("3-4")
    assert parse_range("2..7") == (2, 7)
