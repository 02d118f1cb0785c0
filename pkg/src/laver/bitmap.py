"""PBM renderings of forward tables.

``row-bits``: one image row per table row a in the range; each entry
a * b (b = 1..2^n) contributes n + 1 pixels, its binary digits MSB first.

``period-grid``: one column per a in the range and n + 1 image rows;
pixel (column a - lo, row log2 p_a) is set.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import check_level, get_table

KINDS = ("row-bits", "period-grid")


@dataclass(frozen=True)
class BitmapSpec:
    kind: str
    n: int
    lo: int = 1
    hi: int | None = None
    raw: bool = False

    def bounds(self) -> tuple[int, int]:
        top = 1 << self.n
        hi = top if self.hi is None else self.hi
        if not 1 <= self.lo <= hi <= top:
            raise ValueError(f"range {self.lo}..{hi} not inside 1..{top}")
        return self.lo, hi


def parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ValueError(f"range must look like LO..HI, got {text!r}")
    return int(lo), int(hi)


def render(spec: BitmapSpec) -> np.ndarray:
    """Boolean pixel array, True = black."""
    if spec.kind not in KINDS:
        raise ValueError(f"unknown bitmap kind {spec.kind!r}")
    n = check_level(spec.n)
    lo, hi = spec.bounds()
    table = get_table(n)
    if spec.kind == "period-grid":
        img = np.zeros((n + 1, hi - lo + 1), dtype=bool)
        logs = np.log2(table.periods[lo - 1:hi]).astype(np.int64)
        img[logs, np.arange(hi - lo + 1)] = True
        return img
    shifts = np.arange(n, -1, -1)
    rows = np.stack([table.full_row(a) for a in range(lo, hi + 1)])
    bits = (rows[:, :, None] >> shifts) & 1
    return bits.reshape(len(rows), -1).astype(bool)


def encode_pbm(img: np.ndarray, raw: bool = False) -> bytes:
    h, w = img.shape
    header = f"{'P4' if raw else 'P1'}\n{w} {h}\n".encode()
    if raw:
        return header + np.packbits(img, axis=1).tobytes()
    lines = []
    for row in img.astype(np.uint8):
        digits = "".join(map(str, row))
        lines.extend(digits[i:i + 70] for i in range(0, len(digits), 70))
    return header + ("\n".join(lines) + "\n").encode()


def write_bitmap(spec: BitmapSpec, path: str | os.PathLike) -> int:
    data = encode_pbm(render(spec), spec.raw)
    Path(path).write_bytes(data)
    return len(data)
