"""Backward algebras B_n and their union B_inf.

B_n lives on 0..2^n - 1 with

    0 \\ x = x,   x \\ (2^n - 1) = x - 1 (x > 0),   x \\ (y - 1) = (x \\ y) \\ (x - 1).

The map v -> 2^n - v carries A'_n onto B_n, and B_n is literally a
subalgebra of B_N for N >= n, so ``bs`` takes no level: it reflects into
the forward kernel at the least level holding both arguments.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .core import (
    TABLE_LEVEL_LIMIT,
    ElementRangeError,
    LaverError,
    check_level,
    get_table,
    star_prime,
)


def _level_for(*values: int) -> int:
    return max(int(v).bit_length() for v in values)


def _check_b(x: int) -> int:
    x = int(x)
    if x < 0:
        raise ElementRangeError(f"B element must be nonnegative, got {x}")
    if x.bit_length() > 62:
        raise ElementRangeError(f"B element {x} does not fit 62 bits")
    return x


def bs(x: int, y: int) -> int:
    """x \\ y in B_inf."""
    x, y = _check_b(x), _check_b(y)
    if x == 0:
        return y
    n = _level_for(x, y)
    top = 1 << n
    return top - star_prime(n, top - x, top - y)


@functools.lru_cache(maxsize=1 << 16)
def b_row(x: int) -> np.ndarray:
    """One period x \\ 0, x \\ 1, ... of a nonzero B element (read-only)."""
    x = _check_b(x)
    if x == 0:
        raise ElementRangeError("row of 0 is the identity; it has no period")
    n = _level_for(x)
    if n > TABLE_LEVEL_LIMIT:
        from .core import _lazy_for

        fwd = np.asarray(_lazy_for(n).row((1 << n) - x), dtype=np.int64)
    else:
        fwd = get_table(n).row((1 << n) - x)
    out = (1 << n) - fwd[::-1]
    out.setflags(write=False)
    return out


def b_period(x: int) -> int:
    """Least positive l with x \\ l = 0; defined for x >= 1 only."""
    return len(b_row(x))


def bs_iter(x: int, r: int) -> int:
    """x \\ x \\ ... \\ x with ``r`` copies of x, grouped from the left."""
    x = _check_b(x)
    if r < 1:
        raise ValueError("r must be at least 1")
    if x == 0:
        return 0
    # equals (x + 1) \ (K - r) for K a multiple of the period of x + 1
    row = b_row(x + 1)
    return int(row[(-r) % len(row)])


@dataclass(frozen=True)
class Subalgebra:
    generator: int
    elements: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, y: object) -> bool:
        return y in self._members

    @functools.cached_property
    def _members(self) -> frozenset[int]:
        return frozenset(self.elements)


def subalg(x: int) -> Subalgebra:
    """<x>, read off the period of x + 1."""
    x = _check_b(x)
    return Subalgebra(x, tuple(int(v) for v in b_row(x + 1)))


def subalg_closure(x: int) -> Subalgebra:
    """<x> by generic closure under bs; slow, kept as a cross-check."""
    x = _check_b(x)
    seen = {x}
    frontier = [x]
    while frontier:
        new = []
        for u in frontier:
            for v in list(seen):
                for w in (bs(u, v), bs(v, u)):
                    if w not in seen:
                        seen.add(w)
                        new.append(w)
        frontier = new
    return Subalgebra(x, tuple(sorted(seen)))


def attains_bound(x: int) -> bool:
    """Whether |<x>| = 2^popcount(x)."""
    return len(b_row(_check_b(x) + 1)) == 1 << bin(x).count("1")


class TemplateError(LaverError, ValueError):
    pass


def template_embed(x: int, v: int) -> int:
    """Scatter the bits of ``v`` into the 1-bit positions of ``x``.

    Defined only when <x> has the maximal size 2^popcount(x); then
    v -> template_embed(x, v) is an isomorphism B_r -> <x>.
    """
    x = _check_b(x)
    r = bin(x).count("1")
    if not 0 <= v < (1 << r):
        raise TemplateError(f"v={v} does not fit in {r} template bits")
    if not attains_bound(x):
        raise TemplateError(f"<{x}> has size {b_period(x + 1)} < 2^{r}")
    out = 0
    pos = 0
    bits = x
    while bits:
        low = bits & -bits
        if (v >> pos) & 1:
            out |= low
        bits ^= low
        pos += 1
    return out


def naive_b_table(n: int) -> np.ndarray:
    """Full B_n table straight from the backward recursion.

    Independent of the forward kernel; used to cross-check the reflection.
    Entry [x, y] is x \\ y.
    """
    n = check_level(n)
    size = 1 << n
    t = np.zeros((size, size), dtype=np.int64)
    t[0] = np.arange(size)
    rows = [list(range(size))]
    for x in range(1, size):
        row = [0] * size
        row[size - 1] = x - 1
        xm = x - 1
        for y in range(size - 1, 0, -1):
            row[y - 1] = rows[row[y]][xm]
        rows.append(row)
        t[x] = row
    return t
