"""Forward Laver tables A'_n (1-based) and A_n (0-based).

The kernel works on the 1-based algebra A'_n = {1, ..., 2^n}:

    2^n * b = b
    a * 1 = a + 1                      (a < 2^n)
    a * (b + 1) = (a * b) * (a + 1)    (a, b < 2^n)

Every row a * 1, a * 2, ... is periodic and each period climbs strictly
from a + 1 to 2^n, so a row is stored as exactly one period.  Rows are
filled in descending order of a; since a * b > a for a < 2^n, every
lookup made while filling row a lands in a finished row.

A_n is the same algebra with 2^n renamed 0; ``star`` and ``compose`` are
thin 0-based wrappers over the 1-based kernel.
"""

from __future__ import annotations

import functools
import threading
from array import array
from dataclasses import dataclass, field

import numpy as np

MAX_LEVEL = 62
# levels up to this use a cached eager table in "auto" mode
TABLE_LEVEL_LIMIT = 20
DEFAULT_WORK_BUDGET = 50_000_000
DEFAULT_MEMORY_BUDGET = 4 << 30


class LaverError(Exception):
    """Base class for engine errors."""


class LevelError(LaverError, ValueError):
    pass


class ElementRangeError(LaverError, ValueError):
    pass


class BudgetExceeded(LaverError):
    """A work or memory budget ran out; distinct from bad input."""


class AccelMismatch(LaverError):
    """An accelerated row differs from the plain fill.  Always a bug."""


def check_level(n: int) -> int:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise LevelError(f"level must be an integer, got {n!r}")
    n = int(n)
    if not 0 <= n <= MAX_LEVEL:
        raise LevelError(f"level {n} outside 0..{MAX_LEVEL}")
    return n


def _check_prime(n: int, a: int, what: str = "element") -> int:
    a = int(a)
    if not 1 <= a <= (1 << n):
        raise ElementRangeError(f"{what} {a} not in A'_{n} = 1..{1 << n}")
    return a


def _check_zero(n: int, a: int, what: str = "element") -> int:
    a = int(a)
    if not 0 <= a < (1 << n):
        raise ElementRangeError(f"{what} {a} not in A_{n} = 0..{(1 << n) - 1}")
    return a


@dataclass(frozen=True, eq=False)
class CompressedTable:
    """One period of every row of A'_n.

    ``values`` is the concatenation of the stored periods, row a occupying
    ``values[offsets[a-1]:offsets[a-1] + periods[a-1]]``.
    """

    n: int
    periods: np.ndarray
    offsets: np.ndarray
    values: np.ndarray
    accel_rows: int = field(default=0, compare=False)
    # right-multiplications done by the plain fill vs. entries touched by
    # the accelerated fill, both counted over the accelerated rows only
    naive_ops: int = field(default=0, compare=False)
    fast_ops: int = field(default=0, compare=False)

    @property
    def size(self) -> int:
        return 1 << self.n

    def row(self, a: int) -> np.ndarray:
        """Stored period of row ``a`` (1-based), as a read-only view."""
        a = _check_prime(self.n, a)
        start = int(self.offsets[a - 1])
        return self.values[start:start + int(self.periods[a - 1])]

    def period(self, a: int) -> int:
        return int(self.periods[_check_prime(self.n, a) - 1])

    def star(self, a: int, b: int) -> int:
        a = _check_prime(self.n, a)
        b = _check_prime(self.n, b, "argument")
        p = int(self.periods[a - 1])
        return int(self.values[int(self.offsets[a - 1]) + (b - 1) % p])

    def full_row(self, a: int) -> np.ndarray:
        """a * 1, ..., a * 2^n."""
        return np.resize(self.row(a), self.size)

    def full(self) -> np.ndarray:
        """The whole 2^n x 2^n table; entry [a-1, b-1] is a * b."""
        size = self.size
        out = np.empty((size, size), dtype=np.int64)
        cols = np.arange(size)
        for a in range(1, size + 1):
            out[a - 1] = self.row(a)[cols % int(self.periods[a - 1])]
        return out

    def full_zero(self) -> np.ndarray:
        """Multiplication table of A_n with 0-based indices."""
        size = self.size
        t = self.full() % size
        # index 0 stands for 2^n, which sits at the last row/column
        return np.roll(np.roll(t, 1, axis=0), 1, axis=1)

    def rows(self) -> list[list[int]]:
        return [self.row(a).tolist() for a in range(1, self.size + 1)]

    def identical(self, other: CompressedTable) -> bool:
        return (
            self.n == other.n
            and np.array_equal(self.periods, other.periods)
            and np.array_equal(self.values, other.values)
        )


def _fast_row_for(top, a, rows):
    """Accelerated row of ``a`` at level log2(top), or None.

    Works in backward form: c = top - a is a B element whose row is
    assembled blockwise when c - 1 splits as x + 2^(mn)(2^n - 1).
    """
    from .structure import assemble_cor42, cor42_split

    c = top - a
    if c < 2:
        return None

    def b_period(e):
        return len(rows[top - e])

    split = cor42_split(c - 1, b_period)
    if split is None:
        return None
    x, m, n, _l = split
    base_a = rows[top - (x + 1)]
    base = [top - v for v in reversed(base_a)]
    brow = assemble_cor42(base, m, n)
    return [top - v for v in reversed(brow)], len(base)


def build_table(
    n: int,
    accel: bool = False,
    *,
    verify_accel: bool = False,
    memory_budget: int = DEFAULT_MEMORY_BUDGET,
) -> CompressedTable:
    """Period-compressed table of A'_n.

    With ``accel``, rows of elements whose backward image admits a
    block decomposition are assembled from a smaller row instead of by
    repeated right-multiplication.  ``verify_accel`` recomputes those rows
    the slow way and raises AccelMismatch on any difference.
    """
    n = check_level(n)
    top = 1 << n
    # per-row list overhead is ignored; 8 bytes per stored entry
    if top * 16 > memory_budget:
        raise BudgetExceeded(f"level {n}: row index alone exceeds memory budget")
    rows: list = [None] * (top + 1)
    rows[top] = array("q", range(1, top + 1))
    stored = top
    accel_rows = naive_ops = fast_ops = 0
    for a in range(top - 1, 0, -1):
        row = None
        if accel:
            fast = _fast_row_for(top, a, rows)
            if fast is not None:
                row, base_len = fast
                accel_rows += 1
                naive_ops += len(row)
                fast_ops += base_len + len(row) // base_len
        if row is None or verify_accel:
            plain = [a + 1]
            nxt = a  # row index b - 1 for b = a + 1
            while plain[-1] != top:
                prev = rows[plain[-1]]
                plain.append(prev[nxt % len(prev)])
            if row is not None and row != plain:
                raise AccelMismatch(f"level {n}, row {a}: accelerated row differs")
            row = plain
        rows[a] = array("q", row)
        stored += len(row)
        if stored * 8 > memory_budget:
            raise BudgetExceeded(
                f"level {n}: {stored} stored entries exceed {memory_budget} bytes"
            )
    periods = np.fromiter((len(rows[a]) for a in range(1, top + 1)), np.int64, top)
    offsets = np.zeros(top, dtype=np.int64)
    np.cumsum(periods[:-1], out=offsets[1:])
    values = np.concatenate([np.frombuffer(rows[a], dtype=np.int64) for a in range(1, top + 1)])
    for arr in (periods, offsets, values):
        arr.setflags(write=False)
    return CompressedTable(n, periods, offsets, values, accel_rows, naive_ops, fast_ops)


@functools.lru_cache(maxsize=None)
def get_table(n: int) -> CompressedTable:
    """Shared immutable table for level ``n`` (built once)."""
    n = check_level(n)
    if n > TABLE_LEVEL_LIMIT:
        raise BudgetExceeded(f"level {n} above cached-table limit {TABLE_LEVEL_LIMIT}")
    return build_table(n)


class LazyAlgebra:
    """A'_n with rows computed on demand, for levels too big to tabulate.

    Rows are memoized; ``budget`` caps the total number of row entries
    ever computed.  Inserts are serialized and a row never changes once
    stored.
    """

    def __init__(self, n: int, budget: int = DEFAULT_WORK_BUDGET):
        self.n = check_level(n)
        self.top = 1 << self.n
        self.budget = budget
        self.work = 0
        self._rows: dict[int, list[int]] = {}
        self._lock = threading.Lock()

    def row(self, a: int) -> list[int]:
        a = _check_prime(self.n, a)
        top = self.top
        if a == top:
            raise ElementRangeError("row of 2^n is the identity and is not materialized")
        rows = self._rows
        if a in rows:
            return rows[a]
        # explicit stack: each frame is a partially built row
        stack = [(a, [a + 1])]
        while stack:
            cur, partial = stack[-1]
            last = partial[-1]
            while last != top:
                prev = rows.get(last)
                if prev is None:
                    stack.append((last, [last + 1]))
                    break
                partial.append(prev[cur % len(prev)])
                last = partial[-1]
                self.work += 1
                if self.work > self.budget:
                    raise BudgetExceeded(
                        f"level {self.n}: naive work budget {self.budget} exhausted"
                    )
            else:
                with self._lock:
                    rows.setdefault(cur, partial)
                stack.pop()
        return rows[a]

    def period(self, a: int) -> int:
        a = _check_prime(self.n, a)
        return self.top if a == self.top else len(self.row(a))

    def star(self, a: int, b: int) -> int:
        a = _check_prime(self.n, a)
        b = _check_prime(self.n, b, "argument")
        if a == self.top:
            return b
        r = self.row(a)
        return r[(b - 1) % len(r)]


_lazy: dict[int, LazyAlgebra] = {}
_lazy_lock = threading.Lock()


def _lazy_for(n: int) -> LazyAlgebra:
    with _lazy_lock:
        alg = _lazy.get(n)
        if alg is None:
            alg = _lazy[n] = LazyAlgebra(n)
        return alg


def _engine(n: int, mode: str):
    if mode == "auto":
        mode = "table" if n <= TABLE_LEVEL_LIMIT else "naive"
    if mode == "table":
        return get_table(n)
    if mode == "naive":
        return _lazy_for(n)
    raise ValueError(f"unknown mode {mode!r}")


def star_prime(n: int, a: int, b: int, *, mode: str = "auto") -> int:
    """a *_n b in A'_n (elements 1..2^n)."""
    n = check_level(n)
    a = _check_prime(n, a)
    b = _check_prime(n, b, "argument")
    return _engine(n, mode).star(a, b)


def star(n: int, a: int, b: int, *, mode: str = "auto") -> int:
    """a *_n b in A_n (elements 0..2^n - 1, with 0 standing for 2^n)."""
    n = check_level(n)
    top = 1 << n
    a = _check_zero(n, a)
    b = _check_zero(n, b, "argument")
    return star_prime(n, a or top, b or top, mode=mode) % top


def compose(n: int, a: int, b: int, *, mode: str = "auto") -> int:
    """a o_n b = (a *_n (b + 1)) - 1, arithmetic mod 2^n."""
    n = check_level(n)
    top = 1 << n
    a = _check_zero(n, a)
    b = _check_zero(n, b, "argument")
    return (star(n, a, (b + 1) % top, mode=mode) - 1) % top


def period_length(n: int, a: int, *, mode: str = "auto") -> int:
    """Least p with a *_n p = 2^n."""
    n = check_level(n)
    a = _check_prime(n, a)
    return _engine(n, mode).period(a)


def mod_plus(value: int, n: int) -> int:
    """Representative of ``value`` mod 2^n in 1..2^n."""
    return ((value - 1) % (1 << n)) + 1


def reduce_mod(N: int, n: int, a: int) -> int:
    N = check_level(N)
    n = check_level(n)
    if n > N:
        raise LevelError(f"cannot reduce from level {N} to higher level {n}")
    return mod_plus(_check_prime(N, a), n)


def lift_shift(n: int, a: int) -> int:
    """a + 2^n, the embedding of A'_n into A'_{n+1}."""
    n = check_level(n)
    if n + 1 > MAX_LEVEL:
        raise LevelError(f"level {n + 1} outside 0..{MAX_LEVEL}")
    return _check_prime(n, a) + (1 << n)
