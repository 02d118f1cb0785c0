"""Formal critical points over residue towers.

An element k of the free one-generator LD algebra is known here only
through its images k mod 2^n in A_n, n = 0..cap.  On top of that:

    crit k >= gamma_n        iff  k mod 2^n = 0
    k(gamma_m) >= gamma_n    iff  period of k mod 2^n in A_n is <= 2^m
                             iff  (k * j_{2^m}) mod 2^n = 0
    k ==_{gamma_n} k'        iff  k mod 2^n = k' mod 2^n

"Largest n" answers are capped: when the relation still holds at the cap
the answer is ABOVE_CAP, which says nothing about higher levels.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Union

from .core import check_level, compose, get_table, star


class Marker(enum.Enum):
    ABOVE_CAP = "ABOVE_CAP"

    def __repr__(self) -> str:
        return self.value

    __str__ = __repr__


ABOVE_CAP = Marker.ABOVE_CAP
GammaIndex = Union[int, Marker]


class CapError(ValueError):
    pass


@dataclass(frozen=True)
class ResidueVector:
    """k mod 2^n for every n <= cap (0-based residues)."""

    cap: int
    residues: tuple[int, ...]

    def __post_init__(self):
        check_level(self.cap)
        if len(self.residues) != self.cap + 1:
            raise ValueError(f"need {self.cap + 1} residues, got {len(self.residues)}")
        for n, r in enumerate(self.residues):
            if not 0 <= r < 1 << n:
                raise ValueError(f"residue {r} out of range at level {n}")
            if n and self.residues[n - 1] != r % (1 << (n - 1)):
                raise ValueError(f"residues incompatible between levels {n - 1} and {n}")

    @classmethod
    def from_value(cls, value: int, cap: int) -> ResidueVector:
        return cls(cap, tuple(value % (1 << n) for n in range(cap + 1)))

    @property
    def top(self) -> int:
        return self.residues[self.cap]

    def __getitem__(self, n: int) -> int:
        return self.residues[n]

    def apply(self, other: ResidueVector) -> ResidueVector:
        """Levelwise image of k(i)."""
        cap = min(self.cap, other.cap)
        return ResidueVector(cap, tuple(star(n, self[n], other[n]) for n in range(cap + 1)))

    def compose(self, other: ResidueVector) -> ResidueVector:
        cap = min(self.cap, other.cap)
        return ResidueVector(cap, tuple(compose(n, self[n], other[n]) for n in range(cap + 1)))

    def truncate(self, cap: int) -> ResidueVector:
        return ResidueVector(cap, self.residues[:cap + 1])


def _need(k: ResidueVector, n: int) -> None:
    if not 0 <= n <= k.cap:
        raise CapError(f"level {n} outside 0..{k.cap}")


def period_zero_based(n: int, r: int) -> int:
    """Period of the A_n element r (0 standing for 2^n)."""
    return get_table(n).period(r or (1 << n))


def crit_ge(k: ResidueVector, n: int) -> bool:
    _need(k, n)
    return k[n] == 0


def crit_index(k: ResidueVector) -> GammaIndex:
    if k.top == 0:
        return ABOVE_CAP
    return max(n for n in range(k.cap + 1) if k[n] == 0)


def gamma_image_ge(k: ResidueVector, m: int, n: int) -> bool:
    _need(k, n)
    if m < 0:
        raise ValueError("m must be nonnegative")
    return m >= n or period_zero_based(n, k[n]) <= 1 << m


def gamma_image_ge_by_product(k: ResidueVector, m: int, n: int) -> bool:
    """Same relation through (k * j_{2^m}) mod 2^n = 0."""
    _need(k, n)
    return star(n, k[n], (1 << m) % (1 << n)) == 0


def gamma_image(k: ResidueVector, m: int) -> GammaIndex:
    # the relation is downward closed in n (reduction is a homomorphism)
    best = 0
    for n in range(k.cap + 1):
        if not gamma_image_ge(k, m, n):
            return best
        best = n
    return ABOVE_CAP


def gamma0_from_bits(k: ResidueVector) -> GammaIndex:
    """Position of the rightmost 0 bit of k mod 2^cap."""
    r = k.top
    pos = ((r + 1) & ~r).bit_length() - 1
    return pos if pos < k.cap else ABOVE_CAP


def zero_bit_check(k: ResidueVector, m: int, n: int) -> bool:
    """If k(gamma_m) = gamma_n then bit n of k mod 2^N is 0 for n < N <= cap."""
    if not isinstance(n, int) or n >= k.cap:
        raise CapError(f"need a determinate n below cap {k.cap}, got {n!r}")
    if gamma_image(k, m) != n:
        raise ValueError(f"k(gamma_{m}) is {gamma_image(k, m)!r}, not gamma_{n}")
    return all(not (k[N] >> n) & 1 for N in range(n + 1, k.cap + 1))


def lequiv(k: ResidueVector, k2: ResidueVector, n: int) -> bool:
    _need(k, n)
    _need(k2, n)
    return k[n] == k2[n]


# ---- property suites over families of residue towers ----------------------

def _products(ks: list[ResidueVector]):
    app = {(k, i): k.apply(i) for k in ks for i in ks}
    comp = {(k, i): k.compose(i) for k in ks for i in ks}
    return app, comp


def _ge_table(ks: list[ResidueVector], cap: int):
    return {k: [[gamma_image_ge(k, m, n) for n in range(cap + 1)] for m in range(cap + 1)]
            for k in ks}


def check_prop23(ks: Iterable[ResidueVector], cap: int):
    """The four crit/gamma bullets over all k, i in ``ks``; yields counterexamples."""
    ks = sorted({k.truncate(cap) for k in ks}, key=lambda k: k.top)
    ge = _ge_table(ks, cap)
    app, _ = _products(ks)
    for k in ks:
        g = ge[k]
        for m in range(cap):
            # crit k >= gamma_{m+1}  iff  not k(gamma_m) >= gamma_{m+1}
            if crit_ge(k, m + 1) == g[m][m + 1]:
                yield ("bullet4", k.top, m)
        for n in range(cap):
            for m in range(cap):
                if g[n][m] and not g[n + 1][m + 1]:
                    yield ("bullet1", k.top, n, m)
    for k in ks:
        g = ge[k]
        for i in ks:
            ki = app[k, i]
            for n in range(cap + 1):
                for m in range(cap + 1):
                    if crit_ge(i, n) and g[n][m] and not crit_ge(ki, m):
                        yield ("bullet2", k.top, i.top, n, m)
                    if (n < cap and m < cap and not crit_ge(i, n + 1)
                            and not g[n][m + 1] and crit_ge(ki, m + 1)):
                        yield ("bullet3", k.top, i.top, n, m)


def check_prop24(ks: Iterable[ResidueVector], cap: int):
    """The five agreement bullets; equivalent elements are grouped per level."""
    ks = sorted({k.truncate(cap) for k in ks}, key=lambda k: k.top)
    ge = _ge_table(ks, cap)
    app, comp = _products(ks)
    for n in range(cap + 1):
        groups: dict[int, list[ResidueVector]] = {}
        for k in ks:
            groups.setdefault(k[n], []).append(k)
        for r, group in groups.items():
            # bullet 1: grouping by residue is an equivalence by construction;
            # check that lequiv agrees with the grouping
            if not all(lequiv(group[0], k, n) for k in group):
                yield ("bullet1", r, n)
            for m in range(cap + 1):
                if len({ge[k][m][n] for k in group}) > 1:
                    yield ("bullet2", r, n, m)
            for i in ks:
                for name, vals in (("k*i", {app[k, i][n] for k in group}),
                                   ("k o i", {comp[k, i][n] for k in group}),
                                   ("i o k", {comp[i, k][n] for k in group})):
                    if len(vals) > 1:
                        yield ("bullet3", name, r, i.top, n)
                for m in range(cap + 1):
                    if ge[i][n][m] and len({app[i, k][m] for k in group}) > 1:
                        yield ("bullet4", r, i.top, n, m)
        for i in ks:
            if crit_ge(i, n):
                for k in ks:
                    if k[n] != app[i, k][n]:
                        yield ("bullet5", k.top, i.top, n)


def check_gamma_definitions(n_max: int):
    """Period form vs product form of k(gamma_m) >= gamma_n for every residue."""
    for n in range(n_max + 1):
        for r in range(1 << n):
            k = ResidueVector.from_value(r, n)
            for m in range(n + 2):
                if gamma_image_ge(k, m, n) != gamma_image_ge_by_product(k, m, n):
                    yield (r, m, n)
