"""Brute-force references that share no code with the package."""

import functools


@functools.cache
def star_prime(n: int, a: int, b: int) -> int:
    """Straight recursion on the three defining clauses of A'_n."""
    top = 1 << n
    if a == top:
        return b
    if b == 1:
        return a + 1
    return star_prime(n, star_prime(n, a, b - 1), a + 1)


def table(n: int) -> list[list[int]]:
    top = 1 << n
    # fill rows top-down so the recursion never nests deeply
    return [[star_prime(n, a, b) for b in range(1, top + 1)] for a in range(top, 0, -1)][::-1]


def period(n: int, a: int) -> int:
    top = 1 << n
    for p in range(1, top + 1):
        if star_prime(n, a, p) == top:
            return p
    raise AssertionError("row never reaches 2^n")


@functools.cache
def b_star(n: int, x: int, y: int) -> int:
    """x \\ y in B_n from its own recursion on y descending."""
    top = 1 << n
    if x == 0:
        return y
    if y == top - 1:
        return x - 1
    return b_star(n, b_star(n, x, y + 1), x - 1)


def closure(op, gens) -> set:
    seen = set(gens)
    while True:
        new = {op(u, v) for u in seen for v in seen} - seen
        if not new:
            return seen
        seen |= new
