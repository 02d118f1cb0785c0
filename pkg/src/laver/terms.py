"""One-generator LD terms and their images in A_n / P_n.

Grammar for the text form::

    term   := factor (('*' | 'o') factor)*     left-associative
    factor := 'j' | '(' term ')'

``*`` is application and ``o`` is composition; both share one precedence
level, so ``j*j*j`` means ``(j*j)*j``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Iterator

from .core import BudgetExceeded, check_level, compose, star
from .sweep import SweepResult
from .crit import ABOVE_CAP, GammaIndex, ResidueVector, crit_index, gamma_image, gamma_image_ge, lequiv

GEN, APPLY, COMPOSE = "j", "*", "o"


@dataclass(frozen=True)
class Term:
    op: str
    left: Term | None = None
    right: Term | None = None

    def __post_init__(self):
        if self.op == GEN:
            if self.left is not None or self.right is not None:
                raise ValueError("generator takes no children")
        elif self.op in (APPLY, COMPOSE):
            if self.left is None or self.right is None:
                raise ValueError(f"{self.op!r} needs two children")
        else:
            raise ValueError(f"unknown node {self.op!r}")

    def __mul__(self, other: Term) -> Term:
        return Term(APPLY, self, other)

    def __str__(self) -> str:
        return format_term(self)

    @functools.cached_property
    def size(self) -> int:
        """Number of generator leaves."""
        total = 0
        for node in _nodes(self):
            total += node.op == GEN
        return total

    @functools.cached_property
    def uses_compose(self) -> bool:
        return any(node.op == COMPOSE for node in _nodes(self))


J = Term(GEN)


def _nodes(t: Term) -> Iterator[Term]:
    stack = [t]
    while stack:
        node = stack.pop()
        yield node
        if node.op != GEN:
            stack.append(node.right)
            stack.append(node.left)


def apply(a: Term, b: Term) -> Term:
    return Term(APPLY, a, b)


def compose_terms(a: Term, b: Term) -> Term:
    return Term(COMPOSE, a, b)


def left_power(m: int) -> Term:
    """j_m = ((j j) j) ... j with m generators."""
    if m < 1:
        raise ValueError("m must be >= 1")
    t = J
    for _ in range(m - 1):
        t = Term(APPLY, t, J)
    return t


def tower(m: int) -> Term:
    """j^(m) = j(j(...(j j))) with m + 1 generators."""
    if m < 0:
        raise ValueError("m must be >= 0")
    t = J
    for _ in range(m):
        t = Term(APPLY, J, t)
    return t


def format_term(t: Term) -> str:
    # iterative to survive very deep towers
    out: list[str] = []
    stack: list[object] = [t]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
            continue
        node = item
        if node.op == GEN:
            out.append("j")
            continue
        right = node.right
        parts: list[object] = [node.left, node.op]
        if right.op == GEN:
            parts.append(right)
        else:
            parts += ["(", right, ")"]
        stack.extend(reversed(parts))
    return "".join(out)


class TermSyntaxError(ValueError):
    def __init__(self, text: str, pos: int, msg: str):
        super().__init__(f"{msg} at position {pos}: {text!r}")
        self.pos = pos


def parse_term(text: str) -> Term:
    toks = [(i, c) for i, c in enumerate(text) if not c.isspace()]
    pos = 0

    def peek():
        return toks[pos][1] if pos < len(toks) else None

    def where():
        return toks[pos][0] if pos < len(toks) else len(text)

    def factor():
        nonlocal pos
        c = peek()
        if c == "j":
            pos += 1
            return J
        if c == "(":
            pos += 1
            t = term()
            if peek() != ")":
                raise TermSyntaxError(text, where(), "expected ')'")
            pos += 1
            return t
        raise TermSyntaxError(text, where(), "expected 'j' or '('" if c else "unexpected end")

    def term():
        nonlocal pos
        t = factor()
        while peek() in (APPLY, COMPOSE):
            op = peek()
            pos += 1
            t = Term(op, t, factor())
        return t

    t = term()
    if pos != len(toks):
        raise TermSyntaxError(text, where(), f"unexpected {peek()!r}")
    return t


def eval_term(t: Term, n: int, *, budget: int = 1_000_000) -> int:
    """Image of ``t`` in A_n (or P_n when it composes), generator -> 1."""
    n = check_level(n)
    gen = 1 % (1 << n)
    memo: dict[int, int] = {}
    stack = [(t, False)]
    work = 0
    while stack:
        node, ready = stack.pop()
        key = id(node)
        if key in memo:
            continue
        if node.op == GEN:
            memo[key] = gen
            continue
        if not ready:
            stack.append((node, True))
            stack.append((node.right, False))
            stack.append((node.left, False))
            continue
        work += 1
        if work > budget:
            raise BudgetExceeded(f"term evaluation exceeded {budget} operations")
        a, b = memo[id(node.left)], memo[id(node.right)]
        memo[key] = star(n, a, b) if node.op == APPLY else compose(n, a, b)
    return memo[id(t)]


def residues(t: Term, cap: int, **kw) -> ResidueVector:
    """Images of ``t`` at every level 0..cap, each evaluated independently."""
    return ResidueVector(cap, tuple(eval_term(t, n, **kw) for n in range(cap + 1)))


def enumerate_terms(max_size: int, with_compose: bool = False) -> list[Term]:
    """All terms with at most ``max_size`` generators."""
    ops = (APPLY, COMPOSE) if with_compose else (APPLY,)
    by_size: list[list[Term]] = [[], [J]]
    for s in range(2, max_size + 1):
        level = []
        for ls in range(1, s):
            for left in by_size[ls]:
                for right in by_size[s - ls]:
                    for op in ops:
                        level.append(Term(op, left, right))
        by_size.append(level)
    return [t for group in by_size for t in group]


def j_sub(m: int, cap: int) -> ResidueVector:
    """Residues of j_m, from j_m mod 2^n = m mod 2^n."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return ResidueVector.from_value(m, cap)


def j_sup(m: int, cap: int, *, budget: int = 10_000_000) -> ResidueVector:
    """Residues of the tower j^(m), built right to left one star per level."""
    if m < 0:
        raise ValueError("m must be >= 0")
    check_level(cap)
    if m * (cap + 1) > budget:
        raise BudgetExceeded(f"tower of height {m} at cap {cap} exceeds budget")
    out = []
    for n in range(cap + 1):
        v = 1 % (1 << n)
        for _ in range(m):
            v = star(n, 1 % (1 << n), v)
        out.append(v)
    return ResidueVector(cap, tuple(out))


def f_of(n: int, cap: int) -> GammaIndex:
    """F(n) = index of the critical point of j^(n), if visible below cap."""
    return crit_index(j_sup(n, cap))


@dataclass(frozen=True)
class NotFound:
    cap: int

    def __str__(self) -> str:
        return f"NOT_FOUND({self.cap})"


def search_nonzero(t: Term, cap: int) -> int | NotFound:
    """Least level n <= cap where ``t`` evaluates to nonzero."""
    check_level(cap)
    for n in range(cap + 1):
        if eval_term(t, n):
            return n
    return NotFound(cap)


def one_star_sixteen() -> Term:
    """j(j_16): nonzero somewhere iff F(4) is finite."""
    return apply(J, left_power(16))


def _left_product(items: list[ResidueVector]) -> ResidueVector:
    acc = items[0]
    for it in items[1:]:
        acc = acc.apply(it)
    return acc


def lemma28_check(k: Term, es: list[Term], cap: int) -> bool:
    """Finite form of the agreement lemma for k e_0 ... e_n versus k(e_0 ... e_n).

    For every r, m <= cap: if crit k >= gamma_r and every partial product
    k e_0 ... e_i (i < n) sends gamma_r to at least gamma_m, the two sides
    agree mod 2^m.
    """
    if not es:
        raise ValueError("es must be nonempty")
    kr = residues(k, cap)
    er = [residues(e, cap) for e in es]
    partial = [kr]
    for e in er:
        partial.append(partial[-1].apply(e))
    # partial[i + 1] = k e_0 ... e_i
    lhs = partial[-1]
    rhs = kr.apply(_left_product(er))
    nlast = len(es) - 1
    for r in range(cap + 1):
        if kr[r] != 0:
            continue
        for m in range(cap + 1):
            if all(gamma_image_ge(partial[i + 1], r, m) for i in range(nlast)):
                if not lequiv(lhs, rhs, m):
                    return False
    return True


@dataclass
class Thm31Report:
    n: int
    cap: int
    b_checked: int = 0
    b_failures: int = 0
    strict_checked: int = 0
    strict_failures: int = 0
    c_triple: tuple = ()
    c_expected: tuple = ()
    c_ok: bool = False
    r_images: dict = field(default_factory=dict)
    r_ok: bool = False

    @property
    def passed(self) -> bool:
        return (self.b_failures == 0 and self.strict_failures == 0
                and self.c_ok and self.r_ok)


class CapTooSmall(ValueError):
    pass


def theorem31_check(n: int, cap: int) -> Thm31Report:
    """Column-1 facts at level 2^(n+1): parts (b) and (c) as residue checks."""
    lo, hi = 1 << n, 1 << (n + 1)
    if hi > cap:
        raise CapTooSmall(f"need 2^{n + 1} = {hi} <= cap, got {cap}")
    from .crit import period_zero_based

    rep = Thm31Report(n, cap)
    # (b): k mod 2^lo != 0  ==>  k(gamma_lo) >= gamma_hi
    for k in range(1 << hi):
        if k % (1 << lo) == 0:
            continue
        rep.b_checked += 1
        if period_zero_based(hi, k) > 1 << lo:
            rep.b_failures += 1
    # strict form one level up: additionally k mod 2^hi > 2^lo
    # ==>  k(gamma_lo) >= gamma_{hi+1}
    for k in range(1 << (hi + 1)):
        if k % (1 << lo) and k % (1 << hi) > 1 << lo:
            rep.strict_checked += 1
            if period_zero_based(hi + 1, k) > 1 << lo:
                rep.strict_failures += 1
    # (c): j_{2^lo - 1} has crit gamma_0, sends gamma_0 -> gamma_lo -> gamma_hi
    work_cap = max(cap, hi + 1)
    k = j_sub((1 << lo) - 1, work_cap)
    rep.c_triple = (crit_index(k), gamma_image(k, 0), gamma_image(k, lo))
    rep.c_expected = (0, lo, hi)
    rep.c_ok = rep.c_triple == rep.c_expected
    rep.r_images = {r: gamma_image(k, r) for r in range(1, lo)}
    rep.r_ok = all(v == lo + r for r, v in rep.r_images.items())
    return rep


def lemma29_sweep(max_size: int, cap: int) -> SweepResult:
    """Zero-bit condition for every term residue up to ``max_size``."""
    from .crit import zero_bit_check

    res = SweepResult("lemma29", info={"max_size": max_size, "cap": cap})
    seen = set()
    for t in enumerate_terms(max_size):
        k = residues(t, cap)
        if k in seen:
            continue
        seen.add(k)
        for m in range(cap + 1):
            g = gamma_image(k, m)
            if g is ABOVE_CAP or g >= cap:
                continue
            res.record(zero_bit_check(k, m, g), (str(t), m, g))
    res.info["distinct_residues"] = len(seen)
    return res


def ld_rewrites(t: Term) -> Iterator[Term]:
    """Every term one left-distributive step away from ``t``.

    At each application node a(bc) <-> (ab)(ac), in either direction.
    """
    if t.op == GEN:
        return
    left, right = t.left, t.right
    if t.op == APPLY:
        if right.op == APPLY:
            yield Term(APPLY, Term(APPLY, left, right.left), Term(APPLY, left, right.right))
        if left.op == APPLY and right.op == APPLY and right.left == left.left:
            a = left.left
            yield Term(APPLY, a, Term(APPLY, left.right, right.right))
    for sub in ld_rewrites(left):
        yield Term(t.op, sub, right)
    for sub in ld_rewrites(right):
        yield Term(t.op, left, sub)


def random_term(rng, size: int) -> Term:
    """Uniform-ish random application term with ``size`` generators."""
    if size == 1:
        return J
    k = rng.randint(1, size - 1)
    return Term(APPLY, random_term(rng, k), random_term(rng, size - k))
