"""Named exhaustive and property suites.

Every suite takes a ``Bounds`` and returns a SweepResult.  Unset bound
fields fall back to the suite's own defaults, which are the sizes the
acceptance run uses.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from . import backward as bw
from . import crit, structure, terms
from .core import DEFAULT_MEMORY_BUDGET, build_table, get_table, star
from .sweep import SweepResult


@dataclass(frozen=True)
class Bounds:
    n: int | None = None
    cap: int | None = None
    size: int | None = None
    jobs: int = 1
    seed: int = 0


@dataclass(frozen=True)
class Suite:
    name: str
    func: Callable[[Bounds], SweepResult]
    defaults: Bounds
    doc: str

    def run(self, bounds: Bounds = Bounds()) -> SweepResult:
        merged = replace(
            self.defaults,
            **{k: getattr(bounds, k) for k in ("n", "cap", "size") if getattr(bounds, k) is not None},
            jobs=bounds.jobs,
            seed=bounds.seed,
        )
        t0 = time.perf_counter()
        res = self.func(merged)
        res.info.setdefault("seconds", round(time.perf_counter() - t0, 3))
        return res


SUITES: dict[str, Suite] = {}


def suite(name: str, **defaults):
    def deco(func):
        doc = (func.__doc__ or "").strip().splitlines()[0] if func.__doc__ else ""
        SUITES[name] = Suite(name, func, Bounds(**defaults), doc)
        return func
    return deco


def run_suite(name: str, bounds: Bounds = Bounds()) -> SweepResult:
    try:
        s = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}") from None
    return s.run(bounds)


def _bad(mask: np.ndarray, *prefix) -> list:
    idx = np.argwhere(~mask)[:5]
    return [(*prefix, *map(int, row)) for row in idx]


def _ztable(n: int) -> np.ndarray:
    return get_table(n).full_zero()


def _ctable(t: np.ndarray) -> np.ndarray:
    size = len(t)
    return (np.roll(t, -1, axis=1) - 1) % size


# ---- forward tables ------------------------------------------------------

@suite("left-distributivity", n=8)
def _left_distributivity(b: Bounds) -> SweepResult:
    """a(bc) = (ab)(ac) on every triple of A_n."""
    res = SweepResult("left-distributivity", info={"n": b.n})
    t = _ztable(b.n)
    for a in range(len(t)):
        ra = t[a]
        ok = ra[t] == t[ra[:, None], ra[None, :]]
        res.add(ok.size, _bad(ok, a), int(ok.size - ok.sum()))
    return res


@suite("laws11", n=7)
def _laws11(b: Bounds) -> SweepResult:
    """The four application/composition identities on every triple of P_n."""
    res = SweepResult("laws11", info={"n": b.n})
    t = _ztable(b.n)
    c = _ctable(t)
    for a in range(len(t)):
        ta, ca = t[a], c[a]
        checks = {
            "assoc": c[ca[:, None], np.arange(len(t))[None, :]] == ca[c],
            "compose-apply": t[ca] == ta[t],
            "apply-over-compose": ta[c] == c[ta[:, None], ta[None, :]],
        }
        for name, ok in checks.items():
            res.add(ok.size, _bad(ok, name, a), int(ok.size - ok.sum()))
        ok = ca == c[ta, a]
        res.add(ok.size, _bad(ok, "a o b = a(b) o a", a), int(ok.size - ok.sum()))
    return res


@suite("increasing", n=12)
def _increasing(b: Bounds) -> SweepResult:
    """a * b > a for a < 2^n, and stored periods climb to 2^n."""
    res = SweepResult("increasing", info={"n": b.n})
    for n in range(b.n + 1):
        tab = get_table(n)
        top = tab.size
        for a in range(1, top):
            row = tab.row(a)
            ok = bool(row[0] > a and row[-1] == top and np.all(np.diff(row) > 0))
            res.record(ok, (n, a))
    return res


@suite("prop25a", n=16)
def _prop25a(b: Bounds) -> SweepResult:
    """Every period is a power of 2."""
    res = SweepResult("prop25a", info={"n": b.n})
    for n in range(b.n + 1):
        p = get_table(n).periods
        ok = (p > 0) & ((p & (p - 1)) == 0)
        res.add(len(p), _bad(ok, n), int(len(p) - ok.sum()))
    return res


@suite("prop25b", n=8)
def _prop25b(b: Bounds) -> SweepResult:
    """Defining formulas mod 2^n, including the 2^n row and column."""
    res = SweepResult("prop25b", info={"n": b.n})
    for n in range(b.n + 1):
        t = _ztable(n)
        size = len(t)
        idx = np.arange(size)
        succ = (idx + 1) % size
        ok = t[:, succ] == t[t, succ[:, None]]
        res.add(ok.size, _bad(ok, n, "step"), int(ok.size - ok.sum()))
        for name, ok in (("top-row", t[0] == idx), ("one-col", t[:, 1 % size] == succ)):
            res.add(ok.size, _bad(ok, n, name), int(ok.size - ok.sum()))
    return res


@suite("prop25c", n=10)
def _prop25c(b: Bounds) -> SweepResult:
    """Reduction A'_N -> A'_n is a homomorphism for all n <= N."""
    res = SweepResult("prop25c", info={"N": b.n})
    for N in range(b.n + 1):
        full = get_table(N).full()
        idx = np.arange(1 << N)
        for n in range(N + 1):
            small = get_table(n).full()
            r = idx % (1 << n)
            ok = (full - 1) % (1 << n) + 1 == small[r[:, None], r[None, :]]
            res.add(ok.size, _bad(ok, N, n), int(ok.size - ok.sum()))
    return res


@suite("shift-hom", n=10)
def _shift_hom(b: Bounds) -> SweepResult:
    """(a + 2^n) * (b + 2^n) at level n+1 equals (a * b) + 2^n."""
    res = SweepResult("shift-hom", info={"n": b.n})
    for n in range(b.n + 1):
        top = 1 << n
        small = get_table(n).full()
        big = get_table(n + 1).full()
        ok = big[top:, top:] == small + top
        res.add(ok.size, _bad(ok, n), int(ok.size - ok.sum()))
    return res


@suite("prop25d", n=14)
def _prop25d(b: Bounds) -> SweepResult:
    """Period of a + 2^n one level up is p; period of a is p or 2p."""
    res = SweepResult("prop25d", info={"n": b.n})
    for n in range(b.n + 1):
        top = 1 << n
        # a ranges over 1..2^n - 1; the top element is the identity
        p = get_table(n).periods[:top - 1]
        q = get_table(n + 1).periods
        ok_shift = q[top:2 * top - 1] == p
        ok_same = (q[:top - 1] == p) | (q[:top - 1] == 2 * p)
        res.add(len(p), _bad(ok_shift, n, "shift"), int(len(p) - ok_shift.sum()))
        res.add(len(p), _bad(ok_same, n, "double"), int(len(p) - ok_same.sum()))
    return res


@suite("accel-table", n=12)
def _accel_table(b: Bounds) -> SweepResult:
    """Accelerated build is identical to the plain build."""
    res = SweepResult("accel-table", info={"n": b.n, "accel_rows": 0})
    for n in range(b.n + 1):
        fast = build_table(n, accel=True)
        res.record(fast.identical(get_table(n)), n)
        res.info["accel_rows"] += fast.accel_rows
    return res


@suite("accel-work", n=12)
def _accel_work(b: Bounds) -> SweepResult:
    """Split rows take fewer assembly steps than plain right-multiplications."""
    cov = structure.acceleration_coverage(b.n)
    res = SweepResult("accel-work", info=dict(cov))
    res.record(cov["split_rows"] == 0 or cov["fast_ops"] < cov["naive_ops"], cov)
    return res


@suite("memory16", n=16)
def _memory16(b: Bounds) -> SweepResult:
    """build_table at level n stays inside the 4 GiB budget."""
    t = build_table(b.n, memory_budget=DEFAULT_MEMORY_BUDGET)
    res = SweepResult("memory16", info={"n": b.n, "entries": int(t.values.size)})
    res.record(t.identical(get_table(b.n)) if b.n <= 16 else True, b.n)
    return res


# ---- backward form --------------------------------------------------------

@suite("reversal", n=10)
def _reversal(b: Bounds) -> SweepResult:
    """v -> 2^n - v carries A'_n onto the independently filled B_n."""
    res = SweepResult("reversal", info={"n": b.n})
    for n in range(b.n + 1):
        top = 1 << n
        fwd = get_table(n).full()
        back = bw.naive_b_table(n)
        # A' index a <-> B element top - a; A' index top <-> B element 0
        perm = (top - np.arange(1, top + 1)) % top
        want = back[perm[:, None], perm[None, :]]
        ok = (top - fwd) % top == want
        res.add(ok.size, _bad(ok, n), int(ok.size - ok.sum()))
    return res


@suite("level-independence", n=14)
def _level_independence(b: Bounds) -> SweepResult:
    """x \\ y read at every ambient level holding both agrees, x, y < 2^10."""
    res = SweepResult("level-independence", info={"n": b.n})
    bound = 1 << min(10, b.n)
    ref = None
    for n in range(min(10, b.n), b.n + 1):
        top = 1 << n
        tab = get_table(n)
        xs = np.arange(bound)
        vals = np.empty((bound, bound), dtype=np.int64)
        for x in xs:
            row = tab.row(int(top - x)) if x else None
            vals[x] = xs if row is None else top - row[(top - xs - 1) % len(row)]
        if ref is None:
            ref = vals
            continue
        ok = vals == ref
        res.add(ok.size, _bad(ok, n), int(ok.size - ok.sum()))
    return res


@suite("subalg-order", n=10)
def _subalg_order(b: Bounds) -> SweepResult:
    """y in <x>, y != x implies <y> strictly inside <x>; closure oracle agrees."""
    res = SweepResult("subalg-order", info={"n": b.n})
    sets = {}
    for x in range(1 << b.n):
        s = bw.subalg(x)
        sets[x] = frozenset(s.elements)
        if x < 1 << min(b.n, 8):
            res.record(frozenset(bw.subalg_closure(x).elements) == sets[x], ("closure", x))
    for x, members in sets.items():
        for y in members:
            if y != x:
                res.record(sets[y] < members, (x, y))
    return res


@suite("reduction-compat", n=10)
def _reduction_compat(b: Bounds) -> SweepResult:
    """Reduction mod 2^m maps <x> onto <x mod 2^m>."""
    res = SweepResult("reduction-compat", info={"n": b.n})
    for x in range(1 << b.n):
        members = bw.subalg(x).elements
        for m in range(b.n + 1):
            image = {y % (1 << m) for y in members}
            res.record(image == set(bw.subalg(x % (1 << m)).elements), (x, m))
    return res


@suite("bit-containment", n=12)
def _bit_containment(b: Bounds) -> SweepResult:
    """Every member of <x> is bitwise inside x."""
    res = SweepResult("bit-containment", info={"n": b.n})
    for x in range(1 << b.n):
        el = np.asarray(bw.subalg(x).elements, dtype=np.int64)
        ok = (el & ~x) == 0
        res.add(len(el), _bad(ok, x), int(len(el) - ok.sum()))
    return res


@suite("template", n=12)
def _template(b: Bounds) -> SweepResult:
    """Bit scattering is an isomorphism B_r -> <x> wherever |<x>| = 2^r."""
    res = SweepResult("template", info={"n": b.n, "attaining": 0})
    oracles: dict[int, np.ndarray] = {}
    for x in range(1 << b.n):
        if not bw.attains_bound(x):
            continue
        res.info["attaining"] += 1
        r = bin(x).count("1")
        emb = np.array([bw.template_embed(x, v) for v in range(1 << r)], dtype=np.int64)
        if r not in oracles:
            oracles[r] = bw.naive_b_table(r)
        src = oracles[r]
        target = structure._sub_table(np.sort(emb))
        pos = np.searchsorted(np.sort(emb), emb)
        got = target[pos[:, None], pos[None, :]]
        ok = emb[src] == got
        res.add(ok.size, _bad(ok, x), int(ok.size - ok.sum()))
        res.record(set(emb.tolist()) == set(bw.subalg(x).elements), ("onto", x))
    return res


# ---- critical points and terms -------------------------------------------

def _term_residues(size: int, cap: int) -> list:
    return sorted({terms.residues(t, cap) for t in terms.enumerate_terms(size)}, key=lambda k: k.residues)


@suite("prop23", size=7, cap=8)
def _prop23(b: Bounds) -> SweepResult:
    """Crit/gamma calculus bullets over term-generated residues."""
    ks = _term_residues(b.size, b.cap)
    res = SweepResult("prop23", info={"size": b.size, "cap": b.cap, "residues": len(ks)})
    bad = list(crit.check_prop23(ks, b.cap))
    res.add(len(ks) ** 2, bad)
    return res


@suite("prop24", size=7, cap=8)
def _prop24(b: Bounds) -> SweepResult:
    """Agreement-mod-gamma bullets over term-generated residues."""
    ks = _term_residues(b.size, b.cap)
    res = SweepResult("prop24", info={"size": b.size, "cap": b.cap, "residues": len(ks)})
    bad = list(crit.check_prop24(ks, b.cap))
    res.add(len(ks) ** 2 * (b.cap + 1), bad)
    return res


@suite("gamma-defs", n=10)
def _gamma_defs(b: Bounds) -> SweepResult:
    """Period form and product form of k(gamma_m) >= gamma_n agree."""
    res = SweepResult("gamma-defs", info={"n": b.n})
    bad = list(crit.check_gamma_definitions(b.n))
    res.add(sum((n + 2) << n for n in range(b.n + 1)), bad)
    return res


@suite("gamma0-bits", cap=10)
def _gamma0_bits(b: Bounds) -> SweepResult:
    """Rightmost 0 bit gives k(gamma_0) whenever both are below cap."""
    res = SweepResult("gamma0-bits", info={"cap": b.cap})
    for r in range(1 << b.cap):
        k = crit.ResidueVector.from_value(r, b.cap)
        g, z = crit.gamma_image(k, 0), crit.gamma0_from_bits(k)
        if g is crit.ABOVE_CAP or z is crit.ABOVE_CAP:
            continue
        res.record(g == z, r)
    return res


@suite("no-gamma-n", n=10)
def _no_gamma_n(b: Bounds) -> SweepResult:
    """k mod 2^(n+1) >= 2^n rules out k(gamma_m) = gamma_n."""
    res = SweepResult("no-gamma-n", info={"n": b.n})
    for n in range(b.n + 1):
        for r in range(1 << n, 1 << (n + 1)):
            k = crit.ResidueVector.from_value(r, n + 1)
            for m in range(n + 2):
                hits = crit.gamma_image_ge(k, m, n) and not crit.gamma_image_ge(k, m, n + 1)
                res.record(not hits, (r, m, n))
    return res


@suite("lemma29", size=6, cap=10)
def _lemma29(b: Bounds) -> SweepResult:
    """Zero bit n of k whenever k(gamma_m) = gamma_n."""
    return terms.lemma29_sweep(b.size, b.cap)


@suite("lemma28", size=5, cap=8)
def _lemma28(b: Bounds) -> SweepResult:
    """k e_0 ... e_n versus k(e_0 ... e_n) under the gamma hypotheses."""
    res = SweepResult("lemma28", info={"size": b.size, "cap": b.cap})
    ks = terms.enumerate_terms(b.size)
    small = terms.enumerate_terms(3)
    seqs = [[e] for e in small]
    seqs += [[e, f] for e in small for f in small]
    seqs += [[e, f, g] for e in small for f in small for g in small]
    for k in ks:
        for es in seqs:
            res.record(terms.lemma28_check(k, es, b.cap), (str(k), [str(e) for e in es]))
    return res


@suite("thm21", n=10, cap=10)
def _thm21(b: Bounds) -> SweepResult:
    """crit j_m is the 2-adic valuation of m."""
    res = SweepResult("thm21", info={"m_max": 1 << b.n, "cap": b.cap, "above_cap": 0})
    for m in range(1, (1 << b.n) + 1):
        got = crit.crit_index(terms.j_sub(m, b.cap))
        nu = (m & -m).bit_length() - 1
        if nu >= b.cap:
            # the tower cannot see past its cap
            res.info["above_cap"] += 1
            res.record(got is crit.ABOVE_CAP, (m, got))
        else:
            res.record(got == nu, (m, got))
    return res


@suite("jsub", n=10)
def _jsub(b: Bounds) -> SweepResult:
    """Closed form of j_m against step-by-step evaluation."""
    res = SweepResult("jsub", info={"m_max": 1 << b.n, "n": b.n})
    for n in range(b.n + 1):
        one = 1 % (1 << n)
        v = one
        for m in range(1, (1 << b.n) + 1):
            if m > 1:
                v = star(n, v, one)
            res.record(v == terms.j_sub(m, n)[n], (m, n))
    return res


@suite("left-power-cycle", n=12)
def _left_power_cycle(b: Bounds) -> SweepResult:
    """Left product of 2^n + 1 generators is the generator in A_n."""
    res = SweepResult("left-power-cycle", info={"n": b.n})
    for n in range(b.n + 1):
        one = 1 % (1 << n)
        v = one
        for _ in range(1 << n):
            v = star(n, v, one)
        res.record(v == one, n)
    return res


@suite("thm31", cap=8)
def _thm31(b: Bounds) -> SweepResult:
    """Column-1 critical point facts for n = 0, 1, 2."""
    res = SweepResult("thm31", info={"cap": b.cap})
    for n in range(3):
        if 1 << (n + 1) > b.cap:
            break
        rep = terms.theorem31_check(n, b.cap)
        res.record(rep.passed, {"n": n, "triple": rep.c_triple, "b_failures": rep.b_failures})
        res.info[f"triple_{n}"] = list(rep.c_triple)
    return res


@suite("ld-rewrite", n=8, size=8)
def _ld_rewrite(b: Bounds) -> SweepResult:
    """Random LD rewrites never change a term's value."""
    rng = random.Random(b.seed)
    res = SweepResult("ld-rewrite", info={"n": b.n, "size": b.size, "seed": b.seed})
    for _ in range(300):
        t = terms.random_term(rng, rng.randint(3, b.size))
        for u in terms.ld_rewrites(t):
            for n in range(b.n + 1):
                res.record(terms.eval_term(t, n) == terms.eval_term(u, n), (str(t), str(u), n))
    return res


@suite("fof-stability", n=3, cap=10)
def _fof_stability(b: Bounds) -> SweepResult:
    """A determinate F(n) never changes when the cap grows."""
    res = SweepResult("fof-stability", info={"n": b.n, "cap": b.cap})
    for n in range(b.n + 1):
        first = None
        for cap in range(b.cap + 1):
            v = terms.f_of(n, cap)
            if v is crit.ABOVE_CAP:
                continue
            if first is None:
                first = v
            res.record(v == first, (n, cap, v))
    return res


# ---- structure theorem ----------------------------------------------------

@suite("thm41", n=12)
def _thm41(b: Bounds) -> SweepResult:
    """Pointwise formula and subalgebra isomorphism for every bundle."""
    return structure.sweep_thm41(b.n, jobs=b.jobs)


@suite("cor42", n=12)
def _cor42(b: Bounds) -> SweepResult:
    """Full-block bundles: period 2^(l+n) and blockwise row."""
    res = SweepResult("cor42", info={"N": b.n})
    for p in structure.enumerate_thm41_params(b.n):
        if p.y != (1 << p.n) - 1:
            continue
        row = bw.b_row(p.a + 1)
        ok = len(row) == 1 << (p.l + p.n) and np.array_equal(row, structure.cor42_fast_row(p))
        res.record(ok, p)
    return res


for _k in (3, 4, 5, 6, 7, 8):
    _fn = getattr(structure, f"sweep_lemma4{_k}")
    suite(f"lemma4{_k}", n=10)(
        lambda b, _fn=_fn: _fn(b.n)
    )
    SUITES[f"lemma4{_k}"] = replace(SUITES[f"lemma4{_k}"], doc=_fn.__doc__ or "exhaustive in-hypothesis sweep")


@suite("dispatcher", n=12)
def _dispatcher(b: Bounds) -> SweepResult:
    """Accelerated x \\ y equals the plain table on the full grid."""
    return structure.sweep_dispatcher(b.n)


@suite("cache", n=12)
def _cache(b: Bounds) -> SweepResult:
    """Round-trip identity and corruption detection of the row cache."""
    from .cache import CacheFormatError, dumps, loads

    rng = random.Random(b.seed)
    res = SweepResult("cache", info={"n": b.n, "flips": 0})
    for n in range(b.n + 1):
        tab = get_table(n)
        data = dumps(tab)
        res.record(loads(data).identical(tab) and dumps(loads(data)) == data, ("roundtrip", n))
        if len(data) <= 8192:
            positions = range(len(data))
        else:
            positions = sorted(rng.sample(range(len(data)), 48) + list(range(14)))
        for pos in positions:
            bad = bytearray(data)
            bad[pos] ^= 1 << rng.randrange(8)
            res.info["flips"] += 1
            try:
                loads(bytes(bad))
                res.record(False, ("accepted", n, pos))
            except CacheFormatError:
                res.record(True)
        for cut in (1, 8, len(data) // 2):
            try:
                loads(data[:-cut])
                res.record(False, ("truncation", n, cut))
            except CacheFormatError:
                res.record(True)
    return res
