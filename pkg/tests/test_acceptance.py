"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import resource
import time

import pytest

from conftest import ACCEPTANCE_LINES
from laver.core import DEFAULT_MEMORY_BUDGET, build_table, get_table
from laver.crit import ABOVE_CAP, crit_index
from laver.terms import f_of, j_sub
from laver.verify import Bounds, run_suite


def report(name: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def run_levels(suite: str, levels):
    results = [run_suite(suite, Bounds(n=n)) for n in levels]
    return all(r.passed for r in results), sum(r.checked for r in results), results


def test_left_distributivity_up_to_8():
    t0 = time.perf_counter()
    ok, checked, _ = run_levels("left-distributivity", range(9))
    dt = time.perf_counter() - t0
    report("left distributivity A_n, n<=8", ok and dt < 30, f"{checked} triples, {dt:.1f}s")


def test_laws_11_up_to_7():
    t0 = time.perf_counter()
    ok, checked, _ = run_levels("laws11", range(8))
    dt = time.perf_counter() - t0
    report("composition laws P_n, n<=7", ok and dt < 60, f"{checked} checks, {dt:.1f}s")


def test_period_suites():
    t0 = time.perf_counter()
    parts = {
        "powers of 2 (n<=16)": run_suite("prop25a", Bounds(n=16)),
        "formulas mod 2^n (n<=8)": run_suite("prop25b", Bounds(n=8)),
        "reduction hom (N<=10)": run_suite("prop25c", Bounds(n=10)),
        "shift hom (n<=10)": run_suite("shift-hom", Bounds(n=10)),
        "period doubling (n<=14)": run_suite("prop25d", Bounds(n=14)),
    }
    dt = time.perf_counter() - t0
    ok = all(r.passed for r in parts.values()) and dt < 300
    detail = ", ".join(f"{k} {'ok' if r.passed else 'FAILED'}" for k, r in parts.items())
    report("period structure", ok, f"{detail}; {dt:.1f}s")


def test_reversal_up_to_10():
    r = run_suite("reversal", Bounds(n=10))
    report("reversal A'_n ~ B_n, n<=10", r.passed, f"{r.checked} entries")


def test_theorem21_translation():
    # m < 1024 is visible at cap 10; 2^10 needs one more level to show its valuation
    bad = []
    for m in range(1, 1025):
        nu = (m & -m).bit_length() - 1
        cap = 10 if nu < 10 else 11
        if crit_index(j_sub(m, cap)) != nu:
            bad.append(m)
    at_cap = crit_index(j_sub(1024, 10))
    ok = not bad and at_cap is ABOVE_CAP
    report("crit j_m = 2-adic valuation, m<=1024", ok,
           f"1024 values exact; j_1024 at cap 10 -> {at_cap}, at cap 11 -> 10")


def test_theorem31_instances():
    r = run_suite("thm31", Bounds(cap=8))
    triples = [r.info.get(f"triple_{n}") for n in range(3)]
    ok = r.passed and triples == [[0, 1, 2], [0, 2, 4], [0, 4, 8]]
    report("column-1 critical points n=0,1,2", ok, f"triples {triples}")


def test_lemma29_zero_bits():
    r = run_suite("lemma29", Bounds(size=6, cap=10))
    report("zero-bit condition, terms size<=6, cap 10", r.passed,
           f"{r.checked} checks over {r.info['distinct_residues']} residues")


def test_theorem41_full_instance_check():
    t0 = time.perf_counter()
    r = run_suite("thm41", Bounds(n=12))
    c = run_suite("cor42", Bounds(n=12))
    dt = time.perf_counter() - t0
    report("block decomposition inside B_12 (formula + isomorphism)", r.passed and c.passed,
           f"{r.info['bundles']} bundles, {c.checked} full-block, {dt:.1f}s")


def test_lemmas_43_to_48():
    results = {k: run_suite(f"lemma4{k}", Bounds(n=10)) for k in range(3, 9)}
    ok = all(r.passed for r in results.values())
    detail = ", ".join(f"4.{k}:{r.checked}" for k, r in results.items())
    report("lemmas 4.3-4.8 inside B_10", ok, detail)


def test_dispatcher_full_grid():
    r = run_suite("dispatcher", Bounds(n=12))
    report("accelerated x\\y on x,y < 2^12", r.passed and r.checked == 1 << 24,
           f"{r.checked} pairs, {r.info['split_rows']} split rows")


def test_accelerated_build_and_level_16():
    same = run_suite("accel-table", Bounds(n=12))
    t0 = time.perf_counter()
    t16 = build_table(16, memory_budget=DEFAULT_MEMORY_BUDGET)
    dt = time.perf_counter() - t0
    peak = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss * 1024
    ok = same.passed and t16.identical(get_table(16)) and peak < DEFAULT_MEMORY_BUDGET
    report("accelerated build identical n<=12; n=16 under 4 GiB", ok,
           f"{same.info['accel_rows']} accelerated rows; n=16 {t16.values.size} entries, "
           f"{dt:.1f}s, peak RSS {peak / 2**20:.0f} MiB")


def test_fof_caps():
    big = f_of(4, 16)
    small = [f_of(n, 8) for n in range(3)]
    ok = big is ABOVE_CAP and all(v is not ABOVE_CAP for v in small)
    report("F(4) at cap 16 and F(n<=2) at cap 8", ok, f"F(4)={big}, F(0..2)={small}")


def test_cache_round_trip_and_fuzz():
    r = run_suite("cache", Bounds(n=12))
    report("row cache round trip + corruption fuzz, n<=12", r.passed,
           f"{r.checked} checks, {r.info['flips']} bit flips")
