"""How much of B_N the block decomposition reaches, and what it saves."""

import argparse
import time

from laver.core import build_table
from laver.structure import acceleration_coverage


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-level", type=int, default=14)
    ap.add_argument("--time", action="store_true", help="also time plain vs accelerated builds")
    args = ap.parse_args()

    header = f"{'N':>3} {'rows':>7} {'split':>7} {'share':>6} {'plain ops':>10} {'fast ops':>9} {'ratio':>6}"
    if args.time:
        header += f" {'plain s':>8} {'accel s':>8}"
    print(header)
    for N in range(2, args.max_level + 1):
        c = acceleration_coverage(N)
        ratio = c["fast_ops"] / c["naive_ops"] if c["naive_ops"] else float("nan")
        line = (f"{N:>3} {c['rows']:>7} {c['split_rows']:>7} {c['split_rows'] / c['rows']:>6.3f} "
                f"{c['naive_ops']:>10} {c['fast_ops']:>9} {ratio:>6.3f}")
        if args.time:
            t0 = time.perf_counter()
            build_table(N)
            t1 = time.perf_counter()
            build_table(N, accel=True)
            t2 = time.perf_counter()
            line += f" {t1 - t0:>8.2f} {t2 - t1:>8.2f}"
        print(line)


if __name__ == "__main__":
    main()
