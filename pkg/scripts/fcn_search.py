"""F(n) for small n and the j(j_16) search, both bounded by a cap."""

import argparse
import time

from laver.terms import f_of, one_star_sixteen, search_nonzero


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=4)
    ap.add_argument("--cap", type=int, default=16)
    ap.add_argument("--search-cap", type=int, default=16,
                    help="highest level tried for j(j_16); each level builds a table")
    args = ap.parse_args()

    for n in range(args.max_n + 1):
        t0 = time.perf_counter()
        v = f_of(n, args.cap)
        print(f"F({n}) at cap {args.cap}: {v}  ({time.perf_counter() - t0:.2f}s)")
    t0 = time.perf_counter()
    hit = search_nonzero(one_star_sixteen(), args.search_cap)
    print(f"first level where j(j_16) != 0: {hit}  ({time.perf_counter() - t0:.2f}s)")


if __name__ == "__main__":
    main()
