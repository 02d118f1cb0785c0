"""Write row-bits and period-grid pictures for a range of levels."""

import argparse
from pathlib import Path

from laver.bitmap import BitmapSpec, write_bitmap


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="bitmaps")
    ap.add_argument("--levels", type=int, nargs="+", default=[4, 6, 8])
    ap.add_argument("--raw", action="store_true")
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for n in args.levels:
        for kind in ("row-bits", "period-grid"):
            path = out / f"{kind}-{n}.pbm"
            size = write_bitmap(BitmapSpec(kind, n, raw=args.raw), path)
            print(f"{path}  {size} bytes")


if __name__ == "__main__":
    main()
