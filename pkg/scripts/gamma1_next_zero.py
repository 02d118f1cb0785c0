"""Experiment: does the second 0 bit of k mod 2^cap give k(gamma_1)?

Checked over residues realized by terms up to a given size, and, for
contrast, over every residue at the cap (most of which no term realizes).
"""

import argparse
import json

from laver.crit import ABOVE_CAP, ResidueVector, gamma_image
from laver.terms import enumerate_terms, residues


def zero_positions(r: int, cap: int) -> list[int]:
    return [i for i in range(cap) if not (r >> i) & 1]


def check(ks, cap):
    agree = disagree = undecided = 0
    examples = []
    for k in ks:
        zeros = zero_positions(k.top, cap)
        g1 = gamma_image(k, 1)
        if len(zeros) < 2 or g1 is ABOVE_CAP or g1 >= cap - 1:
            undecided += 1
            continue
        if zeros[1] == g1:
            agree += 1
        else:
            disagree += 1
            if len(examples) < 5:
                examples.append({"residue": k.top, "zeros": zeros[:4], "gamma1": g1})
    return {"agree": agree, "disagree": disagree, "undecided": undecided, "examples": examples}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size", type=int, default=7)
    ap.add_argument("--cap", type=int, default=10)
    args = ap.parse_args()

    term_ks = {residues(t, args.cap) for t in enumerate_terms(args.size)}
    all_ks = [ResidueVector.from_value(r, args.cap) for r in range(1 << args.cap)]
    print(json.dumps({
        "cap": args.cap,
        "term_residues": {"count": len(term_ks), **check(term_ks, args.cap)},
        "all_residues": {"count": len(all_ks), **check(all_ks, args.cap)},
    }, indent=2))


if __name__ == "__main__":
    main()
