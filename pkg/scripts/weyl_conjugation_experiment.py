#!/usr/bin/env python3
"""Stress the Weyl-representation checks on random graded conjugates.

Usage: python scripts/weyl_conjugation_experiment.py [--count 50] [--pmax 4]
"""

import argparse
import itertools
import random
import time

from derfree.field import GF101
from derfree.weyl import (check_lemmaA1, check_weyl_relations, exterior_model,
                          random_graded_conjugate, structure_map)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--pmax", type=int, default=4)
    ap.add_argument("--coeff-dim", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    bad = 0
    t0 = time.time()
    for n in range(args.count):
        p = 1 + n % args.pmax
        rep = random_graded_conjugate(exterior_model(GF101, p, args.coeff_dim), rng)
        ok = check_weyl_relations(rep, extended=True).passed
        for r in range(p + 1):
            for I in itertools.combinations(range(p), r):
                ok = ok and check_lemmaA1(rep, I)
        sm = structure_map(rep)
        ok = ok and sm.iso and sm.dims_law and sm.nonvanishing
        if not ok:
            bad += 1
            print(f"FAIL at sample {n} (p={p})")
    print(f"{args.count - bad}/{args.count} conjugates passed "
          f"({time.time() - t0:.1f}s)")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
