#!/usr/bin/env python3
"""Round-trip experiment: conjugate Koszul complexes by random isomorphisms
and recover them, timing the annihilator solve for each (algebra, p, b) cell.

Usage: python scripts/decomposition_sweep.py [--trials 10] [--seed 1]
"""

import argparse
import random
import time

from derfree.checkers import Decomposition, koszul_decompose
from derfree.complexes import random_transport
from derfree.field import GF101
from derfree.koszul import koszul
from derfree.monomial import monomial_algebra

CATALOG = [
    ("m2-3vars", ["x", "y", "z"], ["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"], 4),
    ("m2-4vars", ["x", "y", "z", "w"],
     ["x^2", "x*y", "x*z", "x*w", "y^2", "y*z", "y*w", "z^2", "z*w", "w^2"], 4),
    ("chain-z3", ["x", "y", "z"], ["x^2", "x*y", "x*z", "y^2", "y*z", "z^3"], 6),
    ("mixed-socle", ["x", "y", "z"], ["x^2", "x*y", "x*z", "y^2", "z^2"], 6),
    ("chain-z4", ["x", "y", "z"], ["x^2", "x*y", "y^2", "x*z", "y*z", "z^4"], 8),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=10)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    print(f"{'algebra':<12} {'dim':>3} {'p':>2} {'b':>2} {'ok':>5} {'avg s':>7}")
    failures = 0
    for name, variables, gens, trunc in CATALOG:
        A = monomial_algebra(GF101, variables, gens, trunc).artinize()
        xs = [A.parse_element(v) for v in variables[:3]]
        for p in (1, 2, 3):
            for b in (1, 2, 3):
                K = koszul(A, xs[:p], multiplicity=b).complex
                good = 0
                t0 = time.time()
                for _ in range(args.trials):
                    G = random_transport(K, rng)
                    dec = koszul_decompose(G)
                    if isinstance(dec, Decomposition) and dec.multiplicity == b:
                        good += 1
                avg = (time.time() - t0) / args.trials
                failures += args.trials - good
                print(f"{name:<12} {A.dim:>3} {p:>2} {b:>2} "
                      f"{good:>2}/{args.trials:<2} {avg:>7.3f}")
    print("failures:", failures)
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
