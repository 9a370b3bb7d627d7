#!/usr/bin/env python3
"""Replay the bundled example fixtures and print the per-item verdicts.

Usage: python scripts/run_paper_examples.py [--field gfp:101|rational] [--json out.json]
"""

import argparse
import sys

from derfree.cli import parse_field
from derfree.fixtures import run_fixtures
from derfree.serialize import dumps


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--field", type=parse_field, default=parse_field("gfp:101"))
    ap.add_argument("--only")
    ap.add_argument("--json")
    args = ap.parse_args()
    results, report = run_fixtures(args.field, only=args.only)
    for r in results:
        print(f"[{'PASS' if r.passed else 'FAIL'}] {r.name}: {r.description}")
        for item in r.items:
            mark = "ok" if item.passed else "FAIL"
            print(f"    {mark:4} [{item.provenance}] {item.name}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(dumps(report))
    return 0 if report["all_passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
