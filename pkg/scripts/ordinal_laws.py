"""Randomized campaign over the ordinal laws: canonical forms, absorption, finite sums, the map."""

import argparse
import sys

from symq.laws import LAWS, LawConfig, run_laws


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--instances", type=int, default=10_000)
    p.add_argument("--max-k", type=int, default=3)
    p.add_argument("--max-set", type=int, default=20)
    p.add_argument("--law", choices=LAWS, action="append", help="repeatable (default: all)")
    args = p.parse_args()
    config = LawConfig(args.seed, args.instances, args.max_k, args.max_set)
    report = run_laws(config, tuple(args.law or LAWS))
    for line in report.lines():
        if args.law is None or line.split("\t")[1] in args.law:
            print(line)
    for law, bad in report.counterexamples.items():
        for k, _ in bad[:3]:
            print(f"counterexample\t{law}\tk={k}")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
