"""Run the exhaustive A(5) checks and print their reports."""

import argparse
import sys

from symq.alt5 import lemma_reports


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--lemma", choices=["3.3", "3.4", "3.5"], help="one lemma (default: all)")
    args = p.parse_args()
    reports = lemma_reports(args.lemma)
    for r in reports:
        print(r.render(False))
        print(f"  seconds: {r.seconds:.2f}")
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
