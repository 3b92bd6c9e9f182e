"""Check the formula translation against the group evaluator over a pool and several ground sizes."""

import argparse
import sys
import time

from symq.logic.group import parse_group_formula
from symq.logic.translate import check_translation, load_pool


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--omega", type=int, nargs="+", default=[3, 4])
    p.add_argument("--pool", help="pool file (default: bundled pool)")
    p.add_argument("--weighted", action="store_true")
    args = p.parse_args()
    pool = load_pool(args.pool)
    failed = 0
    start = time.perf_counter()
    for omega in args.omega:
        for arity, text in pool:
            r = check_translation(parse_group_formula(text), omega, arity, weighted=args.weighted)
            print(r.line())
            failed += not r.passed
    print(f"formulas: {len(pool)}  ground sizes: {args.omega}  failed: {failed}  "
          f"seconds: {time.perf_counter() - start:.1f}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
