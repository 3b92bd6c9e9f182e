"""Print invariant reports and verdicts for a handful of worked quotient specs."""

import argparse

from symq.classifier import equivalent, invariants, parse_spec

SPECS = [
    ("aleph_2", "aleph_5", "aleph_9"),
    ("aleph_2", "aleph_6", "aleph_9"),
    ("aleph_5", "aleph_6", "aleph_9"),
    ("aleph_7", "aleph_8", "aleph_12"),
    ("aleph(w)", "aleph(w+1)", "aleph(w+3)"),
    ("aleph(w+1)", "aleph(w+2)", "aleph(w+3)"),
    ("aleph(w^2+w)", "aleph(w^2+w*2)", "aleph(w^3)"),
    ("aleph_1", "aleph_2", "aleph_3"),
    ("aleph_0", "aleph_1", "aleph_1"),
    ("aleph_3", "mu+", "aleph_4"),
]


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--continuum", default="1", help="theta with 2^aleph0 = aleph_theta")
    p.add_argument("--k", type=int, default=3)
    args = p.parse_args()
    specs = [parse_spec(*s, args.continuum) for s in SPECS]
    for text, s in zip(SPECS, specs):
        print("spec: " + ", ".join(text))
        for line in invariants(s, args.k).lines():
            print("  " + line)
    print("pairwise verdicts:")
    for i in range(0, len(specs) - 1, 2):
        print(f"  {SPECS[i]} vs {SPECS[i + 1]}: {equivalent(specs[i], specs[i + 1])}")


if __name__ == "__main__":
    main()
