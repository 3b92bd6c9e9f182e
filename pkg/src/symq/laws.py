"""Randomized campaign over the ~_k calculus: canonical forms, absorption, sums and the map."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .ordinal import (Ord, add, build_map_5_3_iv, canonical_k, compare, low, ord_sum, random_below,
                      random_ord, random_sim_mutant, sim_k)

LAWS = ("canonical", "absorption", "sum", "map")


@dataclass(frozen=True)
class LawConfig:
    seed: int = 0
    instances: int = 10_000
    max_k: int = 3
    max_set: int = 20
    max_terms: int = 4


@dataclass
class LawReport:
    config: LawConfig
    counts: dict = field(default_factory=lambda: dict.fromkeys(LAWS, 0))
    counterexamples: dict = field(default_factory=lambda: {law: [] for law in LAWS})
    seconds: dict = field(default_factory=lambda: dict.fromkeys(LAWS, 0.0))

    @property
    def passed(self) -> bool:
        return not any(self.counterexamples.values())

    def lines(self) -> list[str]:
        out = []
        for law in LAWS:
            bad = len(self.counterexamples[law])
            status = "PASS" if not bad else "FAIL"
            out.append(f"{status}\t{law}\tinstances={self.counts[law]}\tcounterexamples={bad}"
                       f"\tseconds={self.seconds[law]:.2f}")
        return out


def _canonical(rng: random.Random, k: int) -> bool:
    a = random_ord(rng, k + 3)
    c = canonical_k(a, k)
    ok = compare(c, Ord.power(k + 2)) < 0 and sim_k(a, c, k) and canonical_k(c, k) == c
    below = low(a, k)
    return ok and canonical_k(below, k) == below


def _absorption(rng: random.Random, k: int) -> bool:
    a = random_ord(rng, k + 3)
    if compare(a, Ord.power(k + 1)) < 0:
        a = add(Ord.power(rng.randint(k + 1, k + 3)), a)
    b = random_ord(rng, k + 3)
    return sim_k(a, add(b, a), k)


def _sum(rng: random.Random, k: int, terms: int) -> bool:
    xs = [random_ord(rng, k + 3) for _ in range(rng.randint(0, terms))]
    ys = [random_sim_mutant(rng, x, k) if rng.random() < 0.5 else canonical_k(x, k) for x in xs]
    return all(sim_k(x, y, k) for x, y in zip(xs, ys)) and sim_k(ord_sum(xs), ord_sum(ys), k)


def _map(rng: random.Random, k: int, max_set: int) -> bool:
    alpha = random_ord(rng, k + 3)
    while alpha.is_zero:
        alpha = random_ord(rng, k + 3)
    beta = random_sim_mutant(rng, alpha, k + 1)
    A = {random_below(rng, alpha) for _ in range(rng.randint(0, max_set))}
    return build_map_5_3_iv(alpha, beta, A, k).passed


def run_laws(config: LawConfig = LawConfig(), laws=LAWS) -> LawReport:
    """Each law gets its own stream seeded from config.seed, so results do not depend on which laws run."""
    report = LawReport(config)
    for index, law in enumerate(LAWS):
        if law not in laws:
            continue
        rng = random.Random(config.seed * len(LAWS) + index)
        start = time.perf_counter()
        for _ in range(config.instances):
            k = rng.randint(0, config.max_k)
            state = rng.getstate()
            if law == "canonical":
                ok = _canonical(rng, k)
            elif law == "absorption":
                ok = _absorption(rng, k)
            elif law == "sum":
                ok = _sum(rng, k, config.max_terms)
            else:
                ok = _map(rng, k, config.max_set)
            report.counts[law] += 1
            if not ok:
                report.counterexamples[law].append((k, state))
        report.seconds[law] = time.perf_counter() - start
    return report
