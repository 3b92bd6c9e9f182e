"""Finite permutations, tuples of permutations, orbit types and censuses.

Permutations act on the right: ``(f * g)`` applies ``f`` first, then ``g``,
and ``t.conjugate(h)`` is ``h^-1 t h``.
"""

from __future__ import annotations

import hashlib
import re
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence, Union

Raw = tuple[int, ...]

_CYCLES = re.compile(r"\s*(?:\(\s*(?:\d+(?:\s+\d+)*)?\s*\)\s*)*")


class Convention(str, Enum):
    INCLUDE_TRIVIAL = "include_trivial"
    EXCLUDE_TRIVIAL = "exclude_trivial"


INCLUDE = Convention.INCLUDE_TRIVIAL
EXCLUDE = Convention.EXCLUDE_TRIVIAL


# ---------------------------------------------------------------- permutations

@dataclass(frozen=True)
class Permutation:
    images: Raw

    def __post_init__(self):
        images = tuple(self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection of 0..{len(images) - 1}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        images = list(range(n))
        seen = set()
        for cyc in cycles:
            for p in cyc:
                if not 0 <= p < n:
                    raise ValueError(f"point {p} outside ground set of size {n}")
                if p in seen:
                    raise ValueError(f"point {p} repeated in cycle notation")
                seen.add(p)
            for a, b in zip(cyc, tuple(cyc[1:]) + tuple(cyc[:1])):
                images[a] = b
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, n: int) -> "Permutation":
        text = text.strip()
        if not _CYCLES.fullmatch(text):
            raise ValueError(f"bad cycle notation: {text!r}")
        cycles = [[int(x) for x in body.split()] for body in re.findall(r"\(([^()]*)\)", text)]
        return cls.from_cycles([c for c in cycles if c], n)

    @property
    def ground_size(self) -> int:
        return len(self.images)

    def __call__(self, p: int) -> int:
        return self.images[p]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(compose(self.images, other.images))

    def inverse(self) -> "Permutation":
        return Permutation(invert(self.images))

    def conjugate(self, h: "Permutation") -> "Permutation":
        return Permutation(conjugate(self.images, h.images))

    def support(self) -> frozenset[int]:
        return frozenset(p for p, q in enumerate(self.images) if p != q)

    def is_identity(self) -> bool:
        return all(p == q for p, q in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for p in range(len(self.images)):
            if p in seen or self.images[p] == p:
                continue
            cyc = [p]
            seen.add(p)
            q = self.images[p]
            while q != p:
                cyc.append(q)
                seen.add(q)
                q = self.images[q]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        from math import lcm
        return lcm(1, *(len(c) for c in self.cycles()))

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def compose(a: Raw, b: Raw) -> Raw:
    return tuple(b[x] for x in a)


def invert(a: Raw) -> Raw:
    out = [0] * len(a)
    for p, q in enumerate(a):
        out[q] = p
    return tuple(out)


def conjugate(a: Raw, h: Raw) -> Raw:
    out = [0] * len(a)
    for p, q in enumerate(a):
        out[h[p]] = h[q]
    return tuple(out)


# ---------------------------------------------------------------- tuples

@dataclass(frozen=True)
class PermTuple:
    entries: tuple[Permutation, ...]

    def __post_init__(self):
        entries = tuple(self.entries)
        if not entries:
            raise ValueError("a tuple needs at least one entry")
        sizes = {e.ground_size for e in entries}
        if len(sizes) != 1:
            raise ValueError(f"entries disagree on ground size: {sorted(sizes)}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_raw(cls, raw: Sequence[Raw]) -> "PermTuple":
        return cls(tuple(Permutation(tuple(r)) for r in raw))

    @classmethod
    def parse(cls, text: str, n: int) -> "PermTuple":
        return cls(tuple(Permutation.parse(part, n) for part in text.split(",")))

    @classmethod
    def identity(cls, arity: int, n: int) -> "PermTuple":
        return cls(tuple(Permutation.identity(n) for _ in range(arity)))

    @property
    def arity(self) -> int:
        return len(self.entries)

    @property
    def ground_size(self) -> int:
        return self.entries[0].ground_size

    @property
    def raw(self) -> tuple[Raw, ...]:
        return tuple(e.images for e in self.entries)

    def __getitem__(self, i: int) -> Permutation:
        return self.entries[i]

    def support(self) -> frozenset[int]:
        return frozenset().union(*(e.support() for e in self.entries))

    def conjugate(self, h: Permutation) -> "PermTuple":
        return PermTuple(tuple(e.conjugate(h) for e in self.entries))

    def orbits(self) -> list[tuple[int, ...]]:
        return orbits_raw(self.raw, self.ground_size)

    def __str__(self) -> str:
        return ", ".join(str(e) for e in self.entries)


def orbits_raw(gens: Sequence[Raw], n: int) -> list[tuple[int, ...]]:
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        block = [start]
        i = 0
        while i < len(block):
            p = block[i]
            i += 1
            for g in gens:
                q = g[p]
                if not seen[q]:
                    seen[q] = True
                    block.append(q)
        out.append(tuple(sorted(block)))
    return out


def orbits(t: PermTuple) -> list[tuple[int, ...]]:
    return t.orbits()


# ---------------------------------------------------------------- orbit types

@dataclass(frozen=True, order=True)
class OrbitType:
    arity: int
    degree: int
    certificate: tuple[Raw, ...]

    @property
    def is_trivial(self) -> bool:
        return self.degree == 1

    def action(self) -> PermTuple:
        return PermTuple.from_raw(self.certificate)

    def digest(self) -> str:
        return hashlib.sha1(repr((self.arity, self.certificate)).encode()).hexdigest()[:10]

    def cycle_summary(self) -> str:
        lens = sorted((len(c) for c in Permutation(self.certificate[0]).cycles()), reverse=True)
        fixed = self.degree - sum(lens)
        parts = [str(x) for x in lens] + ["1"] * fixed
        return "[" + " ".join(parts) + "]"

    def __str__(self) -> str:
        return "<" + "; ".join(str(Permutation(c)) for c in self.certificate) + f" on {self.degree}>"


def trivial_type(arity: int) -> OrbitType:
    return OrbitType(arity, 1, tuple((0,) for _ in range(arity)))


def _bfs_labels(local: tuple[Raw, ...], base: int) -> list[int]:
    order = [base]
    seen = {base}
    i = 0
    while i < len(order):
        p = order[i]
        i += 1
        for g in local:
            q = g[p]
            if q not in seen:
                seen.add(q)
                order.append(q)
    return order


@lru_cache(maxsize=1 << 18)
def canonical_local(local: tuple[Raw, ...]) -> tuple[tuple[Raw, ...], tuple[int, ...]]:
    """Canonical certificate of a transitive action on 0..m-1.

    Returns the certificate and the BFS order (new label -> old point) that
    produced it.
    """
    m = len(local[0])
    best = None
    best_order = None
    for base in range(m):
        order = _bfs_labels(local, base)
        if len(order) != m:
            raise ValueError("action is not transitive")
        label = [0] * m
        for k, p in enumerate(order):
            label[p] = k
        cert = tuple(tuple(label[g[p]] for p in order) for g in local)
        if best is None or cert < best:
            best = cert
            best_order = tuple(order)
    return best, best_order


def _local_action(gens: Sequence[Raw], block: Sequence[int]) -> tuple[Raw, ...]:
    pos = {p: k for k, p in enumerate(block)}
    try:
        return tuple(tuple(pos[g[p]] for p in block) for g in gens)
    except KeyError:
        raise ValueError("point set is not closed under the tuple") from None


def canonical_type(t: PermTuple, orbit: Iterable[int]) -> OrbitType:
    block = tuple(sorted(set(orbit)))
    if not block:
        raise ValueError("empty orbit")
    local = _local_action(t.raw, block)
    if len(_bfs_labels(local, 0)) != len(block):
        raise ValueError("point set is not a single orbit")
    cert, _ = canonical_local(local)
    return OrbitType(t.arity, len(block), cert)


def type_of_action(local: Sequence[Raw]) -> OrbitType:
    local = tuple(tuple(g) for g in local)
    cert, _ = canonical_local(local)
    return OrbitType(len(local), len(local[0]), cert)


def type_product(t1: OrbitType, t2: OrbitType) -> OrbitType:
    """Orbit type of (f̄1, f̄2) on A1 x A2 where f̄1 moves the second factor
    and f̄2 the first, so the two blocks of coordinates commute."""
    m1, m2 = t1.degree, t2.degree

    def pt(a, b):
        return a * m1 + b

    gens = []
    for g in t1.certificate:
        gens.append(tuple(pt(a, g[b]) for a in range(m2) for b in range(m1)))
    for g in t2.certificate:
        gens.append(tuple(pt(g[a], b) for a in range(m2) for b in range(m1)))
    return type_of_action(gens)


# ---------------------------------------------------------------- censuses

@dataclass(frozen=True)
class Census:
    arity: int
    counts: tuple[tuple[OrbitType, int], ...]
    convention: Convention = INCLUDE

    def __post_init__(self):
        items = sorted((t, c) for t, c in self.counts if c)
        for t, c in items:
            if t.arity != self.arity:
                raise ValueError("orbit type arity differs from census arity")
            if c < 0:
                raise ValueError("negative count")
            if self.convention is EXCLUDE and t.is_trivial:
                raise ValueError("exclude_trivial census cannot count the trivial type")
        object.__setattr__(self, "counts", tuple(items))
        object.__setattr__(self, "convention", Convention(self.convention))

    @classmethod
    def from_mapping(cls, arity: int, mapping: Mapping[OrbitType, int],
                     convention: Convention = INCLUDE) -> "Census":
        return cls(arity, tuple(mapping.items()), convention)

    def as_dict(self) -> dict[OrbitType, int]:
        return dict(self.counts)

    def __getitem__(self, t: OrbitType) -> int:
        for u, c in self.counts:
            if u == t:
                return c
        return 0

    @property
    def weight(self) -> int:
        return sum(t.degree * c for t, c in self.counts)

    def with_convention(self, convention: Convention, ground_size: Optional[int] = None) -> "Census":
        convention = Convention(convention)
        if convention is self.convention:
            return self
        d = self.as_dict()
        triv = trivial_type(self.arity)
        if convention is EXCLUDE:
            d.pop(triv, None)
        else:
            if ground_size is None:
                raise ValueError("ground size needed to pad with fixed points")
            pad = ground_size - self.weight
            if pad < 0:
                raise ValueError("weight exceeds ground size")
            d[triv] = pad
        return Census.from_mapping(self.arity, d, convention)

    def lines(self) -> list[str]:
        out = [f"{t.digest()}: {c}" for t, c in self.counts]
        out.sort()
        if self.arity == 1:
            summary = " ".join(f"{t.cycle_summary()}x{c}" for t, c in self.counts)
            out.append(f"cycles: {summary}")
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())


def census_raw(gens: Sequence[Raw], n: int, convention: Convention = INCLUDE) -> Census:
    counts: Counter = Counter()
    arity = len(gens)
    for block in orbits_raw(gens, n):
        if len(block) == 1 and convention is EXCLUDE:
            continue
        cert, _ = canonical_local(_local_action(gens, block))
        counts[OrbitType(arity, len(block), cert)] += 1
    return Census(arity, tuple(counts.items()), Convention(convention))


def census(t: PermTuple, convention: Convention = INCLUDE) -> Census:
    return census_raw(t.raw, t.ground_size, Convention(convention))


def tuples_conjugate(t1: PermTuple, t2: PermTuple) -> Optional[Permutation]:
    """A witness h with t1^h = t2, or None when the tuples are not conjugate."""
    if t1.ground_size != t2.ground_size or t1.arity != t2.arity:
        raise ValueError("tuples must share ground set and arity")
    n = t1.ground_size

    def typed_blocks(t):
        out = {}
        for block in t.orbits():
            local = _local_action(t.raw, block)
            cert, order = canonical_local(local)
            key = OrbitType(t.arity, len(block), cert)
            out.setdefault(key, []).append(tuple(block[k] for k in order))
        return out

    b1, b2 = typed_blocks(t1), typed_blocks(t2)
    if {k: len(v) for k, v in b1.items()} != {k: len(v) for k, v in b2.items()}:
        return None
    h = [0] * n
    for key, blocks in b1.items():
        for src, dst in zip(blocks, b2[key]):
            for p, q in zip(src, dst):
                h[p] = q
    h = Permutation(tuple(h))
    if t1.conjugate(h) != t2:
        raise AssertionError("conjugator construction failed")
    return h


def realize(c: Census, ground_size: int) -> PermTuple:
    if c.weight > ground_size:
        raise ValueError(f"census weight {c.weight} exceeds ground size {ground_size}")
    if c.convention is INCLUDE and c.weight != ground_size:
        raise ValueError("include_trivial census must have weight equal to the ground size")
    return PermTuple.from_raw(realize_raw(c, ground_size))


def realize_raw(c: Census, ground_size: int) -> tuple[Raw, ...]:
    images = [list(range(ground_size)) for _ in range(c.arity)]
    offset = 0
    for t, cnt in c.counts:
        for _ in range(cnt):
            for i, g in enumerate(t.certificate):
                for p in range(t.degree):
                    images[i][offset + p] = offset + g[p]
            offset += t.degree
    return tuple(tuple(im) for im in images)


Coord = Union[int, None, tuple]


def _coord_gen(gens: Sequence[Raw], c: Coord, m: int) -> Raw:
    if c is None:
        return tuple(range(m))
    if isinstance(c, tuple):
        out = tuple(range(m))
        for i in c:
            out = compose(out, gens[i])
        return out
    return gens[c]


def _reindex_gens(gens: Sequence[Raw], coords: Sequence[Coord], m: int) -> tuple[Raw, ...]:
    return tuple(_coord_gen(gens, c, m) for c in coords)


def _check_coords(coords: Sequence[Coord], arity: int) -> None:
    if not coords:
        raise ValueError("empty coordinate map")
    for c in coords:
        for i in (c if isinstance(c, tuple) else () if c is None else (c,)):
            if not 0 <= i < arity:
                raise ValueError(f"coordinate {i} out of range for arity {arity}")


@lru_cache(maxsize=1 << 18)
def type_reindex(t: OrbitType, coords: tuple[Coord, ...]) -> tuple[tuple[OrbitType, int], ...]:
    """Sub-orbit types of a reindexed certificate with their multiplicities |B_{t't}|.

    A coordinate is a source index, ``None`` for the identity, or a tuple of
    indices standing for the product of those entries in order.
    """
    _check_coords(coords, t.arity)
    gens = _reindex_gens(t.certificate, coords, t.degree)
    counts: Counter = Counter()
    for block in orbits_raw(gens, t.degree):
        cert, _ = canonical_local(_local_action(gens, block))
        counts[OrbitType(len(coords), len(block), cert)] += 1
    return tuple(sorted(counts.items()))


def census_reindex(c: Census, coords: Sequence[Coord]) -> Census:
    """Select, duplicate or permute coordinates; ``None`` inserts an identity coordinate."""
    coords = tuple(coords)
    _check_coords(coords, c.arity)
    counts: Counter = Counter()
    for t, cnt in c.counts:
        for sub, mult in type_reindex(t, coords):
            if c.convention is EXCLUDE and sub.is_trivial:
                continue
            counts[sub] += mult * cnt
    return Census(len(coords), tuple(counts.items()), c.convention)


def project(c: Census, n: int) -> Census:
    return census_reindex(c, tuple(range(n)))


def restrict(t: PermTuple, points: Iterable[int]) -> PermTuple:
    s = set(points)
    for g in t.raw:
        if any(g[p] not in s for p in s):
            raise ValueError("set is not a union of orbits")
    return PermTuple.from_raw(tuple(tuple(g[p] if p in s else p for p in range(len(g))) for g in t.raw))


def pointwise_product(t1: PermTuple, t2: PermTuple) -> PermTuple:
    if t1.arity != t2.arity or t1.ground_size != t2.ground_size:
        raise ValueError("tuples must share ground set and arity")
    return PermTuple.from_raw(tuple(compose(a, b) for a, b in zip(t1.raw, t2.raw)))


def inverse_tuple(t: PermTuple) -> PermTuple:
    return PermTuple.from_raw(tuple(invert(g) for g in t.raw))
