"""A(5): the fixed enumeration, subgroups, coset and product actions, and the
exhaustive intersection and orbit-length checks plus the degree 30 and 60 splittings."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from .perm import Permutation, PermTuple, Raw, compose, invert, orbits_raw

SCOPE_NOTE = ("scope: Lemma 3.5 is checked on its constructive case families "
              "(twisted regular pairs, product actions), not on all commuting pairs")


# ---------------------------------------------------------------- tables

@dataclass(frozen=True)
class GroupTable:
    elements: tuple[Raw, ...]
    product: tuple[tuple[int, ...], ...]
    inverse: tuple[int, ...]
    index: dict = field(compare=False, repr=False)

    @classmethod
    def from_elements(cls, elements: Sequence[Raw]) -> "GroupTable":
        elements = tuple(tuple(e) for e in elements)
        index = {e: i for i, e in enumerate(elements)}
        product = tuple(tuple(index[compose(a, b)] for b in elements) for a in elements)
        inverse = tuple(index[invert(a)] for a in elements)
        return cls(elements, product, inverse, index)

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return self.product[i][j]

    def conj(self, i: int, a: int) -> int:
        """a^-1 a_i a."""
        return self.product[self.product[self.inverse[a]][i]][a]

    def element_order(self, i: int) -> int:
        k, x = 1, i
        while x != 0:
            x = self.product[x][i]
            k += 1
        return k

    def perm(self, i: int) -> Permutation:
        return Permutation(self.elements[i])

    def lookup(self, p: Permutation | Raw) -> int:
        images = p.images if isinstance(p, Permutation) else tuple(p)
        return self.index[images]

    def closure(self, gens: Sequence[int]) -> frozenset[int]:
        return frozenset(_closure(self.product, gens))


def _closure(product, gens, limit=None):
    seen = {0}
    queue = [0]
    i = 0
    while i < len(queue):
        x = queue[i]
        i += 1
        row = product[x]
        for g in gens:
            y = row[g]
            if y not in seen:
                seen.add(y)
                queue.append(y)
                if limit is not None and len(seen) > limit:
                    return None
    return seen


def _sign(p: Raw) -> int:
    s = 1
    for c in Permutation(p).cycles():
        if len(c) % 2 == 0:
            s = -s
    return s


@lru_cache(maxsize=None)
def s5_table() -> GroupTable:
    return GroupTable.from_elements(list(itertools.permutations(range(5))))


@lru_cache(maxsize=None)
def a5_table() -> GroupTable:
    return GroupTable.from_elements([p for p in itertools.permutations(range(5)) if _sign(p) == 1])


def a5_index(text: str) -> int:
    return a5_table().lookup(Permutation.parse(text, 5))


# ---------------------------------------------------------------- subgroups

@dataclass(frozen=True)
class Subgroup:
    members: frozenset[int]
    parent: GroupTable = field(compare=False, repr=False, hash=False)

    @property
    def order(self) -> int:
        return len(self.members)

    def conjugate(self, a: int) -> "Subgroup":
        return Subgroup(frozenset(self.parent.conj(x, a) for x in self.members), self.parent)

    def key(self):
        return (self.order, tuple(sorted(self.members)))

    def __str__(self) -> str:
        return f"order {self.order} {{" + ", ".join(str(self.parent.perm(i)) for i in sorted(self.members)) + "}"


def is_subgroup(G: GroupTable, members) -> bool:
    s = set(members)
    return 0 in s and all(G.product[a][b] in s for a in s for b in s)


@lru_cache(maxsize=None)
def _all_subgroups(G: GroupTable) -> tuple[Subgroup, ...]:
    found = set()
    for i in range(G.order):
        for j in range(i, G.order):
            found.add(G.closure((i, j)))
    subs = [Subgroup(m, G) for m in found]
    subs.sort(key=Subgroup.key)
    return tuple(subs)


def all_subgroups(G: Optional[GroupTable] = None) -> list[Subgroup]:
    return list(_all_subgroups(G or a5_table()))


def conjugacy_classes(subs: Sequence[Subgroup], conjugators: Optional[Sequence[int]] = None) -> list[list[Subgroup]]:
    """Partition subgroups into classes under conjugation by the given elements."""
    if not subs:
        return []
    G = subs[0].parent
    conjugators = range(G.order) if conjugators is None else conjugators
    left = {s.members: s for s in subs}
    classes = []
    for s in subs:
        if s.members not in left:
            continue
        cls = {s.conjugate(a).members for a in conjugators}
        members = sorted((left.pop(m) for m in cls if m in left), key=Subgroup.key)
        classes.append(members)
    return classes


def class_representatives(G: Optional[GroupTable] = None) -> list[Subgroup]:
    return [c[0] for c in conjugacy_classes(all_subgroups(G))]


def stabilizer_subgroup(point: int) -> Subgroup:
    G = a5_table()
    return Subgroup(frozenset(i for i, e in enumerate(G.elements) if e[point] == point), G)


# ---------------------------------------------------------------- actions

@dataclass(frozen=True)
class CosetAction:
    subgroup: Subgroup
    cosets: tuple[frozenset[int], ...]
    action: PermTuple

    @property
    def degree(self) -> int:
        return len(self.cosets)


def right_cosets(H: Subgroup) -> tuple[tuple[frozenset[int], ...], tuple[int, ...]]:
    """Right cosets Ha ordered by least member, and the coset index of each element."""
    G = H.parent
    where = [-1] * G.order
    cosets = []
    for a in range(G.order):
        if where[a] >= 0:
            continue
        c = frozenset(G.product[h][a] for h in H.members)
        for x in c:
            where[x] = len(cosets)
        cosets.append(c)
    return tuple(cosets), tuple(where)


def coset_action(H: Subgroup) -> CosetAction:
    G = H.parent
    cosets, where = right_cosets(H)
    reps = [min(c) for c in cosets]
    perms = []
    for k in range(G.order):
        perms.append(tuple(where[G.product[r][k]] for r in reps))
    return CosetAction(H, cosets, PermTuple.from_raw(perms))


def satisfies_diag(t: PermTuple, G: Optional[GroupTable] = None) -> bool:
    """The exact diagonal condition: t_i t_j = t_k whenever a_i a_j = a_k."""
    G = G or a5_table()
    raw = t.raw
    if len(raw) != G.order:
        return False
    return all(compose(raw[i], raw[j]) == raw[G.product[i][j]]
               for i in range(G.order) for j in range(G.order))


def commute(t1: PermTuple, t2: PermTuple, gens: Optional[Sequence[int]] = None) -> bool:
    idx = range(t1.arity) if gens is None else gens
    for i in idx:
        for j in (range(t2.arity) if gens is None else gens):
            if compose(t1.raw[i], t2.raw[j]) != compose(t2.raw[j], t1.raw[i]):
                return False
    return True


@lru_cache(maxsize=None)
def a5_generators() -> tuple[int, int]:
    G = a5_table()
    for i in range(G.order):
        for j in range(i, G.order):
            if len(G.closure((i, j))) == G.order:
                return (i, j)
    raise AssertionError("A(5) is 2-generated")


# ---------------------------------------------------------------- reports

@dataclass
class LemmaReport:
    lemma: str
    passed: bool
    lines: list[str]
    violations: list[str]
    seconds: float = 0.0

    def render(self, machine: bool = False) -> str:
        status = "PASS" if self.passed else "FAIL"
        if machine:
            out = [f"lemma\t{self.lemma}", f"status\t{status}", f"violations\t{len(self.violations)}"]
            out += [f"line\t{x}" for x in self.lines]
            out += [f"witness\t{x}" for x in self.violations]
            return "\n".join(out)
        out = [f"Lemma {self.lemma}: {status}"]
        out += ["  " + x for x in self.lines]
        out += ["  counterexample: " + x for x in self.violations]
        return "\n".join(out)


def _intersections(H: Subgroup, K: Subgroup) -> list[int]:
    """|H ∩ a^-1 K a| for every a in the parent group."""
    G = H.parent
    return [len(H.members & K.conjugate(a).members) for a in range(G.order)]


def check_lemma_3_3() -> LemmaReport:
    start = time.perf_counter()
    G = a5_table()
    proper = [s for s in all_subgroups(G) if s.order < G.order]
    conj = {s.members: [s.conjugate(a).members for a in range(G.order)] for s in proper}
    violations = []
    table = {}
    for H in proper:
        for K in proper:
            sizes = [len(H.members & c) for c in conj[K.members]]
            m = min(sizes)
            a = sizes.index(m)
            key = (H.order, K.order)
            lo, hi, wit = table.get(key, (m, m, str(G.perm(a))))
            table[key] = (min(lo, m), max(hi, m), wit)
            if m > 3:
                violations.append(f"H={H} K={K} min={m}")
            elif m == 3 and not (H.order == K.order == 12):
                violations.append(f"H={H} K={K} min=3 with orders {H.order},{K.order}")
    orders = sorted({s.order for s in all_subgroups(G)})
    lines = [f"subgroups: {len(all_subgroups(G))}",
             f"orders: {' '.join(map(str, orders))}",
             f"proper pairs checked: {len(proper) ** 2}"]
    for (h, k), (lo, hi, wit) in sorted(table.items()):
        lines.append(f"|H|={h} |K|={k} min over a ranges {lo}..{hi}, first witness a={wit}")
    return LemmaReport("3.3", not violations, lines, violations, time.perf_counter() - start)


# ---------------------------------------------------------------- A5 x A5

class Square:
    """A(5) x A(5) restricted to elements whose order divides 6, indexed
    by i*60 + j."""

    def __init__(self):
        G = a5_table()
        self.G = G
        small = [i for i in range(G.order) if G.element_order(i) in (1, 2, 3)]
        self.elements = [i * 60 + j for i in small for j in small]
        self.pos = {e: k for k, e in enumerate(self.elements)}
        n = len(self.elements)
        pr = G.product
        rows = []
        for x in self.elements:
            x1, x2 = divmod(x, 60)
            row = []
            for y in self.elements:
                y1, y2 = divmod(y, 60)
                row.append(self.pos.get(pr[x1][y1] * 60 + pr[x2][y2], -1))
            rows.append(tuple(row))
        self.product = tuple(rows)
        assert self.elements[0] == 0 and n == 1296

    def closure(self, gens, limit=36):
        seen = {0}
        queue = [0]
        i = 0
        pr = self.product
        while i < len(queue):
            row = pr[queue[i]]
            i += 1
            for g in gens:
                y = row[g]
                if y < 0:
                    return None
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
                    if len(seen) > limit:
                        return None
        if 36 % len(seen):
            return None
        return frozenset(self.elements[k] for k in seen)

    def conjugate(self, members, a):
        a1, a2 = divmod(a, 60)
        c = self.G.conj
        return frozenset(c(x // 60, a1) * 60 + c(x % 60, a2) for x in members)

    def class_reps(self):
        """One element per conjugacy class of A5 x A5 among the order-dividing-6 elements."""
        G = self.G
        reps = []
        seen = set()
        for x in self.elements:
            if x in seen:
                continue
            reps.append(x)
            x1, x2 = divmod(x, 60)
            c1 = {G.conj(x1, a) for a in range(60)}
            c2 = {G.conj(x2, a) for a in range(60)}
            seen.update(u * 60 + v for u in c1 for v in c2)
        return reps


def diagonal_meet(square: Square, members, a) -> int:
    a1, a2 = divmod(a, 60)
    c = square.G.conj
    return sum(1 for x in members if c(x // 60, a1) == c(x % 60, a2))


def enumerate_square_subgroups(orders=(12, 36)) -> dict:
    """Subgroups of A5 x A5 of the given orders (all divisors of 36).

    Pairs (r, x) with r a class representative cover every 2-generated
    subgroup up to conjugacy; extending those by one more element covers the
    3-generated ones. Conjugation then recovers every member of each class.
    """
    sq = Square()
    reps = [sq.pos[r] for r in sq.class_reps()]
    n = len(sq.elements)
    two_gen = set()
    for r in reps:
        for x in range(n):
            s = sq.closure((r, x))
            if s is not None:
                two_gen.add(s)
    three_gen = set()
    for s in two_gen:
        gens = _small_generators(sq, s)
        covered = set()
        for x in range(n):
            e = sq.elements[x]
            if e in s or e in covered:
                continue
            t = sq.closure(tuple(gens) + (x,))
            if t is None:
                continue
            covered.update(sq.elements[y] for y in (sq.product[sq.pos[e0]][x] for e0 in s) if y >= 0)
            if t not in two_gen:
                three_gen.add(t)
    def conjugation_closure(found):
        every = set()
        for m in sorted(found, key=lambda m: (len(m), sorted(m))):
            if m not in every:
                every.update(sq.conjugate(m, a) for a in range(3600))
        return every

    from_pairs = conjugation_closure({m for m in two_gen if len(m) in orders})
    every = conjugation_closure({m for m in two_gen | three_gen if len(m) in orders})
    return {"square": sq, "subgroups": every, "from_pairs": from_pairs}


def _small_generators(sq: Square, members) -> list[int]:
    gens = []
    cur = frozenset({0})
    for e in sorted(members):
        if e not in cur:
            gens.append(sq.pos[e])
            cur = sq.closure(tuple(gens))
    return gens


def check_lemma_3_4() -> LemmaReport:
    start = time.perf_counter()
    data = enumerate_square_subgroups()
    sq = data["square"]
    subs = sorted(data["subgroups"], key=lambda m: (len(m), sorted(m)))
    violations = []
    by_order = {}
    first_witness = {}
    for m in subs:
        wit = None
        for a in range(3600):
            k = diagonal_meet(sq, m, a)
            if len(m) % k:
                violations.append(f"Lagrange fails for {sorted(m)}")
            if k != 3:
                wit = (a, k)
                break
        by_order[len(m)] = by_order.get(len(m), 0) + 1
        if wit is None:
            violations.append("no witness for H=" + _square_text(sq, m))
        elif wit[0] != 0:
            first_witness[len(m)] = first_witness.get(len(m), 0) + 1
    lines = [f"subgroups of order 12 or 36 from generator pairs: {len(data['from_pairs'])}",
             f"additional ones needing three generators: {len(data['subgroups']) - len(data['from_pairs'])}"]
    for o in sorted(by_order):
        lines.append(f"order {o}: {by_order[o]} subgroups, "
                     f"{first_witness.get(o, 0)} need a non-identity conjugator")
    return LemmaReport("3.4", not violations, lines, violations, time.perf_counter() - start)


def _square_text(sq, members) -> str:
    G = sq.G
    return "{" + ", ".join(f"({G.perm(x // 60)},{G.perm(x % 60)})" for x in sorted(members)) + "}"


# ---------------------------------------------------------------- commuting transitive pairs

def twisted_regular_pair(s: int) -> tuple[PermTuple, PermTuple]:
    """Right regular f̄ and the left regular ḡ twisted by s in S(5), on the
    60 points a_0..a_59: a_i f_j = a_i a_j, a_i g_j = (s^-1 a_j^-1 s) a_i."""
    G = a5_table()
    theta = _twist(s)
    f = [tuple(G.product[i][j] for i in range(60)) for j in range(60)]
    g = [tuple(G.product[theta[j]][i] for i in range(60)) for j in range(60)]
    return PermTuple.from_raw(f), PermTuple.from_raw(g)


def _twist(s: int) -> list[int]:
    G, S = a5_table(), s5_table()
    si = S.inverse[s]
    out = []
    for j in range(60):
        x = S.index[G.elements[G.inverse[j]]]
        out.append(G.index[S.elements[S.product[S.product[si][x]][s]]])
    return out


def a5_centralizer_order(x: int) -> int:
    """|C_{A(5)}(x)| for x an element of S(5)."""
    G, S = a5_table(), s5_table()
    return sum(1 for a in range(60) if S.product[S.index[G.elements[a]]][x] == S.product[x][S.index[G.elements[a]]])


def _length_conclusion(lengths) -> bool:
    lengths = set(lengths)
    if not any(x >= 20 for x in lengths):
        return False
    if 20 in lengths and not any(x > 1 and x != 20 for x in lengths):
        return False
    return True


def check_lemma_3_5_case1(full_diag_for: Sequence[int] = ()) -> LemmaReport:
    start = time.perf_counter()
    G, S = a5_table(), s5_table()
    gens = a5_generators()
    violations = []
    per_parity = {1: set(), -1: set()}
    cent_orders = set()
    for s in range(S.order):
        f, g = twisted_regular_pair(s)
        if not commute(f, g, gens):
            violations.append(f"s={S.perm(s)}: f and g do not commute")
        theta = _twist(s)
        # the twist is an anti-homomorphism, which is diag for left multiplication
        if any(theta[G.product[i][j]] != G.product[theta[j]][theta[i]] for i in range(60) for j in range(60)):
            violations.append(f"s={S.perm(s)}: g fails diag")
        if s in full_diag_for and not satisfies_diag(g):
            violations.append(f"s={S.perm(s)}: g fails diag (direct)")
        fg = [compose(f.raw[j], g.raw[j]) for j in range(60)]
        lengths = set()
        for block in orbits_raw(fg, 60):
            i = block[0]
            c = a5_centralizer_order(S.product[s][S.index[G.elements[i]]])
            cent_orders.add(c)
            if 60 // c != len(block):
                violations.append(f"s={S.perm(s)}: orbit of a_{i} has length {len(block)}, expected {60 // c}")
            lengths.add(len(block))
        per_parity[_sign(S.elements[s])] |= {frozenset(lengths)}
        if not _length_conclusion(lengths):
            violations.append(f"s={S.perm(s)}: orbit lengths {sorted(lengths)}")
    lines = [SCOPE_NOTE]
    for par, name in ((1, "even"), (-1, "odd")):
        for ls in sorted(per_parity[par], key=sorted):
            lines.append(f"{name} s: orbit lengths {' '.join(map(str, sorted(ls)))}")
    lines.append(f"centralizer orders of s a_i in A(5): {' '.join(map(str, sorted(cent_orders)))}")
    return LemmaReport("3.5 case 1", not violations, lines, violations, time.perf_counter() - start)


def product_action(H: Subgroup, K: Subgroup) -> tuple[PermTuple, PermTuple]:
    """ḡ on the first factor and h̄ on the second factor of [A5:H] x [A5:K];
    point (i, j) is numbered i * [A5:K] + j."""
    G = H.parent
    ch, wh = right_cosets(H)
    ck, wk = right_cosets(K)
    rh = [min(c) for c in ch]
    rk = [min(c) for c in ck]
    nk = len(ck)
    g, h = [], []
    for k in range(G.order):
        img_h = [wh[G.product[r][k]] for r in rh]
        img_k = [wk[G.product[r][k]] for r in rk]
        g.append(tuple(img_h[i] * nk + j for i in range(len(ch)) for j in range(nk)))
        h.append(tuple(i * nk + img_k[j] for i in range(len(ch)) for j in range(nk)))
    return PermTuple.from_raw(g), PermTuple.from_raw(h)


def diagonal_orbit_lengths(H: Subgroup, K: Subgroup) -> set[int]:
    """Orbit lengths of the diagonal action on [A5:H] x [A5:K] from stabilizers
    H ∩ a^-1 K a (one per double coset)."""
    return {H.parent.order // x for x in _intersections(H, K)}


def check_lemma_3_5_products() -> LemmaReport:
    start = time.perf_counter()
    G = a5_table()
    proper = [s for s in all_subgroups(G) if s.order < 60]
    reps = [c[0] for c in conjugacy_classes(proper)]
    gens = a5_generators()
    violations = []
    lines = [SCOPE_NOTE]
    for H in reps:
        for K in reps:
            g, h = product_action(H, K)
            n = g.ground_size
            if not commute(g, h, gens):
                violations.append(f"|H|={H.order} |K|={K.order}: factors do not commute")
            if len(orbits_raw(g.raw + h.raw, n)) != 1:
                violations.append(f"|H|={H.order} |K|={K.order}: not transitive")
            diag = [compose(g.raw[j], h.raw[j]) for j in range(60)]
            direct = {len(b) for b in orbits_raw(diag, n)}
            if direct != diagonal_orbit_lengths(H, K):
                violations.append(f"|H|={H.order} |K|={K.order}: orbit lengths disagree")
            if not _length_conclusion(direct):
                violations.append(f"|H|={H.order} |K|={K.order}: orbit lengths {sorted(direct)}")
            lines.append(f"|H|={H.order:2d} |K|={K.order:2d} degree {n:4d}: "
                         f"diagonal orbit lengths {' '.join(map(str, sorted(direct)))}")
    bad = 0
    for H in proper:
        for K in proper:
            if not _length_conclusion(diagonal_orbit_lengths(H, K)):
                bad += 1
                violations.append(f"H={H} K={K}")
    lines.append(f"all {len(proper) ** 2} ordered pairs of proper subgroups checked by stabilizers, {bad} failures")
    return LemmaReport("3.5 products", not violations, lines, violations, time.perf_counter() - start)


# ---------------------------------------------------------------- splitting

def _find_pair(S: frozenset[int], order_h: int, order_k: int) -> tuple[Subgroup, Subgroup]:
    subs = all_subgroups()
    for H in subs:
        if H.order != order_h or not S <= H.members:
            continue
        for K in subs:
            if K.order == order_k and H.members & K.members == S:
                return H, K
    raise ValueError(f"no subgroups of orders {order_h}, {order_k} meet in the stabilizer")


def _decompose(t: PermTuple, degree: int, order_h: int, order_k: int) -> tuple[PermTuple, PermTuple]:
    G = a5_table()
    if t.arity != 60 or not satisfies_diag(t):
        raise ValueError("input does not act as A(5) through the fixed enumeration")
    raw = t.raw
    n = t.ground_size
    g = [list(range(n)) for _ in range(60)]
    h = [list(range(n)) for _ in range(60)]
    for block in t.orbits():
        if len(block) == 1:
            continue
        if len(block) != degree:
            raise ValueError(f"orbit of size {len(block)}, expected {degree}")
        y0 = block[0]
        stab = frozenset(k for k in range(60) if raw[k][y0] == y0)
        H, K = _find_pair(stab, order_h, order_k)
        _, wh = right_cosets(H)
        _, wk = right_cosets(K)
        label = {}
        point = {}
        for k in range(60):
            y = raw[k][y0]
            lab = (wh[k], wk[k])
            if y in label and label[y] != lab:
                raise AssertionError("labelling is not well defined")
            label[y] = lab
            point[lab] = y
        if len(point) != degree:
            raise AssertionError("labelling is not a bijection")
        reps_h = {}
        reps_k = {}
        for k in range(60):
            reps_h.setdefault(wh[k], k)
            reps_k.setdefault(wk[k], k)
        for y in block:
            i, j = label[y]
            for m in range(60):
                g[m][y] = point[(wh[G.product[reps_h[i]][m]], j)]
                h[m][y] = point[(i, wk[G.product[reps_k[j]][m]])]
    gt, ht = PermTuple.from_raw([tuple(x) for x in g]), PermTuple.from_raw([tuple(x) for x in h])
    recomposed = tuple(compose(a, b) for a, b in zip(gt.raw, ht.raw))
    if recomposed != raw:
        raise AssertionError("factors do not recompose to the input")
    return gt, ht


def decompose_30(t: PermTuple) -> tuple[PermTuple, PermTuple]:
    """Split degree-30 A(5) actions as commuting degree-5 and degree-6 factors."""
    return _decompose(t, 30, 12, 10)


def decompose_60(t: PermTuple) -> tuple[PermTuple, PermTuple]:
    """Split degree-60 A(5) actions as commuting degree-5 and degree-12 factors."""
    return _decompose(t, 60, 12, 5)


def nu(t: PermTuple, degree: int) -> int:
    """Number of orbits of the given size on which t acts nontrivially."""
    return sum(1 for b in t.orbits() if len(b) == degree and degree > 1)


def lemma_reports(which: Optional[str] = None) -> list[LemmaReport]:
    out = []
    if which in (None, "3.3"):
        out.append(check_lemma_3_3())
    if which in (None, "3.4"):
        out.append(check_lemma_3_4())
    if which in (None, "3.5"):
        out.append(check_lemma_3_5_case1())
        out.append(check_lemma_3_5_products())
    return out

