"""Ordinals in base-Ω Cantor normal form, with countable coefficients.

``Small`` is an ordinal below epsilon_0 in base-ω normal form; it stands in for
the coefficients below Ω. ``Ord`` is

    Ω^ω·omega + ... + Ω^n·c_n + ... + Ω·c_1 + c_0

with ``omega`` itself an ``Ord`` (or zero) and finitely many non-zero c_n.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Union

MAX_DEPTH = 2  # nesting depth of omega parts


# ---------------------------------------------------------------- small ordinals

@dataclass(frozen=True)
class Small:
    """Base-ω normal form: terms (exponent, coefficient) with strictly decreasing exponents."""
    terms: tuple = ()
    # nested tuples whose lexicographic order is the ordinal order
    key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for i, (e, c) in enumerate(self.terms):
            if not isinstance(e, Small) or not isinstance(c, int) or c <= 0:
                raise ValueError("malformed small ordinal term")
            if i and not small_cmp(self.terms[i - 1][0], e) > 0:
                raise ValueError("exponents must strictly decrease")
        object.__setattr__(self, "key", tuple((e.key, c) for e, c in self.terms))

    @staticmethod
    def of(n: int) -> "Small":
        if n < 0:
            raise ValueError("negative ordinal")
        return Small(((SZERO, n),)) if n else SZERO

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero

    @property
    def is_limit(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].is_zero

    def as_int(self) -> Optional[int]:
        if not self.terms:
            return 0
        if len(self.terms) == 1 and self.terms[0][0].is_zero:
            return self.terms[0][1]
        return None

    def __add__(self, other: "Small") -> "Small":
        return small_add(self, other)

    def __lt__(self, other: "Small") -> bool:
        return small_cmp(self, other) < 0

    def __le__(self, other: "Small") -> bool:
        return small_cmp(self, other) <= 0

    def __str__(self) -> str:
        return small_text(self)


SZERO = Small(())
SONE = Small(((SZERO, 1),))
SOMEGA = Small(((SONE, 1),))


def small_cmp(a: Small, b: Small) -> int:
    ka, kb = a.key, b.key
    return (ka > kb) - (ka < kb)


def small_add(a: Small, b: Small) -> Small:
    if b.is_zero:
        return a
    lead = b.terms[0][0]
    kept = [t for t in a.terms if small_cmp(t[0], lead) > 0]
    same = [c for e, c in a.terms if small_cmp(e, lead) == 0]
    first = (lead, b.terms[0][1] + (same[0] if same else 0))
    return Small(tuple(kept) + (first,) + b.terms[1:])


def small_sub(a: Small, b: Small) -> Small:
    """The least x with a + x = b (requires a <= b)."""
    if small_cmp(a, b) > 0:
        raise ValueError(f"cannot subtract {a} from the smaller {b}")
    for i, (tb, ta) in enumerate(zip(b.terms, a.terms + ((None, 0),) * len(b.terms))):
        if ta[0] is None or tb != ta:
            if ta[0] is not None and small_cmp(tb[0], ta[0]) == 0:
                return Small(((tb[0], tb[1] - ta[1]),) + b.terms[i + 1:])
            return Small(b.terms[i:])
    return SZERO


def small_text(a: Small) -> str:
    if a.is_zero:
        return "0"
    parts = []
    for e, c in a.terms:
        if e.is_zero:
            parts.append(str(c))
            continue
        n = e.as_int()
        base = "w" if n == 1 else f"w^{n}" if n is not None else f"w^({small_text(e)})"
        parts.append(base if c == 1 else f"{base}*{c}")
    return "+".join(parts)


# ---------------------------------------------------------------- base-Ω ordinals

class Cofinality(Enum):
    ZERO = "0"
    ONE = "1"
    OMEGA = "w"
    BIG = "W"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Ord:
    omega: Optional["Ord"] = None
    levels: tuple = ()  # ((n, Small), ...) with n strictly decreasing, coefficients non-zero

    def __post_init__(self):
        if self.omega is not None and self.omega.is_zero:
            object.__setattr__(self, "omega", None)
        levels = tuple((int(n), c if isinstance(c, Small) else Small.of(c)) for n, c in self.levels)
        for i, (n, c) in enumerate(levels):
            if n < 0 or c.is_zero:
                raise ValueError("levels need non-negative indices and non-zero coefficients")
            if i and levels[i - 1][0] <= n:
                raise ValueError("levels must strictly decrease")
        object.__setattr__(self, "levels", levels)
        if self.depth() > MAX_DEPTH + 1:
            raise ValueError(f"omega-part nesting exceeds depth {MAX_DEPTH}")

    @staticmethod
    def of(n: Union[int, Small]) -> "Ord":
        c = n if isinstance(n, Small) else Small.of(n)
        return Ord(None, ((0, c),)) if not c.is_zero else ZERO

    @staticmethod
    def power(n: int, c: Union[int, Small] = 1) -> "Ord":
        """Ω^n·c."""
        c = c if isinstance(c, Small) else Small.of(c)
        return Ord(None, ((n, c),)) if not c.is_zero else ZERO

    @staticmethod
    def omega_power(c: "Ord") -> "Ord":
        """Ω^ω·c."""
        return Ord(c, ())

    def depth(self) -> int:
        return 0 if self.omega is None else 1 + self.omega.depth()

    @property
    def is_zero(self) -> bool:
        return self.omega is None and not self.levels

    @property
    def is_successor(self) -> bool:
        return bool(self.levels) and self.levels[-1][0] == 0 and self.levels[-1][1].is_successor

    def coeff_map(self) -> dict[int, Small]:
        return dict(self.levels)

    def top_level(self) -> Union[int, str, None]:
        if self.omega is not None:
            return "w"
        return self.levels[0][0] if self.levels else None

    def __add__(self, other: "Ord") -> "Ord":
        return add(self, other)

    def __lt__(self, other: "Ord") -> bool:
        return compare(self, other) < 0

    def __le__(self, other: "Ord") -> bool:
        return compare(self, other) <= 0

    def __gt__(self, other: "Ord") -> bool:
        return compare(self, other) > 0

    def __ge__(self, other: "Ord") -> bool:
        return compare(self, other) >= 0

    def __str__(self) -> str:
        return to_text(self)


ZERO = Ord()
ONE = Ord.of(1)


def _omega_cmp(a: Optional[Ord], b: Optional[Ord]) -> int:
    return compare(a or ZERO, b or ZERO)


def compare(a: Ord, b: Ord) -> int:
    if a.omega is not None or b.omega is not None:
        c = _omega_cmp(a.omega, b.omega)
        if c:
            return c
    for (na, ca), (nb, cb) in zip(a.levels, b.levels):
        if na != nb:
            return 1 if na > nb else -1
        c = small_cmp(ca, cb)
        if c:
            return c
    return (len(a.levels) > len(b.levels)) - (len(a.levels) < len(b.levels))


def add(a: Ord, b: Ord) -> Ord:
    """Ordinal sum: terms of a below the leading term of b are absorbed."""
    if b.is_zero:
        return a
    if b.omega is not None:
        return Ord(add(a.omega or ZERO, b.omega), b.levels)
    top, c = b.levels[0]
    kept = tuple((n, x) for n, x in a.levels if n > top)
    same = a.coeff_map().get(top, SZERO)
    return Ord(a.omega, kept + ((top, small_add(same, c)),) + b.levels[1:])


def subtract_left(b: Ord, g: Ord) -> Ord:
    """The least x with b + x = g (requires b <= g)."""
    if compare(b, g) > 0:
        raise ValueError(f"subtract_left needs {b} <= {g}")
    if _omega_cmp(b.omega, g.omega):
        return Ord(subtract_left(b.omega or ZERO, g.omega), g.levels)
    db, dg = b.coeff_map(), g.coeff_map()
    for n in sorted(set(db) | set(dg), reverse=True):
        cb, cg = db.get(n, SZERO), dg.get(n, SZERO)
        if small_cmp(cb, cg):
            rest = tuple((m, x) for m, x in g.levels if m < n)
            return Ord(None, ((n, small_sub(cb, cg)),) + rest)
    return ZERO


def ord_sum(items: Iterable[Ord]) -> Ord:
    out = ZERO
    for x in items:
        out = add(out, x)
    return out


def coeff(a: Ord, n: int) -> Small:
    """α_[n]."""
    return a.coeff_map().get(n, SZERO)


def tail(a: Ord, n: int) -> Ord:
    """α[n]: the terms at levels above n (including the omega part)."""
    return Ord(a.omega, tuple((m, c) for m, c in a.levels if m > n))


def low(a: Ord, n: int) -> Ord:
    """The terms at levels at most n, so that a = tail(a, n) + low(a, n)."""
    return Ord(None, tuple((m, c) for m, c in a.levels if m <= n))


def small_cf(c: Small) -> Cofinality:
    if c.is_zero:
        return Cofinality.ZERO
    return Cofinality.ONE if c.is_successor else Cofinality.OMEGA


def cf(a: Ord) -> Cofinality:
    """Cofinality, with cf(0) = 0 and cf(successor) = 1; coefficients are countable."""
    if a.is_zero:
        return Cofinality.ZERO
    if a.levels:
        n, c = a.levels[-1]
        if n == 0:
            return small_cf(c)
        return Cofinality.BIG if c.is_successor else Cofinality.OMEGA
    d = a.omega
    if d.is_successor:
        return Cofinality.OMEGA
    return cf(d)


_UPPER = {Cofinality.ZERO: Small.of(1), Cofinality.ONE: Small.of(2), Cofinality.OMEGA: SOMEGA,
          Cofinality.BIG: SZERO}


def upper(a: Ord, n: int) -> Small:
    """α^[n] = 1 + cf(α[n]) when that cofinality is below Ω, else 0."""
    return _UPPER[cf(tail(a, n))]


def sim_k(a: Ord, b: Ord, k: int) -> bool:
    return all(coeff(a, l) == coeff(b, l) and upper(a, l) == upper(b, l) for l in range(k + 1))


def sim_bound(a: Ord, b: Ord) -> int:
    """Beyond this level both ordinals have constant invariants."""
    top = [n for x in (a, b) for n, _ in x.levels[:1]]
    return (max(top) if top else 0) + 1


def sim_all(a: Ord, b: Ord) -> bool:
    return sim_k(a, b, sim_bound(a, b))


def canonical_k(a: Ord, k: int) -> Ord:
    """A representative below Ω^{k+2} of the ~_k class of a."""
    higher = [c for n, c in reversed(a.levels) if n > k]
    if higher:
        top = higher[0]
    elif a.omega is None:
        top = SZERO
    elif a.omega.is_successor:
        top = SOMEGA
    elif cf(a.omega) is Cofinality.OMEGA:
        top = SOMEGA
    else:
        # cf(α_ω) = Ω: a coefficient of 1 keeps cofinality Ω at level k+1
        top = SONE
    head = ((k + 1, top),) if not top.is_zero else ()
    return Ord(None, head + tuple((n, c) for n, c in a.levels if n <= k))


# ---------------------------------------------------------------- gamma and the order-preserving map

def successor(a: Ord) -> Ord:
    return add(a, ONE)


def gamma(a: Ord, A: Iterable[Ord]) -> Ord:
    """Order type of {b <= a : every element of A below a is below b}."""
    below = [x for x in A if compare(x, a) < 0]
    if not below:
        return successor(a)
    m = max(below, key=_Key)
    return successor(subtract_left(successor(m), a))


class _Key:
    __slots__ = ("v",)

    def __init__(self, v: Ord):
        self.v = v

    def __lt__(self, other: "_Key") -> bool:
        return compare(self.v, other.v) < 0


def sort_ords(items: Iterable[Ord]) -> list[Ord]:
    return sorted(set(items), key=_Key)


@dataclass
class MapReport:
    mapping: dict
    order_preserving: bool
    gamma_pairs: list = field(default_factory=list)  # (a, γ(a,A), F(a), γ(F(a),F(A)), ~_k?)

    @property
    def passed(self) -> bool:
        return self.order_preserving and all(p[-1] for p in self.gamma_pairs)


def build_map_5_3_iv(alpha: Ord, beta: Ord, A: Iterable[Ord], k: int) -> MapReport:
    """An order-preserving F: A -> beta with γ(a,A) ~_k γ(F(a),F(A)) for a in A and a = alpha."""
    if not sim_k(alpha, beta, k + 1):
        raise ValueError("the map needs alpha ~_{k+1} beta")
    A = sort_ords(A)
    if any(compare(x, alpha) >= 0 for x in A):
        raise ValueError("A must lie below alpha")
    a_head, b_head = tail(alpha, k + 1), tail(beta, k + 1)
    mapping: dict = {}
    if a_head.is_zero:
        mapping = {x: x for x in A}
    else:
        prev_a: Optional[Ord] = None
        prev_f: Optional[Ord] = None
        for x in A:
            if compare(x, a_head) < 0:
                gap = x if prev_a is None else subtract_left(successor(prev_a), x)
                c = canonical_k(gap, k)
                fx = c if prev_f is None else add(successor(prev_f), c)
                prev_a, prev_f = x, fx
            else:
                fx = add(b_head, subtract_left(a_head, x))
            mapping[x] = fx
    images = [mapping[x] for x in A]
    ordered = all(compare(images[i], images[i + 1]) < 0 for i in range(len(images) - 1))
    ordered = ordered and all(compare(v, beta) < 0 for v in images)
    report = MapReport(mapping, ordered)
    for x in A + [alpha]:
        fx = beta if x is alpha else mapping[x]
        g1, g2 = gamma(x, A), gamma(fx, images)
        report.gamma_pairs.append((x, g1, fx, g2, sim_k(g1, g2, k)))
    return report


# ---------------------------------------------------------------- random generation

def random_small(rng: random.Random, depth: int = 2, terms: int = 3, coef: int = 5) -> Small:
    if depth == 0:
        return Small.of(rng.randint(0, coef))
    exps = sort_smalls(random_small(rng, depth - 1, terms, coef) for _ in range(rng.randint(0, terms)))
    return Small(tuple((e, rng.randint(1, coef)) for e in reversed(exps)))


def sort_smalls(items: Iterable[Small]) -> list[Small]:
    out: list[Small] = []
    for x in items:
        if all(small_cmp(x, y) for y in out):
            out.append(x)
    out.sort(key=_SmallKey)
    return out


class _SmallKey:
    __slots__ = ("v",)

    def __init__(self, v: Small):
        self.v = v

    def __lt__(self, other: "_SmallKey") -> bool:
        return small_cmp(self.v, other.v) < 0


def random_ord(rng: random.Random, max_level: int = 4, omega_depth: int = 1, density: float = 0.5,
               small_depth: int = 2) -> Ord:
    om = None
    if omega_depth > 0 and rng.random() < 0.3:
        om = random_ord(rng, max_level, omega_depth - 1, density, small_depth)
    levels = []
    for n in range(max_level, -1, -1):
        if rng.random() < density:
            c = random_small(rng, small_depth)
            if not c.is_zero:
                levels.append((n, c))
    return Ord(om, tuple(levels))


def random_sim_mutant(rng: random.Random, a: Ord, k: int, tries: int = 200) -> Ord:
    """A random b with b ~_k a, built independently of canonical_k: new head, same low part."""
    head = tail(a, k)
    if head.is_zero:
        return a
    target = cf(head)
    for _ in range(tries):
        om = random_ord(rng, k + 3, 1) if rng.random() < 0.3 else None
        levels = tuple((n, random_small(rng, 1)) for n in range(k + 4, k, -1) if rng.random() < 0.5)
        levels = tuple((n, c) for n, c in levels if not c.is_zero)
        cand = Ord(om, levels)
        if not cand.is_zero and cf(cand) is target:
            return add(cand, low(a, k))
    return a


def _small_below(rng: random.Random, c: Small) -> Small:
    """A random small ordinal strictly below c > 0."""
    i = rng.randrange(len(c.terms))
    e, m = c.terms[i]
    out = list(c.terms[:i])
    if m > 1:
        out.append((e, rng.randint(1, m - 1)))
    if not e.is_zero and rng.random() < 0.7:
        out.append((_small_below(rng, e), rng.randint(1, 5)))  # exponents stay decreasing
    return Small(tuple(out))


def random_below(rng: random.Random, a: Ord) -> Ord:
    """A random ordinal strictly below a > 0: a prefix of a, one coefficient lowered, a random remainder."""
    if a.is_zero:
        raise ValueError("nothing lies below zero")
    slots = ([None] if a.omega is not None else []) + [n for n, _ in a.levels]
    n = rng.choice(slots)
    if n is None:
        om = random_below(rng, a.omega) if rng.random() < 0.7 else None
        head, below = (), (a.levels[0][0] + 1 if a.levels else 3)
    else:
        c = a.coeff_map()[n]
        cut = _small_below(rng, c)
        om, head, below = a.omega, tuple((m, x) for m, x in a.levels if m > n), n
        if not cut.is_zero:
            head += ((n, cut),)
    rest = tuple((m, random_small(rng, 1)) for m in range(below - 1, -1, -1) if rng.random() < 0.4)
    return Ord(om, head + tuple((m, x) for m, x in rest if not x.is_zero))


# ---------------------------------------------------------------- absorption and sum congruence campaign

@dataclass
class CongruenceReport:
    seed: int
    trials: int = 0
    absorption_trials: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples


def property_sum_congruence(seed: int = 0, trials: int = 1000, max_k: int = 3, length: int = 4) -> CongruenceReport:
    rng = random.Random(seed)
    report = CongruenceReport(seed)
    for _ in range(trials):
        k = rng.randint(0, max_k)
        xs = [random_ord(rng, k + 3) for _ in range(rng.randint(0, length))]
        ys = [random_sim_mutant(rng, x, k) if rng.random() < 0.5 else canonical_k(x, k) for x in xs]
        for x, y in zip(xs, ys):
            if not sim_k(x, y, k):
                report.counterexamples.append(("mutant", k, x, y))
        s1, s2 = ord_sum(xs), ord_sum(ys)
        report.trials += 1
        if not sim_k(s1, s2, k):
            report.counterexamples.append(("sum", k, xs, ys))
        a, b = random_ord(rng, k + 3), random_ord(rng, k + 3)
        if compare(a, Ord.power(k + 1)) >= 0:
            report.absorption_trials += 1
            if not sim_k(a, add(b, a), k):
                report.counterexamples.append(("absorption", k, a, b))
    return report


# ---------------------------------------------------------------- text form

class OrdinalSyntaxError(ValueError):
    pass


_TOK = re.compile(r"\s*(\d+|[Ww]|Ω|ω|[-+*^(){}])")


def _tokens(text: str) -> list[str]:
    out, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOK.match(text, pos)
        if not m:
            raise OrdinalSyntaxError(f"unexpected character at column {pos + 1}: {text[pos:]!r}")
        tok = m.group(1)
        out.append({"Ω": "W", "ω": "w"}.get(tok, tok))
        pos = m.end()
    out.append("<end>")
    return out


class _OrdParser:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self) -> str:
        return self.toks[self.i]

    def take(self, want: Optional[str] = None) -> str:
        tok = self.peek()
        if want is not None and tok != want:
            raise OrdinalSyntaxError(f"expected {want!r}, found {tok!r}")
        self.i += 1
        return tok

    def int_(self) -> int:
        tok = self.take()
        if not tok.isdigit():
            raise OrdinalSyntaxError(f"expected an integer, found {tok!r}")
        return int(tok)

    def ord_sum(self) -> Ord:
        out = self.ord_term()
        while self.peek() == "+":
            self.take()
            out = add(out, self.ord_term())
        return out

    def ord_term(self) -> Ord:
        if self.peek() != "W":
            return Ord.of(self.small_term())
        self.take()
        level: Union[int, str] = 1
        if self.peek() == "^":
            self.take()
            level = "w" if self.peek() == "w" else None
            if level == "w":
                self.take()
            else:
                level = self.int_()
        if level == "w":
            c = ONE
            if self.peek() == "*":
                self.take()
                if self.peek() == "{":
                    self.take()
                    c = self.ord_sum()
                    self.take("}")
                else:
                    c = Ord.of(self.small_factor())
            return Ord.omega_power(c)
        c = SONE
        if self.peek() == "*":
            self.take()
            c = self.small_factor()
        return Ord.power(level, c)

    def small_factor(self) -> Small:
        if self.peek() == "(":
            self.take()
            out = self.small_sum()
            self.take(")")
            return out
        if self.peek().isdigit():
            return Small.of(self.int_())
        return self.small_term()

    def small_sum(self) -> Small:
        out = self.small_term()
        while self.peek() == "+":
            self.take()
            out = small_add(out, self.small_term())
        return out

    def small_term(self) -> Small:
        if self.peek().isdigit():
            return Small.of(self.int_())
        self.take("w")
        exp = SONE
        if self.peek() == "^":
            self.take()
            if self.peek() == "(":
                self.take()
                exp = self.small_sum()
                self.take(")")
            elif self.peek() == "w":
                self.take()
                exp = SOMEGA
            else:
                exp = Small.of(self.int_())
        c = 1
        if self.peek() == "*":
            self.take()
            c = self.int_()
        return Small(((exp, c),)) if c else SZERO


def parse_ord(text: str) -> Ord:
    p = _OrdParser(text)
    out = p.ord_sum()
    if p.peek() != "<end>":
        raise OrdinalSyntaxError(f"trailing input at {p.peek()!r}")
    return out


def to_text(a: Ord) -> str:
    if a.is_zero:
        return "0"
    parts = []
    if a.omega is not None:
        parts.append("W^w" if a.omega == ONE else f"W^w*{{{to_text(a.omega)}}}")
    for n, c in a.levels:
        if n == 0:
            parts.append(small_text(c))
            continue
        base = "W" if n == 1 else f"W^{n}"
        v = c.as_int()
        parts.append(base if v == 1 else f"{base}*{v}" if v is not None else f"{base}*({small_text(c)})")
    return " + ".join(parts)
