"""Many-sorted formulas over the census structure: sorts IS_n, Card and F_n.

Connectives are shared with the group language (``Not``, ``And``, ``Or``,
``Implies``, ``Iff``); quantifiers carry a sorted variable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

from .group import And, Iff, Implies, Not, Or


@dataclass(frozen=True, order=True)
class Sort:
    kind: str  # "IS", "Card" or "F"
    n: int = 0

    def __post_init__(self):
        if self.kind not in ("IS", "Card", "F"):
            raise ValueError(f"unknown sort kind {self.kind!r}")
        if self.kind == "Card" and self.n != 0:
            raise ValueError("Card carries no arity")
        if self.kind != "Card" and self.n < 0:
            raise ValueError("negative arity")

    def __str__(self) -> str:
        return "Card" if self.kind == "Card" else f"{self.kind}{self.n}"


CARD = Sort("Card")


def IS(n: int) -> Sort:
    return Sort("IS", n)


def F(n: int) -> Sort:
    return Sort("F", n)


# ---------------------------------------------------------------- terms

@dataclass(frozen=True)
class MVar:
    index: int
    sort: Sort

    @property
    def name(self) -> str:
        prefix = {"F": "y", "IS": "t", "Card": "c"}[self.sort.kind]
        return f"{prefix}{self.index}"


@dataclass(frozen=True)
class Reindex:
    """Coordinate selection, duplication, identity insertion (None) or products (tuples)."""
    term: "Term"
    coords: tuple


@dataclass(frozen=True)
class Proj:
    """Proj_n: F_{n+1} -> F_n, dropping the last coordinate."""
    n: int
    term: "Term"


@dataclass(frozen=True)
class App:
    h: "Term"
    t: "Term"


@dataclass(frozen=True)
class CConst:
    name: str  # "0" or "kappa"

    def __post_init__(self):
        if self.name not in ("0", "kappa"):
            raise ValueError(f"unknown cardinal constant {self.name!r}")


ZERO = CConst("0")
KAPPA = CConst("kappa")

Term = Union[MVar, Reindex, Proj, App, CConst]


# ---------------------------------------------------------------- atoms

@dataclass(frozen=True)
class EqRel:
    """Eq on F_2; ``weighted`` sums |A'_t| h(t) instead of h(t)."""
    h: Term
    weighted: bool = False


@dataclass(frozen=True)
class ProdRel:
    h: Term
    weighted: bool = False


@dataclass(frozen=True)
class Eq1:
    t: Term


@dataclass(frozen=True)
class Prod1:
    t: Term


@dataclass(frozen=True)
class Proj1:
    """Proj^1: ``sub`` is the type of an orbit of the reindexed ``t`` (default: drop the last coordinate)."""
    t: Term
    sub: Term
    coords: Optional[tuple] = None


@dataclass(frozen=True)
class Less:
    left: Term
    right: Term


@dataclass(frozen=True)
class Same:
    left: Term
    right: Term


@dataclass(frozen=True)
class MExists:
    var: MVar
    body: "MFormula"


@dataclass(frozen=True)
class MForall:
    var: MVar
    body: "MFormula"


@dataclass(frozen=True)
class MRef:
    """A named M-library formula, expanded lazily."""
    name: str
    args: tuple
    params: tuple = ()

    def expand(self) -> "MFormula":
        hit = _M_EXPANSIONS.get(self)
        if hit is None:
            builder = M_REGISTRY.get(self.name)
            if builder is None:
                raise KeyError(f"unknown M-library formula {self.name!r}")
            start = max((v.index for v in self.args if isinstance(v, MVar)), default=-1) + 1
            hit = builder(*self.args, fresh=MFresh(start), **dict(self.params))
            _M_EXPANSIONS[self] = hit
        return hit


MFormula = Union[EqRel, ProdRel, Eq1, Prod1, Proj1, Less, Same, Not, And, Or, Implies, Iff, MExists, MForall, MRef]
M_ATOMS = (EqRel, ProdRel, Eq1, Prod1, Proj1, Less, Same)

M_REGISTRY: dict[str, Callable] = {}
_M_EXPANSIONS: dict = {}


class MFresh:
    def __init__(self, start: int):
        self.next = start

    def var(self, sort: Sort) -> MVar:
        v = MVar(self.next, sort)
        self.next += 1
        return v


def m_children(phi) -> tuple:
    if isinstance(phi, M_ATOMS) or isinstance(phi, MRef):
        return ()
    if isinstance(phi, Not):
        return (phi.body,)
    if isinstance(phi, (And, Or)):
        return phi.parts
    if isinstance(phi, Implies):
        return (phi.premise, phi.conclusion)
    if isinstance(phi, Iff):
        return (phi.left, phi.right)
    if isinstance(phi, (MExists, MForall)):
        return (phi.body,)
    raise TypeError(f"not an M-formula: {phi!r}")


def _term_vars(term) -> frozenset:
    if isinstance(term, MVar):
        return frozenset((term,))
    if isinstance(term, (Reindex, Proj)):
        return _term_vars(term.term)
    if isinstance(term, App):
        return _term_vars(term.h) | _term_vars(term.t)
    if isinstance(term, CConst):
        return frozenset()
    raise TypeError(f"not an M-term: {term!r}")


def _atom_terms(phi) -> tuple:
    if isinstance(phi, (EqRel, ProdRel)):
        return (phi.h,)
    if isinstance(phi, (Eq1, Prod1)):
        return (phi.t,)
    if isinstance(phi, Proj1):
        return (phi.t, phi.sub)
    return (phi.left, phi.right)


def m_free_vars(phi, _cache: Optional[dict] = None) -> frozenset:
    """Free variables as MVar objects."""
    cache = {} if _cache is None else _cache
    hit = cache.get(id(phi))
    if hit is not None:
        return hit[1]
    if isinstance(phi, M_ATOMS):
        out = frozenset().union(*(_term_vars(t) for t in _atom_terms(phi)))
    elif isinstance(phi, MRef):
        out = frozenset(a for a in phi.args if isinstance(a, MVar))
    elif isinstance(phi, (MExists, MForall)):
        out = m_free_vars(phi.body, cache) - {phi.var}
    else:
        out = frozenset().union(*(m_free_vars(c, cache) for c in m_children(phi)))
    cache[id(phi)] = (phi, out)
    return out


# ---------------------------------------------------------------- sort checking

class MSortError(TypeError):
    pass


def _coords_arity(coords) -> int:
    top = -1
    for c in coords:
        for i in (c if isinstance(c, tuple) else () if c is None else (c,)):
            top = max(top, i)
    return top + 1


def sort_of(term) -> Sort:
    if isinstance(term, MVar):
        return term.sort
    if isinstance(term, CConst):
        return CARD
    if isinstance(term, Reindex):
        s = sort_of(term.term)
        if s.kind != "F":
            raise MSortError(f"reindex expects an F term, got {s}")
        if _coords_arity(term.coords) > s.n:
            raise MSortError(f"reindex coordinates exceed arity {s.n}")
        return F(len(term.coords))
    if isinstance(term, Proj):
        s = sort_of(term.term)
        if s != F(term.n + 1):
            raise MSortError(f"Proj_{term.n} expects F{term.n + 1}, got {s}")
        return F(term.n)
    if isinstance(term, App):
        hs, ts = sort_of(term.h), sort_of(term.t)
        if hs.kind != "F" or ts != IS(hs.n):
            raise MSortError(f"App expects F_n x IS_n, got {hs} x {ts}")
        return CARD
    raise MSortError(f"not an M-term: {term!r}")


def check_sorts(phi) -> None:
    """Raise MSortError unless every atom and quantifier is well sorted; expands references."""
    seen: set = set()

    def go(p):
        if id(p) in seen:
            return
        seen.add(id(p))
        if isinstance(p, EqRel):
            _expect(p.h, F(2), "Eq")
        elif isinstance(p, ProdRel):
            _expect(p.h, F(3), "Prod")
        elif isinstance(p, Eq1):
            _expect(p.t, IS(2), "Eq1")
        elif isinstance(p, Prod1):
            _expect(p.t, IS(3), "Prod1")
        elif isinstance(p, Proj1):
            s, sub = sort_of(p.t), sort_of(p.sub)
            if s.kind != "IS" or sub.kind != "IS":
                raise MSortError("Proj1 relates IS sorts")
            coords = p.coords if p.coords is not None else tuple(range(s.n - 1))
            if _coords_arity(coords) > s.n or sub.n != len(coords):
                raise MSortError(f"Proj1 coordinates do not fit {s} -> {sub}")
        elif isinstance(p, Less):
            _expect(p.left, CARD, "<")
            _expect(p.right, CARD, "<")
        elif isinstance(p, Same):
            if sort_of(p.left) != sort_of(p.right):
                raise MSortError(f"= between {sort_of(p.left)} and {sort_of(p.right)}")
        elif isinstance(p, MRef):
            go(p.expand())
        elif isinstance(p, (MExists, MForall)):
            if p.var.sort.kind == "F" and p.var.sort.n < 1:
                raise MSortError("quantified F variables need arity >= 1")
            go(p.body)
        else:
            for c in m_children(p):
                go(c)

    go(phi)


def _expect(term, sort: Sort, where: str) -> None:
    s = sort_of(term)
    if s != sort:
        raise MSortError(f"{where} expects {sort}, got {s}")


# ---------------------------------------------------------------- printing

def _coord_text(c) -> str:
    if c is None:
        return "_"
    if isinstance(c, tuple):
        return "*".join(str(i) for i in c)
    return str(c)


def render_term(term) -> str:
    if isinstance(term, MVar):
        return term.name
    if isinstance(term, CConst):
        return term.name
    if isinstance(term, Reindex):
        return f"(reindex {render_term(term.term)} {' '.join(_coord_text(c) for c in term.coords)})"
    if isinstance(term, Proj):
        return f"(proj {term.n} {render_term(term.term)})"
    if isinstance(term, App):
        return f"(app {render_term(term.h)} {render_term(term.t)})"
    raise TypeError(f"not an M-term: {term!r}")


def render_m(phi, expand: bool = False) -> str:
    """Sorted s-expression form."""
    if isinstance(phi, EqRel):
        return f"({'Eq*' if phi.weighted else 'Eq'} {render_term(phi.h)})"
    if isinstance(phi, ProdRel):
        return f"({'Prod*' if phi.weighted else 'Prod'} {render_term(phi.h)})"
    if isinstance(phi, Eq1):
        return f"(Eq1 {render_term(phi.t)})"
    if isinstance(phi, Prod1):
        return f"(Prod1 {render_term(phi.t)})"
    if isinstance(phi, Proj1):
        extra = "" if phi.coords is None else " " + " ".join(_coord_text(c) for c in phi.coords)
        return f"(Proj1 {render_term(phi.t)} {render_term(phi.sub)}{extra})"
    if isinstance(phi, Less):
        return f"(< {render_term(phi.left)} {render_term(phi.right)})"
    if isinstance(phi, Same):
        return f"(= {render_term(phi.left)} {render_term(phi.right)})"
    if isinstance(phi, Not):
        return f"(not {render_m(phi.body, expand)})"
    if isinstance(phi, And):
        return "true" if not phi.parts else "(and " + " ".join(render_m(p, expand) for p in phi.parts) + ")"
    if isinstance(phi, Or):
        return "false" if not phi.parts else "(or " + " ".join(render_m(p, expand) for p in phi.parts) + ")"
    if isinstance(phi, Implies):
        return f"(implies {render_m(phi.premise, expand)} {render_m(phi.conclusion, expand)})"
    if isinstance(phi, Iff):
        return f"(iff {render_m(phi.left, expand)} {render_m(phi.right, expand)})"
    if isinstance(phi, (MExists, MForall)):
        q = "exists" if isinstance(phi, MExists) else "forall"
        return f"({q} ({phi.var.name} {phi.var.sort}) {render_m(phi.body, expand)})"
    if isinstance(phi, MRef):
        if expand:
            return render_m(phi.expand(), expand)
        items = [render_term(a) if isinstance(a, (MVar, CConst)) else str(a) for a in phi.args]
        items += [f"{k}={v}" for k, v in phi.params]
        return "(" + " ".join([phi.name] + items) + ")"
    raise TypeError(f"not an M-formula: {phi!r}")
