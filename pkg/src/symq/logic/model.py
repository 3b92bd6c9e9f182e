"""The finite census structure over Sym(Ω) in the degenerate case (small = empty).

F_n is the set of censuses of n-tuples of permutations of Ω, stored by integer
id; IS_n is the set of orbit types occurring in F_n; Card is {0, ..., Ω} with
kappa read as 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from ..perm import (INCLUDE, Census, Convention, OrbitType, census_raw, census_reindex, compose,
                    realize_raw, type_reindex)
from .group import And, Iff, Implies, Not, Or
from .mformula import (App, CConst, Eq1, EqRel, Less, MExists, MForall, MRef, MVar, Prod1, ProdRel,
                       Proj, Proj1, Reindex, Same, m_free_vars, sort_of)


@dataclass(frozen=True)
class ModelBounds:
    max_omega: int = 5
    max_arity: int = 3


class BoundExceeded(ValueError):
    pass


class MFinModel:
    """Lazily enumerated finite analogue of the census structure."""

    def __init__(self, omega: int, max_arity: int = 3, convention: Convention = INCLUDE,
                 bounds: ModelBounds = ModelBounds()):
        if omega < 1:
            raise ValueError("ground size must be positive")
        if omega > bounds.max_omega:
            raise BoundExceeded(f"ground size {omega} exceeds bound {bounds.max_omega}")
        if max_arity > bounds.max_arity:
            raise BoundExceeded(f"arity {max_arity} exceeds bound {bounds.max_arity}")
        self.omega = omega
        self.max_arity = max_arity
        self.convention = Convention(convention)
        self.kappa = 1
        self.perms = list(itertools.permutations(range(omega)))
        self._f: dict[int, list[Census]] = {}
        self._fid: dict[int, dict[Census, int]] = {}
        self._is: dict[int, list[OrbitType]] = {}
        self._reindex: dict = {}
        self._fiber: dict[int, list[list[int]]] = {}
        self._counts: dict = {}

    # ---------------------------------------------------------- sorts

    def _check_arity(self, n: int) -> None:
        if not 1 <= n <= self.max_arity:
            raise BoundExceeded(f"arity {n} outside 1..{self.max_arity}")

    def f_sort(self, n: int) -> list[Census]:
        self._check_arity(n)
        if n not in self._f:
            if n == 1:
                found = {census_raw((g,), self.omega, self.convention) for g in self.perms}
            else:
                found = set()
                for c in self.f_sort(n - 1):
                    base = realize_raw(c, self.omega)
                    for g in self.perms:
                        found.add(census_raw(base + (g,), self.omega, self.convention))
            ordered = sorted(found, key=lambda c: (c.counts,))
            self._f[n] = ordered
            self._fid[n] = {c: i for i, c in enumerate(ordered)}
        return self._f[n]

    def f_id(self, c: Census) -> int:
        self.f_sort(c.arity)
        return self._fid[c.arity][c]

    def census_of(self, n: int, hid: int) -> Census:
        return self.f_sort(n)[hid]

    def is_sort(self, n: int) -> list[OrbitType]:
        if n not in self._is:
            types = {t for c in self.f_sort(n) for t, _ in c.counts}
            self._is[n] = sorted(types)
        return self._is[n]

    def card_sort(self) -> range:
        return range(self.omega + 1)

    def domain(self, sort) -> range:
        if sort.kind == "F":
            return range(len(self.f_sort(sort.n)))
        if sort.kind == "IS":
            return range(len(self.is_sort(sort.n)))
        return self.card_sort()

    # ---------------------------------------------------------- functions and relations

    def reindex(self, n: int, hid: int, coords: tuple) -> int:
        key = (n, hid, coords)
        hit = self._reindex.get(key)
        if hit is None:
            hit = self.f_id(census_reindex(self.census_of(n, hid), coords))
            self._reindex[key] = hit
        return hit

    def proj(self, n: int, hid: int) -> int:
        """Proj_n applied to an element of F_{n+1}."""
        return self.reindex(n + 1, hid, tuple(range(n)))

    def fiber(self, n: int, hid: int) -> list[int]:
        """Elements of F_{n+1} whose projection is the element hid of F_n."""
        if n not in self._fiber:
            out: list[list[int]] = [[] for _ in self.f_sort(n)]
            for h in range(len(self.f_sort(n + 1))):
                out[self.proj(n, h)].append(h)
            self._fiber[n] = out
        return self._fiber[n][hid]

    def app(self, n: int, hid: int, tid: int) -> int:
        key = (n, hid)
        counts = self._counts.get(key)
        if counts is None:
            counts = self.census_of(n, hid).as_dict()
            self._counts[key] = counts
        return counts.get(self.is_sort(n)[tid], 0)

    def eq(self, hid: int, weighted: bool = False) -> bool:
        return self._violation(2, hid, weighted) == 0

    def prod(self, hid: int, weighted: bool = False) -> bool:
        return self._violation(3, hid, weighted) == 0

    def _violation(self, n: int, hid: int, weighted: bool) -> int:
        total = 0
        for t, cnt in self.census_of(n, hid).counts:
            g = t.certificate
            if n == 2:
                bad = sum(1 for p in range(t.degree) if g[0][p] != g[1][p])
            else:
                gh = compose(g[0], g[1])
                bad = sum(1 for p in range(t.degree) if gh[p] != g[2][p])
            if bad:
                total += bad * cnt if weighted else cnt
        return total

    def eq1(self, tid: int) -> bool:
        g = self.is_sort(2)[tid].certificate
        return g[0] == g[1]

    def prod1(self, tid: int) -> bool:
        g = self.is_sort(3)[tid].certificate
        return compose(g[0], g[1]) == g[2]

    def proj1(self, n: int, tid: int, m: int, sid: int, coords: Optional[tuple]) -> bool:
        t = self.is_sort(n)[tid]
        sub = self.is_sort(m)[sid]
        coords = tuple(range(n - 1)) if coords is None else coords
        return any(u == sub for u, _ in type_reindex(t, coords))


def build_m_fin(omega: int, max_arity: int = 3, convention: Convention = INCLUDE,
                bounds: ModelBounds = ModelBounds()) -> MFinModel:
    return MFinModel(omega, max_arity, convention, bounds)


# ---------------------------------------------------------------- evaluation

class _MEval:
    def __init__(self, model: MFinModel, optimize: bool = True):
        self.m = model
        self.optimize = optimize
        self.fv: dict = {}
        self.memo: dict = {}
        self.arities: dict = {}

    def term(self, t, env):
        if isinstance(t, MVar):
            return env[t.index]
        if isinstance(t, CConst):
            return 0 if t.name == "0" else self.m.kappa
        if isinstance(t, Reindex):
            return self.m.reindex(self._arity(t.term), self.term(t.term, env), tuple(t.coords))
        if isinstance(t, Proj):
            return self.m.proj(t.n, self.term(t.term, env))
        if isinstance(t, App):
            return self.m.app(self._arity(t.h), self.term(t.h, env), self.term(t.t, env))
        raise TypeError(f"not an M-term: {t!r}")

    def _arity(self, t) -> int:
        hit = self.arities.get(id(t))
        if hit is None:
            hit = (t, sort_of(t).n)  # holding t keeps its id stable
            self.arities[id(t)] = hit
        return hit[1]

    def run(self, phi, env) -> bool:
        key = (id(phi), tuple(env[v.index] for v in sorted(m_free_vars(phi, self.fv), key=lambda v: v.index)))
        hit = self.memo.get(key)
        if hit is None:
            hit = self._eval(phi, env)
            self.memo[key] = hit
        return hit

    def _eval(self, phi, env) -> bool:
        m = self.m
        if isinstance(phi, EqRel):
            return m.eq(self.term(phi.h, env), phi.weighted)
        if isinstance(phi, ProdRel):
            return m.prod(self.term(phi.h, env), phi.weighted)
        if isinstance(phi, Eq1):
            return m.eq1(self.term(phi.t, env))
        if isinstance(phi, Prod1):
            return m.prod1(self.term(phi.t, env))
        if isinstance(phi, Proj1):
            n, k = self._arity(phi.t), self._arity(phi.sub)
            return m.proj1(n, self.term(phi.t, env), k, self.term(phi.sub, env), phi.coords)
        if isinstance(phi, Less):
            return self.term(phi.left, env) < self.term(phi.right, env)
        if isinstance(phi, Same):
            return self.term(phi.left, env) == self.term(phi.right, env)
        if isinstance(phi, Not):
            return not self.run(phi.body, env)
        if isinstance(phi, And):
            return all(self.run(p, env) for p in phi.parts)
        if isinstance(phi, Or):
            return any(self.run(p, env) for p in phi.parts)
        if isinstance(phi, Implies):
            return (not self.run(phi.premise, env)) or self.run(phi.conclusion, env)
        if isinstance(phi, Iff):
            return self.run(phi.left, env) == self.run(phi.right, env)
        if isinstance(phi, MExists):
            return any(self.run(phi.body, {**env, phi.var.index: x}) for x in self._range(phi, env))
        if isinstance(phi, MForall):
            return all(self.run(phi.body, {**env, phi.var.index: x}) for x in m.domain(phi.var.sort))
        if isinstance(phi, MRef):
            return self.run(phi.expand(), env)
        raise TypeError(f"not an M-formula: {phi!r}")

    def _range(self, phi: MExists, env):
        """Witness candidates; restricted to a projection fiber when the body pins Proj(var)."""
        if self.optimize and phi.var.sort.kind == "F" and isinstance(phi.body, And):
            for part in phi.body.parts:
                if not isinstance(part, Same):
                    continue
                for a, b in ((part.left, part.right), (part.right, part.left)):
                    if (isinstance(a, Proj) and a.term == phi.var and isinstance(b, MVar)
                            and b != phi.var and b.index in env):
                        return self.m.fiber(a.n, env[b.index])
        return self.m.domain(phi.var.sort)


def m_evaluator(model: MFinModel, optimize: bool = True) -> _MEval:
    return _MEval(model, optimize)


def eval_m(psi, model: MFinModel, assignment: dict, optimize: bool = True,
           _evaluator: Optional[_MEval] = None) -> bool:
    """Truth of psi with free variables assigned by index -> element id (Census values are accepted for F sorts)."""
    ev = _evaluator or _MEval(model, optimize)
    env = {}
    for k, v in assignment.items():
        idx = k.index if isinstance(k, MVar) else k
        env[idx] = model.f_id(v) if isinstance(v, Census) else v
    missing = [v for v in m_free_vars(psi, ev.fv) if v.index not in env]
    if missing:
        raise ValueError(f"no value for {', '.join(v.name for v in missing)}")
    return ev.run(psi, env)
