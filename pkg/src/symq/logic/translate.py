"""Compile group formulas into census-structure formulas and check the transfer.

A formula with free variables among x_0..x_{n-1} becomes a formula in one free
variable y0 of sort F_n. The compiler tracks a context: the tuple of group
variables whose joint census the current F variable describes. Atoms reindex
that census onto the coordinates they mention; an existential extends the
context by one coordinate and ties the wider census back by Proj_n.
"""

from __future__ import annotations

import itertools
from importlib import resources
import time
from dataclasses import dataclass, field
from typing import Optional

from ..perm import INCLUDE, Convention, Permutation, PermTuple, census_raw
from .group import (And, Eq, Exists, Forall, Formula, Iff, Implies, IsOne, Mul, Not, Or, Ref,
                    evaluator, eval_group, free_vars, quantifier_depth, render)
from .mformula import F, EqRel, MExists, MVar, ProdRel, Proj, Reindex, Same
from .model import MFinModel, ModelBounds, eval_m, m_evaluator


class UnboundVariable(ValueError):
    pass


class _Compiler:
    def __init__(self, weighted: bool):
        self.weighted = weighted
        self.next_index = 1

    def fresh(self, n: int) -> MVar:
        v = MVar(self.next_index, F(n))
        self.next_index += 1
        return v

    def position(self, ctx: tuple, x: int) -> int:
        for k in range(len(ctx) - 1, -1, -1):
            if ctx[k] == x:
                return k
        raise UnboundVariable(f"x{x} is not among the free variables")

    def view(self, y: MVar, ctx: tuple, coords: tuple):
        if coords == tuple(range(len(ctx))):
            return y
        return Reindex(y, coords)

    def go(self, phi: Formula, ctx: tuple, y: Optional[MVar]):
        if isinstance(phi, Eq):
            return EqRel(self.view(y, ctx, (self.position(ctx, phi.left), self.position(ctx, phi.right))),
                         self.weighted)
        if isinstance(phi, Mul):
            coords = tuple(self.position(ctx, v) for v in (phi.left, phi.right, phi.result))
            return ProdRel(self.view(y, ctx, coords), self.weighted)
        if isinstance(phi, IsOne):
            return EqRel(Reindex(y, (self.position(ctx, phi.var), None)), self.weighted)
        if isinstance(phi, Not):
            return Not(self.go(phi.body, ctx, y))
        if isinstance(phi, And):
            return And(tuple(self.go(p, ctx, y) for p in phi.parts))
        if isinstance(phi, Or):
            return Or(tuple(self.go(p, ctx, y) for p in phi.parts))
        if isinstance(phi, Implies):
            return Implies(self.go(phi.premise, ctx, y), self.go(phi.conclusion, ctx, y))
        if isinstance(phi, Iff):
            return Iff(self.go(phi.left, ctx, y), self.go(phi.right, ctx, y))
        if isinstance(phi, Exists):
            n = len(ctx)
            wide = self.fresh(n + 1)
            body = self.go(phi.body, ctx + (phi.var,), wide)
            if n == 0:
                return MExists(wide, body)
            return MExists(wide, And((body, Same(Proj(n, wide), y))))
        if isinstance(phi, Forall):
            return Not(self.go(Exists(phi.var, Not(phi.body)), ctx, y))
        if isinstance(phi, Ref):
            return self.go(phi.expand(), ctx, y)
        raise TypeError(f"not a group formula: {phi!r}")


def translate(phi: Formula, n: int, weighted: bool = False):
    """The census-structure formula psi(y0), y0 of sort F_n (a sentence when n = 0)."""
    extra = sorted(v for v in free_vars(phi) if not 0 <= v < n)
    if extra:
        raise UnboundVariable(f"free variable x{extra[0]} outside x0..x{n - 1}")
    ctx = tuple(range(n))
    y = MVar(0, F(n)) if n else None
    return _Compiler(weighted).go(phi, ctx, y)


def result_variable(n: int) -> MVar:
    return MVar(0, F(n))


# ---------------------------------------------------------------- the transfer check

@dataclass
class TranslationReport:
    formula: str
    omega: int
    arity: int
    assignments: int = 0
    agreements: int = 0
    examples: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def disagreements(self) -> int:
        return self.assignments - self.agreements

    @property
    def passed(self) -> bool:
        return self.assignments > 0 and self.disagreements == 0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"{status}\tomega={self.omega}\tarity={self.arity}\tassignments={self.assignments}"
                f"\tagree={self.agreements}\t{self.formula}")


def model_for(phi: Formula, omega: int, arity: int, convention: Convention = INCLUDE) -> MFinModel:
    need = max(arity + quantifier_depth(phi), 3)
    return MFinModel(omega, need, convention, ModelBounds(max_omega=max(5, omega), max_arity=need))


def check_translation(phi: Formula, omega: int, arity: Optional[int] = None,
                      model: Optional[MFinModel] = None, convention: Convention = INCLUDE,
                      optimize: bool = True, weighted: bool = False,
                      max_report: int = 5) -> TranslationReport:
    """Compare eval_group and eval_m(translate) on every assignment in Sym(Ω)^arity."""
    if arity is None:
        arity = max(free_vars(phi), default=-1) + 1
    start = time.perf_counter()
    model = model or model_for(phi, omega, arity, convention)
    psi = translate(phi, arity, weighted)
    gev = evaluator(omega)
    mev = m_evaluator(model, optimize)
    report = TranslationReport(render(phi), omega, arity)
    perms = [Permutation(p) for p in itertools.permutations(range(omega))]
    cache: dict = {}
    y = result_variable(arity)
    for combo in itertools.product(perms, repeat=arity):
        left = eval_group(phi, omega, list(combo), _evaluator=gev)
        if arity:
            hid = model.f_id(census_raw(tuple(p.images for p in combo), omega, model.convention))
            if hid not in cache:
                cache[hid] = eval_m(psi, model, {y: hid}, _evaluator=mev)
            right = cache[hid]
        else:
            if None not in cache:
                cache[None] = eval_m(psi, model, {}, _evaluator=mev)
            right = cache[None]
        report.assignments += 1
        if left == right:
            report.agreements += 1
        elif len(report.examples) < max_report:
            report.examples.append((str(PermTuple(tuple(combo))) if arity else "()", left, right))
    report.seconds = time.perf_counter() - start
    return report


# ---------------------------------------------------------------- regression pool

def load_pool(path: Optional[str] = None) -> list[tuple[int, str]]:
    """Lines "<arity>: <formula>" from a pool file (the bundled pool by default)."""
    if path is None:
        text = resources.files("symq.data").joinpath("translation_pool.txt").read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        head, sep, body = line.partition(":")
        if not sep or not head.strip().isdigit():
            raise ValueError(f"pool line {lineno}: expected '<arity>: <formula>'")
        out.append((int(head), body.strip()))
    return out
