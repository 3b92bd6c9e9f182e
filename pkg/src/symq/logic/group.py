"""First-order formulas in the language of groups: AST, parser, printer and
a brute-force evaluator over Sym(Ω).

Grammar::

    formula := iff
    iff     := imp ['<->' imp]
    imp     := or ['->' imp]
    or      := and ('|' and)*
    and     := unary ('&' unary)*
    unary   := '!' unary | ('E' | 'A') var '(' formula ')' | '(' formula ')'
             | 'true' | 'false' | atom
    atom    := var '=' var | var '=' '1' | var '*' var '=' var
             | var '*' var '=' var '*' var
    var     := 'x' digits

The last atom form is shorthand for ``E u (a*b = u & c*d = u)`` with u a
variable index above every index in the text.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence, Union

from ..perm import Permutation, PermTuple, compose


@dataclass(frozen=True)
class Eq:
    left: int
    right: int


@dataclass(frozen=True)
class Mul:
    left: int
    right: int
    result: int


@dataclass(frozen=True)
class IsOne:
    var: int


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    parts: tuple


@dataclass(frozen=True)
class Or:
    parts: tuple


@dataclass(frozen=True)
class Implies:
    premise: "Formula"
    conclusion: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: int
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: int
    body: "Formula"


@dataclass(frozen=True)
class Ref:
    """A named library formula applied to argument variables; expanded lazily."""
    name: str
    args: tuple
    params: tuple = ()

    def variables(self) -> tuple[int, ...]:
        out = []
        for a in self.args:
            out.extend(a if isinstance(a, tuple) else (a,))
        return tuple(out)

    def expand(self) -> "Formula":
        hit = _EXPANSIONS.get(self)
        if hit is None:
            builder = REGISTRY.get(self.name)
            if builder is None:
                raise KeyError(f"unknown library formula {self.name!r}")
            hit = builder(*self.args, fresh=Fresh(max(self.variables(), default=-1) + 1), **dict(self.params))
            _EXPANSIONS[self] = hit
        return hit


Formula = Union[Eq, Mul, IsOne, Not, And, Or, Implies, Iff, Exists, Forall, Ref]
ATOMS = (Eq, Mul, IsOne)

REGISTRY: dict[str, Callable] = {}
_EXPANSIONS: dict = {}

TRUE = And(())
FALSE = Or(())


class Fresh:
    """Allocator of variable indices not used by the caller."""

    def __init__(self, start: int):
        self.next = start

    def take(self, k: int = 1) -> tuple[int, ...]:
        out = tuple(range(self.next, self.next + k))
        self.next += k
        return out

    def one(self) -> int:
        return self.take(1)[0]


def conj(parts: Iterable[Formula]) -> Formula:
    parts = tuple(parts)
    return parts[0] if len(parts) == 1 else And(parts)


def disj(parts: Iterable[Formula]) -> Formula:
    parts = tuple(parts)
    return parts[0] if len(parts) == 1 else Or(parts)


def exists(vars_: Sequence[int], body: Formula) -> Formula:
    for v in reversed(tuple(vars_)):
        body = Exists(v, body)
    return body


def forall(vars_: Sequence[int], body: Formula) -> Formula:
    for v in reversed(tuple(vars_)):
        body = Forall(v, body)
    return body


def children(phi: Formula) -> tuple:
    if isinstance(phi, ATOMS):
        return ()
    if isinstance(phi, Not):
        return (phi.body,)
    if isinstance(phi, (And, Or)):
        return phi.parts
    if isinstance(phi, Implies):
        return (phi.premise, phi.conclusion)
    if isinstance(phi, Iff):
        return (phi.left, phi.right)
    if isinstance(phi, (Exists, Forall)):
        return (phi.body,)
    if isinstance(phi, Ref):
        return ()
    raise TypeError(f"not a group formula: {phi!r}")


def free_vars(phi: Formula, _cache: Optional[dict] = None) -> frozenset[int]:
    cache = {} if _cache is None else _cache
    key = id(phi)
    hit = cache.get(key)
    if hit is not None:
        return hit[1]
    if isinstance(phi, Eq):
        out = frozenset((phi.left, phi.right))
    elif isinstance(phi, Mul):
        out = frozenset((phi.left, phi.right, phi.result))
    elif isinstance(phi, IsOne):
        out = frozenset((phi.var,))
    elif isinstance(phi, Ref):
        out = frozenset(phi.variables())
    elif isinstance(phi, (Exists, Forall)):
        out = free_vars(phi.body, cache) - {phi.var}
    else:
        out = frozenset().union(*(free_vars(c, cache) for c in children(phi)))
    cache[key] = (phi, out)
    return out


def quantifier_depth(phi: Formula) -> int:
    if isinstance(phi, Ref):
        return quantifier_depth(phi.expand())
    if isinstance(phi, (Exists, Forall)):
        return 1 + quantifier_depth(phi.body)
    return max((quantifier_depth(c) for c in children(phi)), default=0)


def size(phi: Formula, _cache: Optional[dict] = None) -> int:
    """Node count with library references expanded (shared subterms counted once per use)."""
    cache = {} if _cache is None else _cache
    if isinstance(phi, Ref):
        key = (phi.name, tuple(len(a) if isinstance(a, tuple) else 1 for a in phi.args), phi.params)
        if key not in cache:
            cache[key] = size(phi.expand(), cache)
        return cache[key]
    return 1 + sum(size(c, cache) for c in children(phi))


# ---------------------------------------------------------------- printing

def render(phi: Formula, expand: bool = True) -> str:
    if isinstance(phi, Eq):
        return f"x{phi.left} = x{phi.right}"
    if isinstance(phi, Mul):
        return f"x{phi.left}*x{phi.right} = x{phi.result}"
    if isinstance(phi, IsOne):
        return f"x{phi.var} = 1"
    if isinstance(phi, Not):
        return "!" + _wrap(phi.body, expand)
    if isinstance(phi, And):
        return "true" if not phi.parts else "(" + " & ".join(render(p, expand) for p in phi.parts) + ")"
    if isinstance(phi, Or):
        return "false" if not phi.parts else "(" + " | ".join(render(p, expand) for p in phi.parts) + ")"
    if isinstance(phi, Implies):
        return f"({render(phi.premise, expand)} -> {render(phi.conclusion, expand)})"
    if isinstance(phi, Iff):
        return f"({render(phi.left, expand)} <-> {render(phi.right, expand)})"
    if isinstance(phi, Exists):
        return f"E x{phi.var} ({render(phi.body, expand)})"
    if isinstance(phi, Forall):
        return f"A x{phi.var} ({render(phi.body, expand)})"
    if isinstance(phi, Ref):
        if expand:
            return render(phi.expand(), expand)
        args = ", ".join(
            "[" + " ".join(f"x{v}" for v in a) + "]" if isinstance(a, tuple) else f"x{a}" for a in phi.args)
        return f"{phi.name}({args})"
    raise TypeError(f"not a group formula: {phi!r}")


def _wrap(phi: Formula, expand: bool) -> str:
    text = render(phi, expand)
    if isinstance(phi, ATOMS) or (isinstance(phi, Ref) and expand and isinstance(phi.expand(), ATOMS)):
        return "(" + text + ")"
    return text


# ---------------------------------------------------------------- parsing

class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at column {pos + 1}: {text[:pos]}<<HERE>>{text[pos:]}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(<->|->|[()&|!=*]|x\d+|\d+|[A-Za-z_]\w*)")


def _tokenize(text: str) -> list[tuple[str, int]]:
    out = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise FormulaSyntaxError("unexpected character", text, pos + len(text[pos:]) - len(text[pos:].lstrip()))
            break
        out.append((m.group(1), m.start(1)))
        pos = m.end()
    out.append(("<end>", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        used = [int(tok[1:]) for tok, _ in self.toks if re.fullmatch(r"x\d+", tok)]
        self.spare = Fresh(max(used, default=-1) + 1)

    def peek(self) -> str:
        return self.toks[self.i][0]

    def fail(self, msg: str):
        raise FormulaSyntaxError(msg, self.text, self.toks[self.i][1])

    def take(self, expected: Optional[str] = None) -> str:
        tok = self.peek()
        if expected is not None and tok != expected:
            self.fail(f"expected {expected!r}, found {tok!r}")
        self.i += 1
        return tok

    def var(self) -> int:
        tok = self.peek()
        if not re.fullmatch(r"x\d+", tok):
            self.fail(f"expected a variable, found {tok!r}")
        self.i += 1
        return int(tok[1:])

    def formula(self) -> Formula:
        left = self.imp()
        if self.peek() == "<->":
            self.take()
            return Iff(left, self.imp())
        return left

    def imp(self) -> Formula:
        left = self.or_()
        if self.peek() == "->":
            self.take()
            return Implies(left, self.imp())
        return left

    def or_(self) -> Formula:
        parts = [self.and_()]
        while self.peek() == "|":
            self.take()
            parts.append(self.and_())
        return disj(parts)

    def and_(self) -> Formula:
        parts = [self.unary()]
        while self.peek() == "&":
            self.take()
            parts.append(self.unary())
        return conj(parts)

    def unary(self) -> Formula:
        tok = self.peek()
        if tok == "!":
            self.take()
            return Not(self.unary())
        if tok in ("E", "A"):
            self.take()
            v = self.var()
            if self.peek() != "(":
                self.fail("quantifier bodies must be parenthesised")
            self.take("(")
            body = self.formula()
            self.take(")")
            return Exists(v, body) if tok == "E" else Forall(v, body)
        if tok == "(":
            self.take()
            inner = self.formula()
            self.take(")")
            return inner
        if tok == "true":
            self.take()
            return TRUE
        if tok == "false":
            self.take()
            return FALSE
        return self.atom()

    def atom(self) -> Formula:
        a = self.var()
        if self.peek() == "*":
            self.take()
            b = self.var()
            self.take("=")
            c = self.var()
            if self.peek() != "*":
                return Mul(a, b, c)
            self.take()
            d = self.var()
            u = self.spare.one()
            return Exists(u, And((Mul(a, b, u), Mul(c, d, u))))
        self.take("=")
        if self.peek() == "1":
            self.take()
            return IsOne(a)
        return Eq(a, self.var())


def parse_group_formula(text: str) -> Formula:
    p = _Parser(text)
    phi = p.formula()
    if p.peek() != "<end>":
        p.fail(f"unexpected {p.peek()!r}")
    return phi


# ---------------------------------------------------------------- evaluation

class SymTable:
    """Sym(Ω) with elements numbered in lexicographic order, identity first."""

    _cache: dict = {}

    def __init__(self, omega: int):
        self.omega = omega
        self.perms = list(itertools.permutations(range(omega)))
        self.index = {p: i for i, p in enumerate(self.perms)}
        self.mul = [[self.index[compose(a, b)] for b in self.perms] for a in self.perms]
        self.one = 0

    @classmethod
    def get(cls, omega: int) -> "SymTable":
        if omega not in cls._cache:
            cls._cache[omega] = SymTable(omega)
        return cls._cache[omega]

    def domain(self):
        return range(len(self.perms))

    def encode(self, p: Permutation) -> int:
        return self.index[p.images]


class TupleGroup:
    """Sym(Ω) for large Ω: elements are image tuples; quantifiers are refused."""

    def __init__(self, omega: int):
        self.omega = omega
        self.one = tuple(range(omega))

    def domain(self):
        raise ValueError(f"quantifiers over Sym({self.omega}) are beyond the evaluator bound")

    def encode(self, p: Permutation):
        return p.images


class _GroupEval:
    def __init__(self, group):
        self.g = group
        self.fv: dict = {}
        self.memo: dict = {}
        if isinstance(group, SymTable):
            table = group.mul
            self.mul = lambda a, b: table[a][b]
        else:
            self.mul = compose

    def run(self, phi: Formula, env: dict) -> bool:
        key = (id(phi), tuple(env[v] for v in sorted(free_vars(phi, self.fv))))
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        out = self._eval(phi, env)
        self.memo[key] = out
        return out

    def _eval(self, phi: Formula, env: dict) -> bool:
        if isinstance(phi, Eq):
            return env[phi.left] == env[phi.right]
        if isinstance(phi, Mul):
            return self.mul(env[phi.left], env[phi.right]) == env[phi.result]
        if isinstance(phi, IsOne):
            return env[phi.var] == self.g.one
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
        if isinstance(phi, Exists):
            return any(self.run(phi.body, {**env, phi.var: x}) for x in self.g.domain())
        if isinstance(phi, Forall):
            return all(self.run(phi.body, {**env, phi.var: x}) for x in self.g.domain())
        if isinstance(phi, Ref):
            return self.run(phi.expand(), env)
        raise TypeError(f"not a group formula: {phi!r}")


def group_for(omega: int, bound: int = 6):
    return SymTable.get(omega) if omega <= bound else TupleGroup(omega)


def eval_group(phi: Formula, omega: int, assignment: Union[PermTuple, Sequence[Permutation], dict],
               _evaluator: Optional[_GroupEval] = None) -> bool:
    """Truth of phi in Sym(Ω) with x_i assigned the i-th entry (or a dict var -> Permutation)."""
    ev = _evaluator or _GroupEval(group_for(omega))
    if isinstance(assignment, dict):
        items = assignment.items()
    else:
        entries = assignment.entries if isinstance(assignment, PermTuple) else tuple(assignment)
        items = enumerate(entries)
    env = {}
    for v, p in items:
        if p.ground_size != omega:
            raise ValueError(f"assignment acts on {p.ground_size} points, expected {omega}")
        env[v] = ev.g.encode(p)
    missing = free_vars(phi, ev.fv) - set(env)
    if missing:
        raise ValueError(f"arity mismatch: no value for {', '.join(f'x{v}' for v in sorted(missing))}")
    return ev.run(phi, env)


def evaluator(omega: int) -> _GroupEval:
    """A reusable evaluator whose memo table persists across assignments."""
    return _GroupEval(group_for(omega))
