"""Named group formulas, built only from the three primitive atom shapes.

Each entry is registered as a builder ``f(*args, fresh)`` where ``args`` are
variable indices or tuples of them. References to other entries go through
:class:`Ref`, so large formulas such as ``disj`` are never expanded unless a
caller asks for it.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from ..alt5 import GroupTable, a5_table
from .group import (REGISTRY, And, Eq, Exists, Fresh, Iff, Implies, IsOne, Mul, Not, Or, Ref,
                    conj, exists, forall)


def register(name):
    def deco(fn):
        REGISTRY[name] = fn
        return fn
    return deco


def _t(xs) -> tuple[int, ...]:
    return tuple(xs) if isinstance(xs, (tuple, list)) else (xs,)


def formula_library(name: str, *args, **params):
    """Expand a library entry once, with fresh bound variables above every argument."""
    if name not in REGISTRY:
        raise KeyError(f"unknown library formula {name!r}")
    args = tuple(_t(a) if isinstance(a, (tuple, list)) else a for a in args)
    return Ref(name, args, tuple(sorted(params.items()))).expand()


def ref(name: str, *args, **params) -> Ref:
    if name not in REGISTRY:
        raise KeyError(f"unknown library formula {name!r}")
    args = tuple(_t(a) if isinstance(a, (tuple, list)) else a for a in args)
    return Ref(name, args, tuple(sorted(params.items())))


# ---------------------------------------------------------------- term helpers

def commutes(x: int, y: int, u: int):
    return Exists(u, And((Mul(x, y, u), Mul(y, x, u))))


def is_conjugate_by(x: int, z: int, y: int, u: int):
    """x^z = y, that is x z = z y."""
    return Exists(u, And((Mul(x, z, u), Mul(z, y, u))))


def product_is(factors: Sequence[int], result: int, fresh: Fresh):
    """factors[0] * factors[1] * ... = result."""
    factors = tuple(factors)
    if len(factors) == 1:
        return Eq(factors[0], result)
    if len(factors) == 2:
        return Mul(factors[0], factors[1], result)
    p = fresh.one()
    return Exists(p, And((Mul(factors[0], factors[1], p), product_is((p,) + factors[2:], result, fresh))))


def tuple_product_is(xs, ys, zs):
    """x̄ = ȳ ∗ z̄."""
    return conj(Mul(y, z, x) for x, y, z in zip(xs, ys, zs))


def tuple_is_one(xs):
    return conj(IsOne(x) for x in xs)


def tuple_eq(xs, ys):
    return conj(Eq(x, y) for x, y in zip(xs, ys))


def squares_to_one(x: int, u: int):
    return Exists(u, And((Mul(x, x, u), IsOne(u))))


@lru_cache(maxsize=None)
def involution_index(G: GroupTable = None) -> int:
    G = G or a5_table()
    return next(i for i in range(G.order) if G.element_order(i) == 2)


TABLES = {"a5": a5_table}


# ---------------------------------------------------------------- A(5) shapes, supports and set operations

@register("diag")
def _diag(xs, fresh, group="a5"):
    G = TABLES[group]()
    xs = _t(xs)
    if len(xs) != G.order:
        raise ValueError(f"diag needs {G.order} variables, got {len(xs)}")
    return And(tuple(Mul(xs[i], xs[j], xs[G.product[i][j]]) for i in range(G.order) for j in range(G.order)))


@register("alt5")
def _alt5(xs, fresh):
    return Ref("diag", (_t(xs),))


@register("comm")
def _comm(xs, ys, fresh):
    u = fresh.one()
    return conj(commutes(x, y, u) for x in _t(xs) for y in _t(ys))


@register("conj")
def _conj(xs, ys, fresh):
    z, u = fresh.take(2)
    return Exists(z, conj(is_conjugate_by(x, z, y, u) for x, y in zip(_t(xs), _t(ys))))


@register("indec")
def _indec(xs, fresh):
    xs = _t(xs)
    ys = fresh.take(len(xs))
    zs = fresh.take(len(xs))
    premise = And((Ref("comm", (ys, zs)), Ref("alt5", (ys,)), Ref("alt5", (zs,)), tuple_product_is(xs, ys, zs)))
    body = Implies(premise, Or((Ref("conj", (xs, ys)), Ref("conj", (xs, zs)))))
    return And((Ref("alt5", (xs,)), forall(ys + zs, body)))


@register("disj1")
def _disj1(xs, ys, fresh):
    xs, ys = _t(xs), _t(ys)
    us = fresh.take(len(xs))
    return And((Ref("indec", (xs,)), Ref("indec", (ys,)), Ref("comm", (xs, ys)),
                exists(us, And((tuple_product_is(us, xs, ys), Ref("indec", (us,)))))))


@register("set")
def _set(x, fresh):
    return squares_to_one(x, fresh.one())


@register("disj_prime")
def _disj_prime(x, y, fresh):
    i = involution_index()
    n = a5_table().order
    zs = fresh.take(n)
    ts = fresh.take(n)
    return And((Ref("set", (x,)), Ref("set", (y,)),
                exists(zs + ts, And((Eq(zs[i], x), Eq(ts[i], y), Ref("disj1", (zs, ts)))))))


@register("disj")
def _disj(x, y, fresh):
    xs = fresh.take(4)
    ys = fresh.take(4)
    parts = [product_is(xs, x, fresh), product_is(ys, y, fresh)]
    parts += [Ref("disj_prime", (a, b)) for a in xs for b in ys]
    return exists(xs + ys, And(tuple(parts)))


@register("subset")
def _subset(x, y, fresh):
    z = fresh.one()
    return And((Ref("set", (x,)), Ref("set", (y,)),
                _forall1(z, Implies(Ref("disj", (y, z)), Ref("disj", (x, z))))))


def _forall1(v, body):
    return forall((v,), body)


@register("sameset")
def _sameset(x, y, fresh):
    z = fresh.one()
    return And((Ref("set", (x,)), Ref("set", (y,)),
                _forall1(z, Iff(Ref("disj", (y, z)), Ref("disj", (x, z))))))


@register("union")
def _union(x, y, z, fresh):
    t = fresh.one()
    return And((Ref("set", (x,)), Ref("set", (y,)), Ref("set", (z,)),
                _forall1(t, Iff(And((Ref("subset", (x, t)), Ref("subset", (y, t)))), Ref("subset", (z, t))))))


@register("intersect")
def _intersect(x, y, z, fresh):
    t = fresh.one()
    return And((Ref("set", (x,)), Ref("set", (y,)), Ref("set", (z,)),
                _forall1(t, Iff(And((Ref("subset", (t, x)), Ref("subset", (t, y)))), Ref("subset", (t, z))))))


@register("union_n")
def _union_n(xs, y, fresh):
    z = fresh.one()
    return _forall1(z, Iff(Ref("disj", (z, y)), conj(Ref("disj", (z, x)) for x in _t(xs))))


@register("map")
def _map(x, y, z, fresh):
    w, u = fresh.take(2)
    # w = z^-1 x z, that is z w = x z
    return And((Ref("set", (x,)), Ref("set", (y,)),
                Exists(w, And((is_conjugate_by(x, z, w, u), Ref("sameset", (w, y)))))))


# ---------------------------------------------------------------- maximality, restriction, orbit types and census relations

@register("max")
def _max(fresh):
    x, y = fresh.take(2)
    return Exists(x, forall((y,), Implies(Ref("disj", (x, y)), IsOne(y))))


@register("disj_n")
def _disj_n(xs, ys, fresh):
    return conj(Ref("disj", (x, y)) for x in _t(xs) for y in _t(ys))


@register("restr_n")
def _restr_n(xs, ys, fresh):
    xs, ys = _t(xs), _t(ys)
    zs = fresh.take(len(xs))
    return exists(zs, And((Ref("disj_n", (xs, zs)), tuple_product_is(ys, xs, zs))))


@register("is_one")
def _is_one(xs, fresh):
    return tuple_is_one(_t(xs))


@register("compat_n")
def _compat_n(xs, ys, fresh):
    xs, ys = _t(xs), _t(ys)
    zs = fresh.take(len(xs))
    t = fresh.one()
    ws = fresh.take(len(xs))
    u = fresh.one()
    conj_ws = conj(is_conjugate_by(z, t, w, u) for z, w in zip(zs, ws))
    return exists(zs + (t,), And((Not(tuple_is_one(zs)), Ref("restr_n", (zs, xs)),
                                  exists(ws, And((conj_ws, Ref("restr_n", (ws, ys))))))))


@register("pure_n")
def _pure_n(xs, fresh):
    xs = _t(xs)
    ys = fresh.take(len(xs))
    zs = fresh.take(len(xs))
    premise = And((Not(tuple_is_one(ys)), Not(tuple_is_one(zs)),
                   Ref("restr_n", (ys, xs)), Ref("restr_n", (zs, xs))))
    return And((forall(ys + zs, Implies(premise, Ref("compat_n", (ys, zs)))),
                Implies(Not(Ref("max", ())), Not(tuple_is_one(xs)))))


@register("iso_n")
def _iso_n(xs, ys, fresh):
    xs, ys = _t(xs), _t(ys)
    return And((Ref("pure_n", (xs,)), Ref("pure_n", (ys,)),
                Or((Ref("compat_n", (xs, ys)), And((tuple_is_one(xs), tuple_is_one(ys)))))))


@register("samecard")
def _samecard(x, y, fresh):
    x1, x2, y1, y2 = fresh.take(4)
    return And((Ref("set", (x,)), Ref("set", (y,)),
                exists((x1, x2, y1, y2), And((Ref("disj", (x1, x2)), Ref("disj", (y1, y2)),
                                              Mul(x1, x2, x), Mul(y1, y2, y),
                                              Ref("conj", ((x1,), (y1,))), Ref("conj", ((x2,), (y2,))))))))


@register("lesseq")
def _lesseq(x, y, fresh):
    z = fresh.one()
    return And((Ref("set", (x,)), Ref("set", (y,)),
                Exists(z, And((Ref("subset", (z, y)), Ref("samecard", (x, z)))))))


@register("eq1")
def _eq1(x1, x2, fresh):
    return And((Ref("pure_n", ((x1, x2),)), Eq(x1, x2)))


@register("eq")
def _eq(x1, x2, fresh):
    return Eq(x1, x2)


@register("prod1")
def _prod1(x1, x2, x3, fresh):
    return And((Ref("pure_n", ((x1, x2, x3),)), Mul(x1, x2, x3)))


@register("prod")
def _prod(x1, x2, x3, fresh):
    return Mul(x1, x2, x3)


@register("proj1")
def _proj1(xs, ys, fresh):
    xs, ys = _t(xs), _t(ys)
    if len(xs) != len(ys) + 1:
        raise ValueError("proj1 relates an (n+1)-tuple to an n-tuple")
    return And((Ref("pure_n", (xs,)), Ref("pure_n", (ys,)), Ref("iso_n", (xs[:-1], ys))))


@register("proj")
def _proj(xs, ys, fresh):
    xs, ys = _t(xs), _t(ys)
    if len(xs) != len(ys) + 1:
        raise ValueError("proj relates an (n+1)-tuple to an n-tuple")
    return Ref("conj", (xs[:-1], ys))


@register("app")
def _app(xs, ys, z, fresh):
    xs, ys = _t(xs), _t(ys)
    n = len(xs)
    ts = fresh.take(n)
    us = fresh.take(n)
    v = fresh.one()
    maximal = forall(us, Implies(And((Ref("restr_n", (ts, us)), Ref("restr_n", (us, xs)), Ref("pure_n", (us,)))),
                                 tuple_eq(ts, us)))
    found = exists(ts, And((Ref("pure_n", (ts,)), Ref("compat_n", (ys, ts)), Ref("restr_n", (ts, xs)), maximal,
                            Exists(v, And((Ref("union_n", (ts, v)), Ref("samecard", (v, z))))))))
    none = And((forall(ts, Implies(Ref("compat_n", (ys, ts)), Not(Ref("restr_n", (ts, xs))))), IsOne(z)))
    return And((Ref("pure_n", (ys,)), Or((found, none))))


@register("aleph0")
def _aleph0(fresh):
    x, y = fresh.take(2)
    return Exists(x, forall((y,), Implies(Ref("restr_n", ((y,), (x,))), Or((IsOne(y), Eq(y, x))))))


# ---------------------------------------------------------------- irreducibles and transpositions

@register("irreducible")
def _irreducible(xs, fresh):
    xs = _t(xs)
    ys = fresh.take(len(xs))
    zs = fresh.take(len(xs))
    premise = And((Ref("disj_n", (ys, zs)), tuple_product_is(xs, ys, zs)))
    return And((Not(tuple_is_one(xs)), forall(ys + zs, Implies(premise, Or((tuple_is_one(ys), tuple_is_one(zs)))))))


@register("transposition_at")
def _transposition_at(x, fresh):
    """x ≠ 1, x² = 1 and for all y, (x x^y)² = 1 or (x x^y)³ = 1."""
    y, w, p, u, q, r = fresh.take(6)
    square = Exists(q, And((Mul(p, p, q), IsOne(q))))
    cube = exists((q, r), And((Mul(p, p, q), Mul(q, p, r), IsOne(r))))
    # w = x^y means x y = y w
    inner = exists((w, p), And((is_conjugate_by(x, y, w, u), Mul(x, w, p), Or((square, cube)))))
    return And((Not(IsOne(x)), squares_to_one(x, u), forall((y,), inner)))


@register("transposition")
def _transposition(fresh):
    x = fresh.one()
    return Exists(x, Ref("transposition_at", (x,)))


NAMES = tuple(sorted(REGISTRY))
