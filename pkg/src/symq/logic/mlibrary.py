"""Named formulas in the language of the census structure.

Builders take sorted variables (MVar) plus integer parameters and a ``fresh``
allocator. Comparisons of sub-kappa values are read through ``App``, which is
exact in the finite model where kappa is 1.
"""

from __future__ import annotations

from .group import And, Iff, Implies, Not
from .mformula import (IS, KAPPA, ZERO, F, App, Eq1, Less, M_REGISTRY, MExists, MForall, MRef, MVar,
                       Proj1, Same)


def register(name):
    def deco(fn):
        M_REGISTRY[name] = fn
        return fn
    return deco


def m_ref(name: str, *args, **params) -> MRef:
    if name not in M_REGISTRY:
        raise KeyError(f"unknown M-library formula {name!r}")
    return MRef(name, tuple(args), tuple(sorted(params.items())))


def m_formula_library(name: str, *args, **params):
    """Expand a named constructor once."""
    return m_ref(name, *args, **params).expand()


def _all(var: MVar, body):
    return MForall(var, body)


def _some(var: MVar, body):
    return MExists(var, body)


def _positive(c):
    return Less(ZERO, c)


def _le(a, b):
    return Not(Less(b, a))


def _arity(v: MVar) -> int:
    return v.sort.n


# ---------------------------------------------------------------- detectors and set encodings

@register("cf_le_continuum")
def _cf_le_continuum(fresh):
    h1, h2, t = fresh.var(F(2)), fresh.var(F(2)), fresh.var(IS(2))
    return _some(h1, _some(h2, And((Not(Same(h1, h2)), _all(t, Same(App(h1, t), App(h2, t)))))))


@register("almost_zero")
def _almost_zero(k, fresh):
    t = fresh.var(IS(_arity(k)))
    return _all(t, Same(App(k, t), ZERO))


@register("restr")
def _restr(h1, h2, fresh):
    """h1 is (up to a small set) a restriction of h2."""
    t = fresh.var(IS(_arity(h1)))
    return _all(t, _le(App(h1, t), App(h2, t)))


@register("min")
def _min(h, fresh):
    h2 = fresh.var(h.sort)
    t = fresh.var(IS(_arity(h)))
    same_set = _all(t, Iff(Same(App(h, t), KAPPA), Same(App(h2, t), KAPPA)))
    return _all(h2, Implies(same_set, m_ref("restr", h, h2)))


@register("encodes_subset")
def _encodes_subset(h, fresh):
    t = fresh.var(IS(_arity(h)))
    return _all(t, _le(App(h, t), KAPPA))


@register("mem")
def _mem(t, h, fresh):
    return Same(App(h, t), KAPPA)


@register("equal")
def _equal(h1, h2, fresh):
    t = fresh.var(IS(_arity(h1)))
    return _all(t, Iff(m_ref("mem", t, h1), m_ref("mem", t, h2)))


@register("commuting_type")
def _commuting_type(t, fresh, m):
    """Every coordinate below m commutes with every coordinate from m on."""
    s = fresh.var(IS(2))
    parts = []
    for i in range(m):
        for j in range(m, _arity(t)):
            parts.append(_all(s, Implies(Proj1(t, s, ((i, j), (j, i))), Eq1(s))))
    return And(tuple(parts))


@register("is_product_type")
def _is_product_type(t, t1, t2, fresh):
    m, n = _arity(t1), _arity(t2)
    if _arity(t) != m + n:
        raise ValueError("product type arity must be the sum of the factor arities")
    s1, s2 = fresh.var(t1.sort), fresh.var(t2.sort)
    return And((m_ref("commuting_type", t, m=m),
                _all(s1, Iff(Proj1(t, s1, tuple(range(m))), Same(s1, t1))),
                _all(s2, Iff(Proj1(t, s2, tuple(range(m, m + n))), Same(s2, t2)))))


@register("is_product")
def _is_product(k, fresh, m):
    t = fresh.var(IS(_arity(k)))
    return _all(t, Implies(_positive(App(k, t)), m_ref("commuting_type", t, m=m)))


@register("encodes_relation")
def _encodes_relation(k, fresh, m):
    return And((m_ref("is_product", k, m=m), m_ref("encodes_subset", k)))


@register("mem2")
def _mem2(t1, t2, k, fresh):
    t = fresh.var(IS(_arity(k)))
    return _some(t, And((Same(App(k, t), KAPPA), m_ref("is_product_type", t, t1, t2))))


@register("equal2")
def _equal2(k1, k2, fresh, m):
    n = _arity(k1) - m
    t1, t2 = fresh.var(IS(m)), fresh.var(IS(n))
    return _all(t1, _all(t2, Iff(m_ref("mem2", t1, t2, k1), m_ref("mem2", t1, t2, k2))))


@register("fun")
def _fun(k, fresh, m):
    n = _arity(k) - m
    t1, t2, t3 = fresh.var(IS(m)), fresh.var(IS(n)), fresh.var(IS(n))
    single = Implies(And((m_ref("mem2", t1, t2, k), m_ref("mem2", t1, t3, k))), Same(t2, t3))
    return And((m_ref("encodes_relation", k, m=m), _all(t1, _all(t2, _all(t3, single)))))


@register("one_onefun")
def _one_onefun(k, fresh, m):
    n = _arity(k) - m
    t1, t2, t3 = fresh.var(IS(m)), fresh.var(IS(m)), fresh.var(IS(n))
    inj = Implies(And((m_ref("mem2", t1, t3, k), m_ref("mem2", t2, t3, k))), Same(t1, t2))
    return And((m_ref("fun", k, m=m), _all(t1, _all(t2, _all(t3, inj)))))


# ---------------------------------------------------------------- values below kappa

@register("is_zero")
def _is_zero(k, fresh):
    return And((m_ref("almost_zero", k), m_ref("min", k)))


@register("disjoint")
def _disjoint(k1, k2, fresh):
    t = fresh.var(IS(_arity(k1)))
    return _all(t, Not(And((_positive(App(k1, t)), _positive(App(k2, t))))))


@register("carries")
def _carries(f, k1, k2, fresh):
    """The function coded by f maps the support of k1 onto that of k2, preserving values."""
    a, b = fresh.var(IS(2)), fresh.var(IS(2))
    forward = _all(a, Implies(_positive(App(k1, a)),
                              _some(b, And((m_ref("mem2", a, b, f), Same(App(k2, b), App(k1, a)))))))
    onto = _all(b, Implies(_positive(App(k2, b)),
                           _some(a, And((m_ref("mem2", a, b, f), _positive(App(k1, a)))))))
    return And((forward, onto))


@register("one_one")
def _one_one(k, fresh):
    k1, k2, f = fresh.var(F(2)), fresh.var(F(2)), fresh.var(F(4))
    premise = And((Not(m_ref("is_zero", k1)), Not(m_ref("is_zero", k2)),
                   m_ref("restr", k1, k), m_ref("restr", k2, k), m_ref("disjoint", k1, k2),
                   m_ref("one_onefun", f, m=2)))
    return And((m_ref("almost_zero", k),
                _all(k1, _all(k2, _all(f, Implies(premise, Not(m_ref("carries", f, k1, k2))))))))


@register("subset_star")
def _subset_star(k1, k2, fresh):
    f, a, b = fresh.var(F(4)), fresh.var(IS(2)), fresh.var(IS(2))
    into = _all(a, Implies(_positive(App(k1, a)),
                           _some(b, And((m_ref("mem2", a, b, f), Same(App(k2, b), App(k1, a)))))))
    return And((m_ref("one_one", k1), m_ref("one_one", k2),
                _some(f, And((m_ref("one_onefun", f, m=2), into)))))


@register("div_star")
def _div_star(h, fresh, n):
    if n == 0:
        return m_ref("almost_zero", h)
    h1, h2 = fresh.var(F(4)), fresh.var(F(2))
    t, u, p = fresh.var(IS(2)), fresh.var(IS(2)), fresh.var(IS(4))

    def pairs(body):
        return _all(t, _all(u, _all(p, Implies(m_ref("is_product_type", p, t, u), body))))

    below = pairs(Less(App(h1, p), App(h, t)))
    between = pairs(And((Less(App(h1, p), App(h2, t)), Less(App(h2, t), App(h, t)))))
    codes_pairs = And((m_ref("almost_zero", h1), m_ref("is_product", h1, m=2)))
    step = _all(h1, Implies(And((codes_pairs, below)), _some(h2, And((m_ref("almost_zero", h2), between)))))
    return And((m_ref("div_star", h, n=n - 1), step))


@register("subset_enc")
def _subset_enc(y, x, fresh):
    t = fresh.var(IS(_arity(x)))
    return _all(t, Implies(m_ref("mem", t, y), m_ref("mem", t, x)))


@register("permutes")
def _permutes(f, x, fresh):
    a, b = fresh.var(IS(2)), fresh.var(IS(2))
    dom = _all(a, Iff(m_ref("mem", a, x), _some(b, m_ref("mem2", a, b, f))))
    rng = _all(b, Iff(m_ref("mem", b, x), _some(a, m_ref("mem2", a, b, f))))
    return And((m_ref("one_onefun", f, m=2), dom, rng))


@register("fixes_setwise")
def _fixes_setwise(f, y, fresh):
    a, b = fresh.var(IS(2)), fresh.var(IS(2))
    return _all(a, _all(b, Implies(m_ref("mem2", a, b, f), Iff(m_ref("mem", a, y), m_ref("mem", b, y)))))


@register("at_most_two_values")
def _at_most_two_values(h, fresh):
    x, y, f = fresh.var(F(2)), fresh.var(F(2)), fresh.var(F(4))
    inner = _all(f, Implies(And((m_ref("permutes", f, x), m_ref("fixes_setwise", f, y))),
                            m_ref("carries", f, h, h)))
    return _all(x, Implies(m_ref("encodes_subset", x),
                           _some(y, And((m_ref("encodes_subset", y), m_ref("subset_enc", y, x), inner)))))


@register("kappa_le_continuum")
def _kappa_le_continuum(fresh):
    h = fresh.var(F(2))
    return _some(h, And((Not(m_ref("is_zero", h)), m_ref("almost_zero", h), m_ref("at_most_two_values", h))))


@register("kappa_successor")
def _kappa_successor(fresh):
    k = fresh.var(F(2))
    return And((m_ref("cf_le_continuum"), _all(k, Implies(m_ref("one_one", k), m_ref("is_zero", k)))))


M_NAMES = tuple(sorted(M_REGISTRY))
