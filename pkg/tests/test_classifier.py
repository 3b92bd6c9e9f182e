import random

import pytest

from symq.classifier import (Aleph, ContinuumSpec, KappaCase, QuotientSpec, SpecError, SuccessorOfMu,
                             alpha, alpha_star, case_tag, cf_cardinal, equivalent, invariants,
                             is_indecomposable, last_indecomposable, parse_cardinal, parse_spec)
from symq.ordinal import ONE, SOMEGA, Ord, Small, add, compare, parse_ord, random_ord, successor

CH = ContinuumSpec(Ord.of(1))


def spec(kappa, lam, mu, theta="1"):
    return parse_spec(kappa, lam, mu, theta)


def aleph(text):
    return Aleph(parse_ord(text))


# ---------------------------------------------------------------- parsing and validation

def test_parse_cardinal_forms():
    assert parse_cardinal("aleph_5") == aleph("5")
    assert parse_cardinal("aleph(w^2+w)") == aleph("w^2+w")
    assert parse_cardinal("ℵ(W*2)") == aleph("W*2")
    assert parse_cardinal("mu+") == SuccessorOfMu()
    with pytest.raises(SpecError):
        parse_cardinal("beth_1")


def test_spec_validation():
    with pytest.raises(SpecError):
        spec("aleph_5", "aleph_5", "aleph_9")
    with pytest.raises(SpecError):
        spec("aleph_2", "aleph_9", "aleph_5")
    with pytest.raises(SpecError):
        spec("mu+", "aleph_3", "aleph_5")
    with pytest.raises(SpecError):
        spec("aleph_1", "aleph_2", "aleph_3", theta="0")
    with pytest.raises(SpecError):
        spec("aleph_1", "aleph_2", "aleph_3", theta="W")
    assert spec("aleph_2", "aleph_6", "aleph_5").gamma == Ord.of(6)
    assert spec("aleph_2", "mu+", "aleph_5").gamma == Ord.of(6)


# ---------------------------------------------------------------- cofinality and cases

def test_cf_cardinal_examples():
    assert cf_cardinal(aleph("w"), CH) == aleph("0")
    assert cf_cardinal(aleph("5"), CH) == aleph("5")
    assert cf_cardinal(aleph("w*2"), CH) == aleph("0")
    assert cf_cardinal(aleph("0"), CH) == aleph("0")
    assert cf_cardinal(aleph("W"), CH) == aleph("2")
    with pytest.raises(SpecError):
        cf_cardinal(SuccessorOfMu())


def test_case_examples():
    assert case_tag(spec("aleph_2", "aleph_5", "aleph_9")) == (False, KappaCase.A)
    assert case_tag(spec("aleph(w)", "aleph(w+1)", "aleph(w+4)"))[1] is KappaCase.B
    assert case_tag(spec("aleph_1", "aleph_2", "aleph_2"))[1] is KappaCase.C
    for theta in ("1", "5", "w"):
        assert case_tag(spec("aleph_0", "aleph_1", "aleph_3", theta))[1] is KappaCase.D
    assert case_tag(spec("aleph_2", "mu+", "aleph_3")) == (True, KappaCase.A)
    assert case_tag(spec("aleph_2", "aleph_4", "aleph_3")) == (True, KappaCase.A)


def test_case_boundaries_move_with_the_continuum():
    s = ("aleph_3", "aleph_4", "aleph_5")
    assert case_tag(spec(*s, theta="2"))[1] is KappaCase.A
    assert case_tag(spec(*s, theta="3"))[1] is KappaCase.C
    # cf(ℵ_Ω) = Ω = ℵ_{θ+1} exceeds the continuum
    assert case_tag(spec("aleph(W)", "aleph(W+1)", "aleph(W+1)"))[1] is KappaCase.A


# ---------------------------------------------------------------- alpha and alpha*

def test_alpha_examples():
    assert alpha(spec("aleph_1", "aleph_2", "aleph_3")) == ONE
    assert alpha(spec("aleph(w)", "aleph(w*2)", "aleph(w*2)")) == Ord.of(SOMEGA)
    assert alpha(spec("aleph_2", "aleph(w)", "aleph(w)")) == Ord.of(SOMEGA)


def test_alpha_star_examples():
    assert last_indecomposable(parse_ord("w^2+w")) == parse_ord("w")
    assert last_indecomposable(Ord.of(5)) == ONE
    assert last_indecomposable(parse_ord("W*3")) == parse_ord("W")
    assert last_indecomposable(parse_ord("W^w*{W^2+W}")) == parse_ord("W^w*{W}")
    assert alpha_star(spec("aleph_0", "aleph_1", "aleph_1")) is None


def _random_spec(rng, theta=CH):
    beta = random_ord(rng, max_level=2, omega_depth=1, density=0.5, small_depth=1)
    xi = random_ord(rng, max_level=2, omega_depth=0, density=0.5, small_depth=1)
    if xi.is_zero:
        xi = ONE
    gam = add(beta, xi)
    if compare(beta, gam) >= 0:
        gam = successor(beta)
    mu = add(gam, random_ord(rng, max_level=1, omega_depth=0, density=0.5, small_depth=1))
    if rng.random() < 0.3:
        return QuotientSpec(Aleph(beta), SuccessorOfMu(), Aleph(mu), theta)
    return QuotientSpec(Aleph(beta), Aleph(gam), Aleph(mu), theta)


def test_alpha_star_is_indecomposable():
    rng = random.Random(1)
    for _ in range(300):
        s = _random_spec(rng)
        star = alpha_star(s)
        if star is None:
            continue
        assert is_indecomposable(star)
        # it absorbs every left summand of lower rank
        for n in range(3):
            if compare(Ord.power(n), star) < 0:
                assert add(Ord.power(n), star) == star
        assert add(_strip(s.beta), star) == s.beta


def _strip(b):
    """b with one copy of its last indecomposable summand removed."""
    if not b.levels:
        return Ord.omega_power(_strip(b.omega))
    n, c = b.levels[-1]
    e, k = c.terms[-1]
    terms = c.terms[:-1] + (((e, k - 1),) if k > 1 else ())
    return Ord(b.omega, b.levels[:-1] + (((n, Small(terms)),) if terms else ()))


# ---------------------------------------------------------------- invariants

def test_invariant_examples():
    r = invariants(spec("aleph_2", "aleph(w)", "aleph(w)"), 2)
    assert r.alpha == Ord.of(SOMEGA)
    assert r.alpha_coeffs[0] == SOMEGA
    assert r.alpha_uppers == (Small.of(1),) * 3
    c = invariants(spec("aleph_1", "aleph_2", "aleph_3"), 1)
    assert c.kappa_case is KappaCase.C and c.kap and not c.fin
    d = invariants(spec("aleph_0", "aleph_1", "aleph_1"), 1)
    assert d.kap and d.fin and d.alpha_star is None
    assert ("alpha_star", "n/a") in d.fields()


def test_report_lines():
    r = invariants(spec("aleph(w^2+w)", "aleph(w^2+w*2)", "aleph(w^3)"), 3)
    lines = r.lines()
    assert lines[0] == "max_case: lambda<=mu"
    assert "kappa_case: B" in lines and "alpha: w" in lines and "alpha_star: w" in lines
    assert all("\t" in x for x in r.lines(machine=True))
    with pytest.raises(ValueError):
        invariants(spec("aleph_1", "aleph_2", "aleph_3"), -1)


# ---------------------------------------------------------------- equivalence

def test_equivalence_examples():
    v = equivalent(spec("aleph_5", "aleph_6", "aleph_9"), spec("aleph_7", "aleph_8", "aleph_12"))
    assert v.agree and str(v) == "InvariantsAgree"
    v = equivalent(spec("aleph_2", "aleph_5", "aleph_9"), spec("aleph_2", "aleph_6", "aleph_9"))
    assert str(v) == "Distinguished(alpha_[0])"
    v = equivalent(spec("aleph(w)", "aleph(w+1)", "aleph(w+3)"), spec("aleph(w+1)", "aleph(w+2)", "aleph(w+3)"))
    assert str(v) == "Distinguished(case)"


def test_mismatched_continuum():
    with pytest.raises(SpecError):
        equivalent(spec("aleph_5", "aleph_6", "aleph_9"), spec("aleph_5", "aleph_6", "aleph_9", theta="2"))


def test_successor_family_agrees_at_every_level():
    below = [spec(f"aleph_{b}", f"aleph_{b + 1}", f"aleph_{b + 4}") for b in range(2, 12)]
    top = [spec(f"aleph_{b}", "mu+", f"aleph_{b}") for b in range(2, 12)]
    for family in (below, top):
        for s in family:
            assert case_tag(s)[1] is KappaCase.A
            for t in family:
                assert all(equivalent(s, t, k).agree for k in range(5))
                assert equivalent(s, t).agree
    assert str(equivalent(below[0], top[0])) == "Distinguished(case)"


def test_equivalence_relation_and_refinement():
    rng = random.Random(4)
    specs = [_random_spec(rng) for _ in range(40)]
    for k in range(3):
        rel = [[equivalent(s, t, k).agree for t in specs] for s in specs]
        for i in range(len(specs)):
            assert rel[i][i]
            for j in range(len(specs)):
                assert rel[i][j] == rel[j][i]
                if rel[i][j]:
                    assert all(rel[i][m] == rel[j][m] for m in range(len(specs)))
                    assert equivalent(specs[i], specs[j], max(k - 1, 0)).agree
        for i in range(len(specs)):
            for j in range(len(specs)):
                if equivalent(specs[i], specs[j], k + 1).agree:
                    assert rel[i][j]


def test_mu_plays_no_part_below_its_successor():
    rng = random.Random(6)
    for _ in range(200):
        s = _random_spec(rng)
        if isinstance(s.lam, SuccessorOfMu):
            continue
        bumped = QuotientSpec(s.kappa, s.lam, Aleph(add(s.mu.index, Ord.of(rng.randint(1, 5)))), s.continuum)
        for k in (0, 2):
            assert invariants(s, k) == invariants(bumped, k)


def test_max_case_uses_mu_only_through_its_successor():
    a = invariants(spec("aleph_2", "mu+", "aleph_7"), 2)
    b = invariants(spec("aleph_2", "aleph_8", "aleph_7"), 2)
    assert a == b and a.max_case
