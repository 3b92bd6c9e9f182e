import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symq.ordinal import (ONE, SOMEGA, ZERO, Cofinality, Ord, OrdinalSyntaxError, Small, add,
                          build_map_5_3_iv, canonical_k, cf, coeff, compare, gamma, low, ord_sum,
                          parse_ord, property_sum_congruence, random_ord, random_sim_mutant, sim_all,
                          sim_k, sort_ords, subtract_left, successor, tail, to_text, upper)

W = Ord.power(1)
w = Ord.of(SOMEGA)


def O(text):
    return parse_ord(text)


# ---------------------------------------------------------------- flat-monomial oracle
#
# Every ordinal here is a finite sum of monomials Ω^(ω·d + m)·ω^e·c with c a positive
# integer. Keys (d, m, key(e)) order those monomials; Python tuple comparison is the
# lexicographic order on normal forms, so comparison and addition reduce to textbook
# base-ω Cantor normal form manipulation on flat lists.

def small_key(s: Small) -> tuple:
    return tuple((small_key(e), c) for e, c in s.terms)


def flat(a: Ord, d: int = 0) -> list:
    out = flat(a.omega, d + 1) if a.omega is not None else []
    for m, c in a.levels:
        out += [((d, m, small_key(e)), k) for e, k in c.terms]
    return out


def flat_cmp(x: list, y: list) -> int:
    return (x > y) - (x < y)


def flat_add(x: list, y: list) -> list:
    if not y:
        return x
    lead, c = y[0]
    kept = [t for t in x if t[0] > lead]
    same = sum(k for key, k in x if key == lead)
    return kept + [(lead, same + c)] + y[1:]


def corpus(n=200, seed=11):
    rng = random.Random(seed)
    fixed = [ZERO, ONE, Ord.of(5), w, W, O("W^2*3 + W*5 + 7"), O("W^w"), O("W^w*{W^w} + 4"),
             O("W^w*2 + W^3*(w^2*2+5)"), O("W*(w)")]
    return fixed + [random_ord(rng, max_level=3, omega_depth=2, density=0.4) for _ in range(n - len(fixed))]


CORPUS = corpus()

ords = st.integers(0, 2 ** 32).map(lambda s: random_ord(random.Random(s), max_level=3, omega_depth=2))


# ---------------------------------------------------------------- examples

def test_arithmetic_examples():
    assert add(Ord.of(5), W) == W
    assert subtract_left(w, O("w*2")) == w
    a = O("W^2*3 + W*5 + 7")
    assert [coeff(a, n) for n in range(4)] == [Small.of(7), Small.of(5), Small.of(3), Small.of(0)]
    assert tail(a, 0) == O("W^2*3 + W*5")


def test_cofinality_examples():
    assert cf(O("W*5")) is Cofinality.BIG
    assert upper(O("W^2*3 + W*5 + 7"), 0) == Small.of(0)
    assert cf(w) is Cofinality.OMEGA
    # the tail of ω above level 0 is zero, so its invariant is 1 + cf(0)
    assert upper(w, 0) == Small.of(1)
    assert upper(O("W*(w) + 2"), 0) == SOMEGA
    assert cf(Ord.of(7)) is Cofinality.ONE and cf(ZERO) is Cofinality.ZERO
    assert cf(O("W^w")) is Cofinality.OMEGA
    assert cf(O("W^w*{W}")) is Cofinality.BIG
    assert cf(O("W*(w)")) is Cofinality.OMEGA


def test_canonical_examples():
    assert canonical_k(O("W^5*2 + W"), 1) == O("W^2*2 + W")
    a = O("W*(w+3) + 4")
    assert canonical_k(a, 0) == a
    assert sim_k(O("W^2*3 + W*5 + 7"), O("W^3 + W*5 + 7"), 1)


def test_canonical_keeps_cofinality_big_from_the_omega_part():
    # α_ω = Ω has cofinality Ω; a zero coefficient at level k+1 would lose that
    a = O("W^w*{W} + 3")
    c = canonical_k(a, 0)
    assert c == O("W + 3")
    assert sim_k(a, c, 0)


def test_gamma_examples():
    assert gamma(Ord.of(5), [Ord.of(2), Ord.of(7)]) == Ord.of(3)
    a = O("W*2 + 1")
    assert gamma(a, []) == successor(a)


def test_congruence_examples():
    assert sim_k(ord_sum([Ord.of(5), W]), ord_sum([Ord.of(9), W]), 0)
    assert sim_k(ord_sum([]), ord_sum([]), 2)


def test_subtract_left_rejects_larger_left_argument():
    with pytest.raises(ValueError):
        subtract_left(W, Ord.of(5))


def test_malformed_values_rejected():
    with pytest.raises(ValueError):
        Ord(None, ((1, 1), (2, 1)))
    with pytest.raises(ValueError):
        Small(((Small.of(0), 1), (Small.of(1), 1)))


# ---------------------------------------------------------------- oracle agreement

def test_compare_and_add_match_oracle_on_corpus():
    flats = [flat(a) for a in CORPUS]
    for a, fa in zip(CORPUS, flats):
        for b, fb in zip(CORPUS, flats):
            assert compare(a, b) == flat_cmp(fa, fb)
            assert flat(add(a, b)) == flat_add(fa, fb)


def test_small_order_matches_polynomial_evaluation():
    # with finite exponents, ω^n·c orders like B^n·c for a base B above every coefficient
    rng = random.Random(3)

    def poly(rng):
        exps = sorted(rng.sample(range(6), rng.randint(0, 4)), reverse=True)
        return Small(tuple((Small.of(e), rng.randint(1, 9)) for e in exps))

    def value(s):
        return sum(c * 100 ** e.as_int() for e, c in s.terms)

    for _ in range(3000):
        a, b = poly(rng), poly(rng)
        assert compare(Ord.of(a), Ord.of(b)) == (value(a) > value(b)) - (value(a) < value(b))
        total = Ord.of(a) + Ord.of(b)
        assert value(coeff(total, 0)) == _poly_add(a, b, value)


def _poly_add(a, b, value):
    # ordinal addition on polynomials in ω: a's terms below b's leading exponent are absorbed
    if b.is_zero:
        return value(a)
    lead = b.terms[0][0].as_int()
    return sum(c * 100 ** e.as_int() for e, c in a.terms if e.as_int() >= lead) + value(b)


def test_sort_ords_matches_oracle():
    distinct = {tuple(flat(a)) for a in CORPUS}
    assert [flat(a) for a in sort_ords(CORPUS)] == sorted(map(list, distinct))


# ---------------------------------------------------------------- laws

@given(ords, ords, ords)
@settings(max_examples=200, deadline=None)
def test_add_associative_and_monotone(a, b, c):
    assert add(add(a, b), c) == add(a, add(b, c))
    assert compare(a, add(a, b)) <= 0 and compare(b, add(a, b)) <= 0
    if compare(b, c) < 0:
        assert compare(add(a, b), add(a, c)) < 0


@given(ords, ords)
@settings(max_examples=200, deadline=None)
def test_subtract_left_is_least_solution(b, x):
    g = add(b, x)
    d = subtract_left(b, g)
    assert add(b, d) == g
    assert compare(d, x) <= 0
    if compare(b, x) <= 0:
        lo, hi = (b, x)
        assert add(lo, subtract_left(lo, hi)) == hi


@given(ords, st.integers(0, 4))
@settings(max_examples=200, deadline=None)
def test_reconstruction(a, n):
    assert add(tail(a, n), low(a, n)) == a


@given(ords, st.integers(0, 3))
@settings(max_examples=300, deadline=None)
def test_canonical_properties(a, k):
    c = canonical_k(a, k)
    assert compare(c, Ord.power(k + 2)) < 0
    assert sim_k(a, c, k)
    assert canonical_k(c, k) == c
    if compare(a, Ord.power(k + 1)) < 0:
        assert c == a


@given(ords, ords, st.integers(0, 3))
@settings(max_examples=200, deadline=None)
def test_sim_k_classes_survive_canonicalisation(a, b, k):
    assert sim_k(a, b, k) == sim_k(canonical_k(a, k), canonical_k(b, k), k)


@given(ords, ords, st.integers(0, 3))
@settings(max_examples=200, deadline=None)
def test_absorption(a, b, k):
    if compare(a, Ord.power(k + 1)) >= 0:
        assert sim_k(a, add(b, a), k)


def test_sim_k_is_an_equivalence_relation():
    rng = random.Random(5)
    for _ in range(300):
        k = rng.randint(0, 3)
        a = random_ord(rng, k + 3)
        b = random_sim_mutant(rng, a, k)
        c = random_sim_mutant(rng, b, k)
        assert sim_k(a, a, k)
        assert sim_k(a, b, k) and sim_k(b, a, k)
        assert sim_k(b, c, k) and sim_k(a, c, k)


@given(ords, ords, st.integers(0, 2))
@settings(max_examples=200, deadline=None)
def test_sim_k_refines_with_k(a, b, k):
    if sim_k(a, b, k + 1):
        assert sim_k(a, b, k)
    if sim_all(a, b):
        assert sim_k(a, b, k)


def test_sim_all_is_equality_of_finite_part_and_omega_invariants():
    assert sim_all(O("W^w + W*2"), O("W^w*3 + W*2"))
    assert not sim_all(O("W^w + W*2"), O("W^w*{W} + W*2"))
    assert not sim_all(O("W^4 + 1"), O("W^5 + 1"))


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_sum_congruence_campaign(seed):
    r = property_sum_congruence(seed, trials=300)
    assert r.passed, r.counterexamples[:1]
    assert r.trials == 300 and r.absorption_trials > 0


# ---------------------------------------------------------------- gamma and the map

def _below(rng, alpha, size):
    out = set()
    for _ in range(size * 4):
        x = random_ord(rng, 4, 1)
        if compare(x, alpha) < 0:
            out.add(x)
    return list(out)[:size]


def _brute_gamma(a: int, A) -> int:
    below = [x for x in A if x < a]
    return sum(1 for b in range(a + 1) if all(x < b for x in below))


def test_gamma_matches_enumeration_on_naturals():
    rng = random.Random(2)
    for _ in range(300):
        A = rng.sample(range(30), rng.randint(0, 6))
        a = rng.randrange(30)
        assert gamma(Ord.of(a), [Ord.of(x) for x in A]) == Ord.of(_brute_gamma(a, A))


def test_map_post_conditions():
    rng = random.Random(9)
    for _ in range(150):
        k = rng.randint(0, 3)
        alpha = random_ord(rng, k + 3, 1)
        if alpha.is_zero:
            continue
        beta = random_sim_mutant(rng, alpha, k + 1)
        A = _below(rng, alpha, rng.randint(0, 20))
        r = build_map_5_3_iv(alpha, beta, A, k)
        assert r.passed, (alpha, beta, A, k)
        assert len(r.gamma_pairs) == len(A) + 1


def test_map_preconditions():
    with pytest.raises(ValueError):
        build_map_5_3_iv(O("W*2"), O("W*3"), [], 0)
    with pytest.raises(ValueError):
        build_map_5_3_iv(O("W*2"), O("W*2"), [O("W*3")], 0)


# ---------------------------------------------------------------- text form

def test_text_examples():
    a = O("W^w*{2} + W^3*(w^2*2+5) + W*(w) + 4")
    assert a.omega == Ord.of(2)
    assert coeff(a, 3) == Small(((Small.of(2), 2), (Small.of(0), 5)))
    assert O("Ω*ω + 1") == O("W*(w) + 1")
    assert O("w^2") == Ord.of(Small(((Small.of(2), 1),)))


def test_text_round_trip_on_corpus():
    for a in CORPUS:
        assert parse_ord(to_text(a)) == a


@given(ords)
@settings(max_examples=200, deadline=None)
def test_text_round_trip(a):
    assert parse_ord(to_text(a)) == a


@pytest.mark.parametrize("text", ["", "W^", "W*", "3 +", "x", "W^w*{", "(w"])
def test_syntax_errors(text):
    with pytest.raises(OrdinalSyntaxError):
        parse_ord(text)
