import itertools

import pytest

from symq.alt5 import (a5_centralizer_order, a5_generators, a5_index, a5_table, all_subgroups, check_lemma_3_3,
                       check_lemma_3_5_case1, class_representatives, commute, conjugacy_classes,
                       coset_action, decompose_30, decompose_60, diagonal_orbit_lengths, nu,
                       product_action, s5_table, satisfies_diag, stabilizer_subgroup,
                       twisted_regular_pair)
from symq.perm import Permutation, PermTuple, compose, orbits_raw

G = a5_table()


# ---------------------------------------------------------------- tables and subgroups

def test_table_basics():
    assert G.order == 60 and s5_table().order == 120
    assert all(G.product[0][k] == k for k in range(60))
    assert {G.element_order(i) for i in range(60)} == {1, 2, 3, 5}
    assert G.elements[0] == (0, 1, 2, 3, 4)
    assert list(G.elements) == sorted(G.elements)


def test_subgroup_orders_and_count():
    subs = all_subgroups()
    assert len(subs) == 59
    assert {s.order for s in subs} == {1, 2, 3, 4, 5, 6, 10, 12, 60}


def _brute_subgroups():
    """Every subset closed under products, found from closures of element pairs and triples."""
    found = set()
    for i, j in itertools.combinations_with_replacement(range(60), 2):
        found.add(G.closure((i, j)))
    return found


def test_subgroup_list_matches_independent_closure():
    assert {s.members for s in all_subgroups()} == _brute_subgroups()


def test_order_ten_subgroups_conjugate_in_s5():
    S = s5_table()
    tens = [s for s in all_subgroups() if s.order == 10]
    as_s5 = [frozenset(S.index[G.elements[i]] for i in s.members) for s in tens]
    first = as_s5[0]
    orbit = {frozenset(S.conj(x, a) for x in first) for a in range(120)}
    assert all(m in orbit for m in as_s5)


def test_class_representatives():
    reps = class_representatives()
    assert sorted(r.order for r in reps) == [1, 2, 3, 4, 5, 6, 10, 12, 60]


# ---------------------------------------------------------------- coset actions

def test_coset_action_examples():
    full = [s for s in all_subgroups() if s.order == 60][0]
    assert coset_action(full).degree == 1
    a4 = stabilizer_subgroup(4)
    assert a4.order == 12 and coset_action(a4).degree == 5
    reg = coset_action(all_subgroups()[0])
    assert reg.degree == 60
    for k in range(1, 60):
        g = reg.action.raw[k]
        assert all(g[p] != p for p in range(60))


def test_transitive_degrees():
    degrees = {coset_action(s).degree for s in all_subgroups()}
    assert degrees <= {1, 5, 6, 10, 12, 15, 20, 30, 60}


def test_coset_actions_satisfy_diag():
    for s in class_representatives():
        assert satisfies_diag(coset_action(s).action)


# ---------------------------------------------------------------- Lemma 3.3

def test_lemma_3_3_witness_for_a4_pair():
    a4 = stabilizer_subgroup(4)
    a = a5_index("(2 3 4)")
    assert len(a4.members & a4.conjugate(a).members) <= 3


def test_small_subgroups_need_no_conjugator():
    for H in all_subgroups():
        if H.order > 3:
            continue
        for K in all_subgroups():
            if K.order < 60:
                assert len(H.members & K.members) <= 3


def test_lemma_3_3_report():
    r = check_lemma_3_3()
    assert r.passed and not r.violations
    assert "subgroups: 59" in r.lines


# ---------------------------------------------------------------- Lemma 3.4 oracle

def _quotient(B, A):
    reps, cid = [], {}
    for b in sorted(B):
        if b in cid:
            continue
        for x in {G.product[a][b] for a in A}:
            cid[x] = len(reps)
        reps.append(b)
    return [[cid[G.product[x][y]] for y in reps] for x in reps], cid[0]


def _generators(mul, e):
    gens, cur = [], {e}
    for x in range(len(mul)):
        if x in cur:
            continue
        gens.append(x)
        cur, queue = {e}, [e]
        for y in queue:
            for g in gens:
                z = mul[y][g]
                if z not in cur:
                    cur.add(z)
                    queue.append(z)
    return gens


def _isomorphisms(q1, q2):
    (m1, e1), (m2, e2) = q1, q2
    if len(m1) != len(m2):
        return 0
    gens = _generators(m1, e1)
    count = 0
    for images in itertools.product(range(len(m2)), repeat=len(gens)):
        phi, queue, ok = {e1: e2}, [e1], True
        for x in queue:
            for g, gi in zip(gens, images):
                y, v = m1[x][g], m2[phi[x]][gi]
                if y not in phi:
                    phi[y] = v
                    queue.append(y)
                elif phi[y] != v:
                    ok = False
                    break
            if not ok:
                break
        count += ok and len(set(phi.values())) == len(m1)
    return count


def goursat_counts(orders=(12, 36)):
    """Subgroups of A5 x A5 counted as isomorphisms between sections B/A and D/C."""
    subs = [s.members for s in all_subgroups()]
    sections = [(len(B), len(A), _quotient(B, A)) for B in subs for A in subs
                if A <= B and all(G.conj(a, b) in A for a in A for b in B)]
    out = dict.fromkeys(orders, 0)
    for b1, a1, q1 in sections:
        for b2, a2, q2 in sections:
            if b1 * a2 in out and b1 // a1 == b2 // a2:
                out[b1 * a2] += _isomorphisms(q1, q2)
    return out


def test_goursat_oracle_counts():
    # frozen: 1510 + 200 = 1710, the figure the closure enumeration must reproduce
    assert goursat_counts() == {12: 1510, 36: 200}


# ---------------------------------------------------------------- Lemma 3.5

def test_twisted_pairs_commute_and_give_stated_lengths():
    S = s5_table()
    for s in range(120):
        f, g = twisted_regular_pair(s)
        assert commute(f, g, a5_generators())
        lengths = {len(b) for b in orbits_raw([compose(f.raw[j], g.raw[j]) for j in range(60)], 60)}
        if sum(len(c) - 1 for c in S.perm(s).cycles()) % 2 == 0:
            assert {12, 20} <= lengths
        else:
            assert 30 in lengths


def test_centralizer_orders():
    S = s5_table()
    c = S.lookup(Permutation.parse("(0 1 2 3)", 5))
    assert a5_centralizer_order(c) == 2
    orders = {a5_centralizer_order(x) for x in range(120)}
    assert orders == {2, 3, 4, 5, 6, 60}


def test_lemma_3_5_case1_report():
    r = check_lemma_3_5_case1(full_diag_for=(0, 1))
    assert r.passed, r.violations


def _pair(order_h, order_k, meet=None):
    for H in all_subgroups():
        for K in all_subgroups():
            if H.order == order_h and K.order == order_k and (meet is None or len(H.members & K.members) == meet):
                return H, K
    raise LookupError


def test_product_action_degrees():
    H, K = _pair(12, 10, meet=2)
    g, h = product_action(H, K)
    assert g.ground_size == 30
    fg = PermTuple.from_raw(tuple(compose(a, b) for a, b in zip(g.raw, h.raw)))
    assert commute(g, h, a5_generators())
    assert [len(b) for b in fg.orbits()] == [30]
    H, K = _pair(12, 5)
    assert 60 in diagonal_orbit_lengths(H, K)


def _orbit_action(H, K, degree):
    """The diagonal of the product action restricted to one orbit of the given size."""
    g, h = product_action(H, K)
    raw = tuple(compose(a, b) for a, b in zip(g.raw, h.raw))
    block = next(b for b in orbits_raw(raw, g.ground_size) if len(b) == degree)
    pos = {p: i for i, p in enumerate(block)}
    return PermTuple.from_raw(tuple(tuple(pos[x[p]] for p in block) for x in raw))


def _glue(t1, t2):
    n1 = t1.ground_size
    return PermTuple.from_raw(tuple(a + tuple(n1 + y for y in b) for a, b in zip(t1.raw, t2.raw)))


@pytest.mark.parametrize("degree, order_h, order_k, meet, split", [
    (30, 12, 10, 2, decompose_30),
    (60, 12, 5, None, decompose_60),
])
def test_decompositions_recompose(degree, order_h, order_k, meet, split):
    t = _orbit_action(*_pair(order_h, order_k, meet), degree)
    assert satisfies_diag(t)
    g, h = split(t)
    assert tuple(compose(a, b) for a, b in zip(g.raw, h.raw)) == t.raw
    assert commute(g, h, a5_generators())
    assert nu(g, degree) == 0 and nu(h, degree) == 0
    two = _glue(t, t)
    g2, h2 = split(two)
    assert tuple(compose(a, b) for a, b in zip(g2.raw, h2.raw)) == two.raw


def test_decompose_rejects_non_actions():
    with pytest.raises(ValueError):
        decompose_30(PermTuple.identity(59, 30))


def test_conjugacy_classes_partition():
    subs = all_subgroups()
    classes = conjugacy_classes(subs)
    assert sum(len(c) for c in classes) == 59
    assert len(classes) == 9
