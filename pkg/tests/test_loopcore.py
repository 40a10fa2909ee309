import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from moufang import corpus, loopcore as lc
from moufang.errors import NoIdentity, NotASubloop, NotLatin, NotMoufang, NotNormal

# order 5, not a group: 1.1 = 0 but a group of order 5 is cyclic
ORDER5 = [[0, 1, 2, 3, 4],
          [1, 0, 3, 4, 2],
          [2, 4, 0, 1, 3],
          [3, 2, 4, 0, 1],
          [4, 3, 1, 2, 0]]

SMALL_NAMES = [e.name for e in corpus.corpus() if e.order <= 16]


def random_loop(n, seed):
    """Isotope of Z_n with the identity moved to index 0."""
    rng = np.random.default_rng(seed)
    a, b, c = (rng.permutation(n) for _ in range(3))
    x = np.arange(n)
    t = c[(a[x][:, None] + b[x][None, :]) % n]
    # make it a loop: principal isotope through row/column of element 0
    r = np.argsort(t[0])  # t[0, r[y]] = y
    s = np.argsort(t[:, 0])
    t = t[s][:, r]
    return lc.FiniteLoop(lc.normalize_identity(t))


def subgroups(G):
    """All subloops generated by at most two elements (every subgroup of a small group)."""
    out = {lc.subloop_generated(G, [a, b]).members for a in range(G.order) for b in range(G.order)}
    return [G.subloop(m) for m in sorted(out)]


def conjugation_normal(G, H):
    T, inv = G.table, G.inverse
    return all(T[T[g, h], inv[g]] in H for g in range(G.order) for h in H)


def test_validation():
    with pytest.raises(NotLatin):
        lc.FiniteLoop([[0, 1], [1, 1]])
    with pytest.raises(NotLatin):
        lc.FiniteLoop([[0, 1, 2], [1, 2, 0]])
    with pytest.raises(NoIdentity):
        lc.FiniteLoop([[1, 0], [0, 1]])
    t = np.array([[1, 0], [0, 1]])
    Q = lc.FiniteLoop(lc.normalize_identity(t))
    assert Q.order == 2
    with pytest.raises(NoIdentity):
        lc.normalize_identity([[0, 1, 2], [2, 0, 1], [1, 2, 0]])


def test_table_is_read_only():
    Q = corpus.get("Z3")
    with pytest.raises(ValueError):
        Q.table[0, 0] = 1


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 12), st.integers(0, 10**6))
def test_divisions_solve_equations(n, seed):
    Q = random_loop(n, seed)
    X, Y = np.indices((n, n)).reshape(2, -1)
    T = Q.table
    assert np.all(T[X, Q.ldiv[X, Y]] == Y)
    assert np.all(T[Q.rdiv[Y, X], X] == Y)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 12), st.integers(0, 10**6))
def test_closure_routes_agree_on_random_loops(n, seed):
    Q = random_loop(n, seed)
    for g in range(n):
        inner = lc.normal_closure(Q, [g], route="inner")
        cong = lc.normal_closure(Q, [g], route="congruence")
        assert inner == cong
        assert lc.is_normal(Q, inner, route="inner") and lc.is_normal(Q, inner, route="cosets")


def test_order5_loop_is_not_moufang():
    Q = lc.FiniteLoop(ORDER5)
    assert not lc.is_associative(Q)
    assert not lc.is_moufang(Q)
    with pytest.raises(NotMoufang):
        lc.lower_central_series(Q, "moufang")


@pytest.mark.parametrize("name", SMALL_NAMES)
def test_corpus_is_moufang_and_ip(name):
    Q = corpus.get(name)
    assert lc.is_moufang(Q, full=True)
    assert lc.is_ip_loop(Q)
    assert np.array_equal(Q.left_inverse, Q.right_inverse)


@pytest.mark.parametrize("name", ["S3", "D4", "Q8", "Z2xZ4", "Z2^3"])
def test_normality_matches_conjugation(name):
    G = corpus.get(name)
    for H in subgroups(G):
        expected = conjugation_normal(G, H)
        assert lc.is_normal(G, H, route="inner") == expected
        assert lc.is_normal(G, H, route="cosets") == expected


@pytest.mark.parametrize("name", SMALL_NAMES)
def test_closure_routes_agree_on_corpus(name):
    Q = corpus.get(name)
    for g in range(Q.order):
        assert lc.normal_closure(Q, [g], route="inner") == lc.normal_closure(Q, [g], route="congruence")


def test_inner_maps_fix_identity():
    Q = corpus.get("chein-S3")
    for a, b in itertools.product(range(Q.order), repeat=2):
        assert lc.inner_R(Q, a, b)[0] == 0 and lc.inner_L(Q, a, b)[0] == 0
    assert all(lc.inner_T(Q, a)[0] == 0 for a in range(Q.order))


def test_centers():
    assert lc.center(corpus.get("Q8")).members == (0, 4)  # +-1
    assert lc.center(corpus.get("D4")).members == (0, 2)  # 1, r^2
    assert lc.center(corpus.get("S3")).is_trivial
    Z = corpus.get("Z6")
    assert lc.center(Z).is_whole


def test_center_of_chein_double():
    Q = corpus.get("chein-S3")
    # the double of a centreless group still has trivial center
    assert lc.center(Q).is_trivial


def test_quotient_by_center_of_q8():
    Q = corpus.get("Q8")
    Qbar, proj = lc.quotient(Q, lc.center(Q))
    assert Qbar.order == 4 and lc.is_commutative(Qbar)
    assert set(lc.element_orders(Qbar)) == {1, 2}
    assert proj.is_homomorphism()
    assert proj.kernel() == lc.center(Q)


def test_quotient_rejects_non_normal():
    S3 = corpus.get("S3")
    H = next(H for H in subgroups(S3) if len(H) == 2)
    with pytest.raises(NotNormal):
        lc.quotient(S3, H)


def test_subloop_checks():
    Q = corpus.get("Z4")
    with pytest.raises(NotASubloop):
        Q.subloop([0, 1])
    assert Q.subloop([0, 2]) < Q.whole()
    assert lc.subloop_generated(Q, [1]).is_whole


def test_series_examples():
    assert lc.nilpotency_class(corpus.get("S3")) is None
    assert lc.upper_central_series(corpus.get("S3")).chain == [corpus.get("S3").trivial()]
    low = lc.lower_central_series(corpus.get("S3"))
    assert [len(c) for c in low.chain] == [6, 3]
    assert lc.nilpotency_class(corpus.get("Z4")) == 1
    Q = corpus.get("chein-Q8")
    up = lc.upper_central_series(Q)
    assert up.nilpotency_class == 2
    assert lc.is_central_series(Q, list(reversed(up.chain)))
    assert lc.is_central_series(Q, lc.lower_central_series(Q).chain)
    d = up.to_dict()
    assert d["schema"] == 1 and d["orders"][0] == 1 and d["orders"][-1] == 16


def test_central_series_rejects_non_central_chain():
    S3 = corpus.get("S3")
    A3 = lc.lower_central_series(S3).chain[1]
    assert not lc.is_central_series(S3, [S3.whole(), A3, S3.trivial()])


@pytest.mark.parametrize("name", SMALL_NAMES)
def test_associator_identities(name):
    Q = corpus.get(name)
    X, Y, Z = np.indices((Q.order,) * 3).reshape(3, -1)
    assert lc.inner_map_violations(Q, X, Y, Z) == 0
    assert lc.moufang_associator_violations(Q, X, Y, Z, form="swapped") == 0
    assert lc.diassoc_comm_violations(Q) == 0


def test_direct_associator_form_fails_on_double_of_s3():
    Q = corpus.get("chein-S3")
    X, Y, Z = np.indices((12,) * 3).reshape(3, -1)
    assert lc.moufang_associator_violations(Q, X, Y, Z, form="direct") > 0
    assert lc.moufang_associator_violations(Q, X, Y, Z, form="swapped") == 0
    with pytest.raises(ValueError):
        lc.moufang_associator_violations(Q, X, Y, Z, form="other")


def test_groups_have_trivial_associators():
    G = corpus.get("D4")
    X, Y, Z = np.indices((8,) * 3).reshape(3, -1)
    assert np.all(lc.assoc_alpha(G, X, Y, Z) == 0)
    assert np.all(lc.bracket_assoc(G, X, Y, Z) == 0)
    assert lc.moufang_associator_violations(G, X, Y, Z, form="direct") == 0


def test_element_orders():
    Q = corpus.get("chein-Q8")
    orders = lc.element_orders(Q)
    assert [lc.element_order(Q, g) for g in range(Q.order)] == list(orders)
    assert lc.is_p_loop(Q, 2) and not lc.is_p_loop(corpus.get("S3"), 2)
    assert sorted(lc.element_orders(corpus.get("Z4"))) == [1, 2, 4, 4]


def test_triple_sampling_is_deterministic():
    Q = corpus.get("Z3")
    a = [t for t in lc.iter_triples(Q, full=False, samples=50, seed=5)]
    b = [t for t in lc.iter_triples(Q, full=False, samples=50, seed=5)]
    assert all(np.array_equal(x, y) for u, v in zip(a, b) for x, y in zip(u, v))
    full = list(lc.iter_triples(Q, full=True))
    assert sum(len(t[0]) for t in full) == 27


def test_table_text_roundtrip(tmp_path):
    Q = corpus.get("chein-S3")
    path = tmp_path / "t.txt"
    lc.write_table(Q, path)
    assert lc.read_table(path) == Q
    assert path.read_text().startswith("order 12\n")
    with pytest.raises(ValueError):
        lc.parse_table("0 1\n1 0\n")


def test_direct_product():
    P = lc.direct_product(corpus.get("Z2"), corpus.get("Z3"))
    assert P.order == 6 and lc.is_commutative(P)
    assert max(lc.element_orders(P)) == 6


def test_simplicity():
    assert lc.is_simple(corpus.get("Z3"))
    assert not lc.is_simple(corpus.get("Z4"))
    assert not lc.is_simple(corpus.get("Z1"))
    assert not lc.is_simple(corpus.get("S3"))


@pytest.mark.parametrize("name", ["D4", "Q8", "chein-Q8", "chein-D4", "D4xZ2", "chein-Z4"])
def test_lower_terms_sit_inside_upper_terms(name):
    # standard statement: C_(r-i) <= Z_i for a central series of length r
    Q = corpus.get(name)
    lower = lc.lower_central_series(Q).chain
    upper = lc.upper_central_series(Q).chain
    r = len(lower) - 1
    assert r == len(upper) - 1
    for i in range(r + 1):
        assert lower[r - i] <= upper[i]
