import functools
import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from moufang import corpus, loopalg as la, loopcore as lc
from moufang.errors import Mismatch, NotNilpotent, NotNormal, NotPLoop
from moufang.gfpn import make_field


# --- independent oracles: dict-of-coefficients products, plain Gaussian rank ----------

def naive_mul(Q, p, x, y):
    out = [0] * Q.order
    for i, a in enumerate(x):
        if a:
            for j, b in enumerate(y):
                if b:
                    k = int(Q.table[i, j])
                    out[k] = (out[k] + a * b) % p
    return out


def naive_rank(rows, p):
    M = [list(r) for r in rows]
    rank, col = 0, 0
    ncols = len(M[0]) if M else 0
    while rank < len(M) and col < ncols:
        piv = next((i for i in range(rank, len(M)) if M[i][col] % p), None)
        if piv is None:
            col += 1
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][col], -1, p)
        M[rank] = [v * inv % p for v in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][col]:
                f = M[i][col]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[rank])]
        rank += 1
        col += 1
    return rank


def bracketed_products(Q, p, gens, k):
    """Every product of k generators under every bracketing."""
    @functools.lru_cache(maxsize=None)
    def prods(m):
        if m == 1:
            return tuple(tuple(g) for g in gens)
        out = set()
        for i in range(1, m):
            for u in prods(i):
                for v in prods(m - i):
                    out.add(tuple(naive_mul(Q, p, u, v)))
        return tuple(out)
    return prods(k)


def one_minus(Q, p, g):
    v = [0] * Q.order
    v[0] = 1
    v[g] = (v[g] - 1) % p
    return v


@pytest.mark.parametrize("name,p,k", [("Z2xZ2", 2, 2), ("Z2xZ2", 2, 3), ("Z4", 2, 3),
                                      ("Q8", 2, 3), ("chein-Z2", 2, 3), ("Z3", 3, 2)])
def test_powers_match_bracket_enumeration(name, p, k):
    Q = corpus.get(name)
    F = make_field(p)
    A = la.LoopAlgebra(Q, F)
    W = la.omega_ideal(A)
    gens = [one_minus(Q, p, g) for g in range(1, Q.order)]
    # omega(Q) as an ideal: products of k elements of the span of 1 - g
    expected = naive_rank(bracketed_products(Q, p, gens, k), p) if k > 1 else len(gens)
    assert la.ideal_power(W, k).rank == expected


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["S3", "chein-S3", "Q8", "Z2xZ4"]), st.sampled_from([2, 3, 4]),
       st.integers(0, 10**6))
def test_product_matches_naive(name, q, seed):
    Q = corpus.get(name)
    F = make_field(2, 2) if q == 4 else make_field(q)
    A = la.LoopAlgebra(Q, F)
    rng = np.random.default_rng(seed)
    x, y, z = (A.random_element(rng) for _ in range(3))
    xy = x * y
    if F.n == 1:
        assert list(xy.coeffs) == naive_mul(Q, q, list(x.coeffs), list(y.coeffs))
    # bilinearity and the augmentation map
    assert x * (y + z) == x * y + x * z
    assert (x + y) * z == x * z + y * z
    assert la.augmentation(xy) == la.augmentation(x) * la.augmentation(y)


def test_basis_products_and_unit():
    Q = corpus.get("chein-S3")
    A = la.LoopAlgebra(Q, make_field(3))
    for g, h in [(1, 2), (7, 9), (11, 3)]:
        assert A.basis_element(g) * A.basis_element(h) == A.basis_element(int(Q.table[g, h]))
    x = A.random_element(np.random.default_rng(0))
    assert A.one * x == x == x * A.one


def test_char2_example():
    A = la.LoopAlgebra(corpus.get("Z2"), make_field(2))
    g = A.basis_element(1)
    assert ((A.one + g) * (A.one - g)).is_zero()
    assert la.augmentation(A.basis_element(1)) == make_field(2).one
    assert la.augmentation(A.one_minus(1)) == make_field(2).zero


def test_mixing_algebras_fails():
    A = la.LoopAlgebra(corpus.get("Z2"), make_field(2))
    B = la.LoopAlgebra(corpus.get("Z3"), make_field(2))
    with pytest.raises(Mismatch):
        A.one * B.one
    with pytest.raises(Mismatch):
        A.element([1, 0, 0])


def test_subspace_basics():
    F = make_field(3)
    S = la.Subspace.span(F, 4, [[1, 2, 0, 0], [2, 1, 0, 0], [0, 0, 1, 1]])
    assert S.rank == 2
    assert S.contains(np.array([1, 2, 2, 2]))
    assert not S.contains(np.array([1, 0, 0, 0]))
    assert la.Subspace.span(F, 4, [[0, 0, 2, 2], [2, 1, 0, 0]]) == S
    T = la.Subspace.span(F, 4, [[1, 0, 0, 0]])
    assert (S + T).rank == 3 and S <= S + T and S < S + T
    # reduced echelon: pivots are 1 and their columns are otherwise zero
    for r, c in enumerate(S.pivots):
        assert S.basis[r, c] == 1 and np.count_nonzero(S.basis[:, c]) == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(1, 7), st.integers(0, 10**6))
def test_rref_rank_matches_naive(rows, cols, seed):
    F = make_field(5)
    M = np.random.default_rng(seed).integers(0, 5, size=(rows, cols))
    R, piv = la.rref(F, M)
    assert len(piv) == naive_rank(M.tolist(), 5)
    assert la.Subspace.span(F, cols, R) == la.Subspace.span(F, cols, M)


def test_omega_examples():
    F2 = make_field(2)
    A = la.LoopAlgebra(corpus.get("Z2"), F2)
    W = la.omega_ideal(A)
    assert W.rank == 1 and W.subspace.contains(A.one_minus(1).coeffs)
    assert la.omega_ideal(A, A.loop.trivial()).rank == 0
    Q = corpus.get("chein-Q8")
    B = la.LoopAlgebra(Q, F2)
    assert la.omega_ideal(B).subspace == B.augmentation_kernel()
    assert la.omega_ideal(B).rank == 15


def test_omega_rejects_non_normal():
    S3 = corpus.get("S3")
    A = la.LoopAlgebra(S3, make_field(3))
    H = next(S3.subloop(m) for m in [(0, g) for g in range(1, 6)]
             if lc.is_subloop(S3, m))
    with pytest.raises(NotNormal):
        la.omega_ideal(A, H)


def test_nilpotency_index_examples():
    F2, F3 = make_field(2), make_field(3)
    idx = lambda name, F: la.nilpotency_index(la.omega_ideal(la.LoopAlgebra(corpus.get(name), F)))
    assert idx("Z1", F2) == 1
    assert idx("Z2", F2) == 2
    assert idx("Z3", F2) is None
    assert idx("S3", F2) is None
    assert idx("Z3", F3) == 3
    W = la.omega_ideal(la.LoopAlgebra(corpus.get("Z3"), F3))
    assert la.ideal_power(W, 2).rank == 1 and la.ideal_power(W, 3).rank == 0


def test_z4_index_is_four():
    # GF(2)Z4 = GF(2)[t]/(t^4) with t = 1 + g, so omega^k = (t^k) has dimension 4 - k
    A = la.LoopAlgebra(corpus.get("Z4"), make_field(2))
    W = la.omega_ideal(A)
    assert la.power_dims(W, 4) == [3, 2, 1, 0]
    t = A.one_minus(1)
    assert not (t ** 3).is_zero() and (t ** 4).is_zero()
    assert la.nilpotency_index(W) == 4


def test_powers_decrease():
    A = la.LoopAlgebra(corpus.get("chein-D4"), make_field(2))
    W = la.omega_ideal(A)
    for k in range(1, 8):
        assert la.ideal_power(W, k + 1) <= la.ideal_power(W, k)


def test_nilpotency_reports():
    r = la.augmentation_nilpotency_check(corpus.get("chein-Q8"), 2)
    assert r.passed and r.binomial_ok and r.nilpotency_index == 7
    with pytest.raises(NotPLoop):
        la.augmentation_nilpotency_check(corpus.get("Z3"), 2)


def test_bracket_identity_examples():
    A = la.LoopAlgebra(corpus.get("chein-Q8"), make_field(2))
    W = la.omega_ideal(A)
    z = A.zero
    assert la.bracket_identity_check(z, z, z, 1)
    rng = np.random.default_rng(3)
    for _ in range(20):
        u, v, w = (A.random_element(rng, W.subspace) for _ in range(3))
        assert la.bracket_identity_check(u, v, w, 7)
    with pytest.raises(NotNilpotent):
        la.bracket_identity_check(A.one, z, z, 5)


def test_bracket_identities_over_gf3_for_a_3_loop():
    A = la.LoopAlgebra(corpus.get("Z3xZ3"), make_field(3))
    W = la.omega_ideal(A)
    m = la.nilpotency_index(W)
    rng = np.random.default_rng(4)
    for _ in range(20):
        u, v, w = (A.random_element(rng, W.subspace) for _ in range(3))
        assert la.bracket_identity_check(u, v, w, m)


def test_series_power_reports():
    r = la.series_power_check(corpus.get("chein-D4"), make_field(2))
    assert r.passed and all(r.inclusions) and r.class_bound >= r.nilpotency_class == 2
    r = la.series_power_check(corpus.get("Z2xZ4"), make_field(2))
    assert r.series_orders == [8, 1]
    r = la.series_power_check(corpus.get("Z3"), make_field(2))
    assert not r.applicable and not r.passed


def test_ideal_correspondence_on_z4():
    Q = corpus.get("Z4")
    F = make_field(2)
    H1, H2 = Q.subloop((0, 2)), Q.whole()
    res = la.ideal_correspondence_suite(Q, F, H1, H2)
    assert all(res.values()), res
    A = la.LoopAlgebra(Q, F)
    assert A.n - la.omega_ideal(A, H1).rank == 2
    # as an ideal of FQ, omega{0,2} = (t^2) with t = 1 + g; inside FH alone it is a line
    assert la.omega_ideal(A, H1).rank == 2 < la.omega_ideal(A, H2).rank == 3
    AH = la.LoopAlgebra(corpus.get("Z2"), F)
    assert la.omega_ideal(AH).rank == 1


def test_ideal_correspondence_trivial_subloop():
    Q = corpus.get("Q8")
    res = la.ideal_correspondence_suite(Q, make_field(3), Q.trivial(), lc.center(Q))
    assert all(res.values()), res


def test_ideal_correspondence_on_a_simple_loop_still_runs(paige2):
    # only 1 and M are normal; the checks are still well defined
    M = paige2.m
    res = la.ideal_correspondence_suite(M, make_field(2), M.trivial(), M.whole())
    assert all(res.values()), res


def test_alternative_diagnostic():
    F2 = make_field(2)
    assert la.is_alternative(la.LoopAlgebra(corpus.get("chein-Q8"), F2))
    assert la.is_alternative(la.LoopAlgebra(corpus.get("S3"), make_field(3)))
    assert not la.is_alternative(la.LoopAlgebra(lc.FiniteLoop([[0, 1, 2, 3, 4], [1, 0, 3, 4, 2],
                                                               [2, 4, 0, 1, 3], [3, 2, 4, 0, 1],
                                                               [4, 3, 1, 2, 0]]), make_field(3)))
