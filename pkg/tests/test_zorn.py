import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from moufang import zorn
from moufang.errors import FieldTooLarge, MixedFields, NotAUnit
from moufang.gfpn import make_field
from moufang.zorn import ZornMatrix

codes8 = st.lists(st.integers(0, 2), min_size=8, max_size=8)


def as_2x2(codes):
    a1, a2, v12, v21 = codes[0], codes[1], codes[2], codes[5]
    return np.array([[a1, v12], [v21, a2]])


def line_matrices(q):
    """Zorn matrices whose vectors lie on the first axis, as code rows."""
    for a1, a2, b, c in itertools.product(range(q), repeat=4):
        yield [a1, a2, b, 0, 0, c, 0, 0]


@pytest.mark.parametrize("q", [2, 3, 5])
def test_axis_matrices_multiply_like_2x2(q):
    # cross products of parallel vectors vanish, leaving the ordinary matrix product
    F = make_field(q)
    rows = np.array(list(line_matrices(q)))
    A = rows[:, None, :]
    B = rows[None, :, :]
    prod = zorn.zmul_codes(F, A, B)
    got = np.stack([prod[..., 0], prod[..., 2], prod[..., 5], prod[..., 1]], axis=-1)
    M = np.stack([rows[:, 0], rows[:, 2], rows[:, 5], rows[:, 1]], axis=-1).reshape(-1, 2, 2)
    want = np.einsum("aij,bjk->abik", M, M).reshape(len(rows), len(rows), 4) % q
    assert np.array_equal(got, want)
    dets = (M[:, 0, 0] * M[:, 1, 1] - M[:, 0, 1] * M[:, 1, 0]) % q
    assert np.array_equal(zorn.norm_codes(F, rows), dets)


@settings(max_examples=200, deadline=None)
@given(codes8, codes8)
def test_vectorised_product_matches_scalar(x, y):
    F = make_field(3)
    a, b = ZornMatrix.from_codes(F, x), ZornMatrix.from_codes(F, y)
    assert tuple(zorn.zmul_codes(F, np.array(x), np.array(y))) == (a * b).codes
    assert int(zorn.norm_codes(F, np.array(x))) == zorn.norm(a).code
    assert int(zorn.trace_codes(F, np.array(x))) == zorn.trace(a).code


@settings(max_examples=200, deadline=None)
@given(codes8, codes8, codes8)
def test_laws_over_gf3(x, y, z):
    F = make_field(3)
    a, b, c = (ZornMatrix.from_codes(F, t) for t in (x, y, z))
    zero = zorn.zero(F)
    assert zorn.associator(a, a, b) == zero
    assert zorn.associator(b, a, a) == zero
    # linearised flexible law follows from the two alternative laws
    assert zorn.associator(a, b, c) + zorn.associator(c, b, a) == zero
    assert zorn.norm(a * b) == zorn.norm(a) * zorn.norm(b)
    assert a * a - a.scale(zorn.trace(a)) + zorn.scalar(F, zorn.norm(a)) == zero


def test_laws_over_gf4_sampled():
    F = make_field(2, 2)
    rng = np.random.default_rng(7)
    X, Y = rng.integers(0, 4, size=(2, 5000, 8))
    XY = zorn.zmul_codes(F, X, Y)
    assert np.array_equal(zorn.norm_codes(F, XY), F.vec.mul(zorn.norm_codes(F, X), zorn.norm_codes(F, Y)))
    XX = zorn.zmul_codes(F, X, X)
    assert np.array_equal(zorn.zmul_codes(F, XX, Y), zorn.zmul_codes(F, X, XY))


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_not_associative(q):
    F = make_field(2, 2) if q == 4 else make_field(q)
    u, v, w = zorn.non_associative_witness(F)
    assert zorn.associator(u, v, w) != zorn.zero(F)


def test_identity_and_inverse():
    F = make_field(3)
    one = zorn.identity(F)
    rng = np.random.default_rng(3)
    for row in zorn.unit_matrices(F, 50, rng):
        a = ZornMatrix.from_codes(F, row)
        assert a * one == a == one * a
        assert a * zorn.zinv(a) == one == zorn.zinv(a) * a
    with pytest.raises(NotAUnit):
        zorn.zinv(zorn.zero(F))


def test_norm_one_counts_by_brute_force():
    F = make_field(2)
    naive = sum(1 for t in itertools.product(range(2), repeat=8)
                if (t[0] * t[1] - (t[2] * t[5] + t[3] * t[6] + t[4] * t[7])) % 2 == 1)
    assert naive == 120 == len(zorn.norm_class_codes(F, 1))
    assert len(zorn.norm_class_codes(make_field(3), 1)) == 2160


def test_text_roundtrip():
    F = make_field(3, 2)
    rng = np.random.default_rng(1)
    for row in rng.integers(0, 9, size=(20, 8)):
        a = ZornMatrix.from_codes(F, row)
        assert zorn.parse_zorn(F, zorn.format_zorn(a)) == a
    assert zorn.format_zorn(zorn.identity(make_field(2))) == "(1, 1 | 0, 0, 0 | 0, 0, 0)"
    with pytest.raises(ValueError):
        zorn.parse_zorn(F, "(1, 1 | 0 | 0)")


def test_guards_and_mixing():
    with pytest.raises(FieldTooLarge):
        zorn.all_codes(make_field(7))
    with pytest.raises(MixedFields):
        zorn.identity(make_field(2)) * zorn.identity(make_field(3))


def test_square_roots_of_minus_one_have_trace_zero():
    F = make_field(3)
    roots = zorn.find_square_roots_of(F, zorn.scalar(F, -1))
    assert len(roots) > 0
    # a^2 = -1 with n(a) = 1 forces t(a) a = 0 from the quadratic identity
    assert np.all(zorn.trace_codes(F, roots) == 0)
