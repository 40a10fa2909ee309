"""Finite loops given by Cayley tables.

Elements are the indices ``0..order-1`` and the identity is always index 0.
All predicates are exhaustive scans over the table, vectorised with numpy.
Triple-quantified laws are checked exhaustively up to order
``EXHAUSTIVE_TRIPLE_LIMIT`` and on a fixed-seed random sample above it,
unless ``full=True`` is passed.

Conventions for the maps acting on the loop (operators written on the left):

    L(a)x = ax,  R(a)x = xa
    T(a) = L(a)^-1 R(a)
    R(a, b) = R(ab)^-1 R(b) R(a)
    L(a, b) = L(ab)^-1 L(a) L(b)

A permutation is an integer array ``p`` with ``p[x]`` the image of ``x``.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import NoIdentity, NotASubloop, NotLatin, NotMoufang, NotNormal

logger = logging.getLogger(__name__)

EXHAUSTIVE_TRIPLE_LIMIT = 256
INNER_ROUTE_LIMIT = 256
DEFAULT_SAMPLES = 20_000
DEFAULT_SEED = 1729


class FiniteLoop:
    """A loop stored as a dense Cayley table with identity 0."""

    def __init__(self, table, *, name: str | None = None, validate: bool = True):
        t = np.array(table, dtype=np.int64)
        if validate:
            _validate(t)
        dtype = np.int16 if len(t) < 2**15 else np.int32
        self.table = t.astype(dtype)
        self.table.flags.writeable = False
        self.name = name
        self._orbits: dict[int, np.ndarray] = {}

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self):
        return self.order

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<FiniteLoop{label} order={self.order}>"

    def __eq__(self, other):
        return isinstance(other, FiniteLoop) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.order, self.table.tobytes()))

    def mul(self, a, b):
        return self.table[a, b]

    @property
    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def ldiv(self) -> np.ndarray:
        """ldiv[a, c] is the x with a*x = c."""
        n = self.order
        out = np.empty((n, n), dtype=self.table.dtype)
        out[np.arange(n)[:, None], self.table] = np.arange(n)[None, :]
        out.flags.writeable = False
        return out

    @cached_property
    def rdiv(self) -> np.ndarray:
        """rdiv[c, b] is the x with x*b = c."""
        n = self.order
        out = np.empty((n, n), dtype=self.table.dtype)
        out[self.table, np.arange(n)[None, :]] = np.arange(n)[:, None]
        out.flags.writeable = False
        return out

    @cached_property
    def left_inverse(self) -> np.ndarray:
        """^-1 x, with (^-1 x) x = 1."""
        return self.rdiv[0, :].copy()

    @cached_property
    def right_inverse(self) -> np.ndarray:
        """x^-1, with x x^-1 = 1."""
        return self.ldiv[:, 0].copy()

    @property
    def inverse(self) -> np.ndarray:
        """Two-sided inverses; only meaningful when they agree (e.g. IP loops)."""
        return self.right_inverse

    def whole(self) -> "SubloopRef":
        return SubloopRef(self, tuple(range(self.order)))

    def trivial(self) -> "SubloopRef":
        return SubloopRef(self, (0,))

    def subloop(self, members: Iterable[int]) -> "SubloopRef":
        """Validate that ``members`` is a subloop and wrap it."""
        s = SubloopRef(self, tuple(sorted({int(m) for m in members})))
        if not is_subloop(self, s.members):
            raise NotASubloop(f"{sorted(s.members)[:8]}... is not closed")
        return s


def _validate(t: np.ndarray):
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise NotLatin("table must be a nonempty square matrix")
    n = len(t)
    if t.min() < 0 or t.max() >= n:
        raise NotLatin("entries must be indices 0..n-1")
    ar = np.arange(n)
    rows = np.sort(t, axis=1)
    bad = np.flatnonzero(np.any(rows != ar, axis=1))
    if len(bad):
        raise NotLatin(f"row {bad[0]} is not a permutation")
    cols = np.sort(t, axis=0)
    bad = np.flatnonzero(np.any(cols != ar[:, None], axis=0))
    if len(bad):
        raise NotLatin(f"column {bad[0]} is not a permutation")
    if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
        raise NoIdentity("row 0 and column 0 must be the identity permutation")


def from_table(table, name: str | None = None) -> FiniteLoop:
    return FiniteLoop(table, name=name)


def normalize_identity(table) -> np.ndarray:
    """Relabel a Latin square with a two-sided identity so the identity is index 0."""
    t = np.asarray(table, dtype=np.int64)
    n = len(t)
    ar = np.arange(n)
    for e in range(n):
        if np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar):
            perm = ar.copy()
            perm[0], perm[e] = e, 0  # perm is its own inverse
            return perm[t[np.ix_(perm, perm)]]
    raise NoIdentity("no two-sided identity")


@dataclass(frozen=True, eq=False)
class SubloopRef:
    parent: FiniteLoop
    members: tuple

    def __eq__(self, other):
        return (isinstance(other, SubloopRef) and self.parent is other.parent
                and self.members == other.members)

    def __hash__(self):
        return hash((id(self.parent), self.members))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x):
        return int(x) in self._set

    def __le__(self, other: "SubloopRef"):
        return self._set <= other._set

    def __lt__(self, other: "SubloopRef"):
        return self._set < other._set

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.members)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.members, dtype=np.int64)

    @property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.members)] = True
        return m

    @property
    def is_trivial(self) -> bool:
        return self.members == (0,)

    @property
    def is_whole(self) -> bool:
        return len(self.members) == self.parent.order

    def __repr__(self):
        return f"SubloopRef(order={len(self)} of {self.parent.order})"


@dataclass(frozen=True)
class LoopMap:
    source: FiniteLoop
    target: FiniteLoop
    images: np.ndarray

    def __call__(self, x):
        return self.images[x]

    def is_homomorphism(self) -> bool:
        im = self.images
        return bool(im[0] == 0 and np.array_equal(im[self.source.table], self.target.table[im[:, None], im[None, :]]))

    def kernel(self) -> SubloopRef:
        return SubloopRef(self.source, tuple(int(x) for x in np.flatnonzero(self.images == 0)))

    def preimage(self, members: Iterable[int]) -> SubloopRef:
        mask = np.zeros(self.target.order, dtype=bool)
        mask[list(members)] = True
        return SubloopRef(self.source, tuple(int(x) for x in np.flatnonzero(mask[self.images])))

    def image(self, members: Iterable[int]) -> tuple:
        return tuple(sorted({int(self.images[m]) for m in members}))


# --- triple iteration -----------------------------------------------------------

def iter_triples(Q: FiniteLoop, *, full: bool | None = None, samples: int = DEFAULT_SAMPLES,
                 seed: int = DEFAULT_SEED, chunk: int = 1 << 20) -> Iterator[tuple]:
    """Yield (X, Y, Z) index arrays covering all triples, or a fixed-seed sample.

    Exhaustive when ``full`` is true, or when it is None and the order is at most
    ``EXHAUSTIVE_TRIPLE_LIMIT``.
    """
    n = Q.order
    if full is None:
        full = n <= EXHAUSTIVE_TRIPLE_LIMIT
    if full:
        yz = np.indices((n, n)).reshape(2, -1)
        step = max(1, chunk // (n * n))
        for x0 in range(0, n, step):
            xs = np.arange(x0, min(n, x0 + step))
            X = np.repeat(xs, n * n)
            Y = np.tile(yz[0], len(xs))
            Z = np.tile(yz[1], len(xs))
            yield X, Y, Z
    else:
        rng = np.random.default_rng(seed)
        left = samples
        while left > 0:
            k = min(left, chunk)
            yield tuple(rng.integers(0, n, size=(3, k)))
            left -= k


def _all_pairs(n):
    X, Y = np.indices((n, n)).reshape(2, -1)
    return X, Y


def _check_triples(Q, law, **kw) -> bool:
    for X, Y, Z in iter_triples(Q, **kw):
        if not np.all(law(Q, X, Y, Z)):
            return False
    return True


def _assoc_law(Q, X, Y, Z):
    T = Q.table
    return T[T[X, Y], Z] == T[X, T[Y, Z]]


def _moufang_law(Q, X, Y, Z):
    T = Q.table
    return T[T[T[X, Y], X], Z] == T[X, T[Y, T[X, Z]]]


def is_associative(Q: FiniteLoop, **kw) -> bool:
    return _check_triples(Q, _assoc_law, **kw)


def is_moufang(Q: FiniteLoop, **kw) -> bool:
    """(xy.x)z = x(y.xz)."""
    return _check_triples(Q, _moufang_law, **kw)


def is_ip_loop(Q: FiniteLoop) -> bool:
    """^-1x.xy = yx.x^-1 = y for all pairs."""
    T = Q.table
    X, Y = _all_pairs(Q.order)
    li, ri = Q.left_inverse, Q.right_inverse
    return bool(np.all(T[li[X], T[X, Y]] == Y) and np.all(T[T[Y, X], ri[X]] == Y))


def is_commutative(Q: FiniteLoop) -> bool:
    return bool(np.array_equal(Q.table, Q.table.T))


def is_power_associative_at(Q: FiniteLoop, g: int, upto: int | None = None) -> bool:
    """Left- and right-normed powers of g agree up to the given exponent."""
    upto = upto or Q.order + 1
    T = Q.table
    left = right = g
    for _ in range(upto):
        left = T[left, g]
        right = T[g, right]
        if left != right:
            return False
    return True


# --- translations and inner mappings ---------------------------------------------

def left_translation(Q: FiniteLoop, a: int) -> np.ndarray:
    return Q.table[a, :].astype(np.int64)


def right_translation(Q: FiniteLoop, a: int) -> np.ndarray:
    return Q.table[:, a].astype(np.int64)


def perm_inverse(p: np.ndarray) -> np.ndarray:
    return np.argsort(p)


def perm_compose(*perms: np.ndarray) -> np.ndarray:
    """perm_compose(f, g, h) is x -> f(g(h(x)))."""
    out = perms[-1]
    for p in reversed(perms[:-1]):
        out = p[out]
    return out


def inner_T(Q: FiniteLoop, a: int) -> np.ndarray:
    return perm_compose(perm_inverse(left_translation(Q, a)), right_translation(Q, a))


def inner_R(Q: FiniteLoop, a: int, b: int) -> np.ndarray:
    ab = int(Q.table[a, b])
    return perm_compose(perm_inverse(right_translation(Q, ab)), right_translation(Q, b),
                        right_translation(Q, a))


def inner_L(Q: FiniteLoop, a: int, b: int) -> np.ndarray:
    ab = int(Q.table[a, b])
    return perm_compose(perm_inverse(left_translation(Q, ab)), left_translation(Q, a),
                        left_translation(Q, b))


def inner_images(Q: FiniteLoop, h: int) -> np.ndarray:
    """Distinct images of h under every T(x), R(x, y), L(x, y)."""
    cached = Q._orbits.get(h)
    if cached is not None:
        return cached
    T, ld, rd = Q.table, Q.ldiv, Q.rdiv
    n = Q.order
    xs = np.arange(n)
    X, Y = _all_pairs(n)
    t_img = ld[xs, T[h, xs]]
    r_img = rd[T[T[h, X], Y], T[X, Y]]
    l_img = ld[T[X, Y], T[X, T[Y, h]]]
    out = np.unique(np.concatenate([t_img, r_img, l_img])).astype(np.int64)
    Q._orbits[h] = out
    return out


# --- associators and commutators ---------------------------------------------------

def assoc_alpha(Q: FiniteLoop, a, b, c):
    """x with ab.c = ax.bc."""
    T = Q.table
    return Q.ldiv[a, Q.rdiv[T[T[a, b], c], T[b, c]]]


def assoc_beta(Q: FiniteLoop, a, b, c):
    """x with c.ba = cb.xa."""
    T = Q.table
    return Q.rdiv[Q.ldiv[T[c, b], T[c, T[b, a]]], a]


def commutator(Q: FiniteLoop, a, b):
    """(a, b) with ab = b.a(a, b)."""
    return Q.ldiv[a, Q.ldiv[b, Q.table[a, b]]]


def bracket_assoc(Q: FiniteLoop, a, b, c):
    """[a, b, c] with ab.c = (a.bc)[a, b, c]."""
    T = Q.table
    return Q.ldiv[T[a, T[b, c]], T[T[a, b], c]]


def bracket_comm(Q: FiniteLoop, a, b):
    """[a, b] with ab = (ba)[a, b]."""
    T = Q.table
    return Q.ldiv[T[b, a], T[a, b]]


def inner_map_violations(Q: FiniteLoop, X, Y, Z) -> int:
    """Count triples breaking T(b)a = a(a,b), R(b,c)a = a.alpha, L(c,b)a = beta.a.

    The inner maps are evaluated through translations and divisions, the
    associators by solving their defining equations.
    """
    T, ld, rd = Q.table, Q.ldiv, Q.rdiv
    a, b, c = X, Y, Z
    t_ba = ld[b, T[a, b]]
    r_bc_a = rd[T[T[a, b], c], T[b, c]]
    l_cb_a = ld[T[c, b], T[c, T[b, a]]]
    bad = (t_ba != T[a, commutator(Q, a, b)])
    bad |= (r_bc_a != T[a, assoc_alpha(Q, a, b, c)])
    bad |= (l_cb_a != T[assoc_beta(Q, a, b, c), a])
    return int(bad.sum())


def moufang_associator_violations(Q: FiniteLoop, X, Y, Z, form: str = "swapped") -> int:
    """Count triples breaking the Moufang expressions of [a,b,c] through associators.

    ``swapped``: [a,b,c]^-1 = alpha(a, c^-1, b^-1) and [a,b,c] = beta(a^-1, c, b),
    obtained by solving a[a,b,c]^-1.c^-1 b^-1 = ac^-1.b^-1 and
    bc.[a,b,c]a^-1 = b.ca^-1 for the associators.
    ``direct``: the same with b and c in their original order,
    [a,b,c]^-1 = alpha(a, b^-1, c^-1) and [a,b,c] = beta(a^-1, b, c).  This
    form fails on Moufang loops with noncentral associators (e.g. the double
    of S3).
    """
    inv = Q.inverse
    a, b, c = X, Y, Z
    br = bracket_assoc(Q, a, b, c)
    if form == "direct":
        bad = inv[br] != assoc_alpha(Q, a, inv[b], inv[c])
        bad |= br != assoc_beta(Q, inv[a], b, c)
    elif form == "swapped":
        bad = inv[br] != assoc_alpha(Q, a, inv[c], inv[b])
        bad |= br != assoc_beta(Q, inv[a], c, b)
    else:
        raise ValueError(f"form must be 'direct' or 'swapped', not {form!r}")
    return int(bad.sum())


def diassoc_comm_violations(Q: FiniteLoop) -> int:
    """Pairs where [a, b] differs from (a, b)."""
    X, Y = _all_pairs(Q.order)
    return int(np.sum(bracket_comm(Q, X, Y) != commutator(Q, X, Y)))


# --- subloops, normality, closures ---------------------------------------------------

def is_subloop(Q: FiniteLoop, members) -> bool:
    m = np.zeros(Q.order, dtype=bool)
    idx = np.array(sorted(set(int(x) for x in members)), dtype=np.int64)
    if 0 not in idx:
        return False
    m[idx] = True
    T = Q.table
    return bool(m[T[np.ix_(idx, idx)]].all() and m[Q.ldiv[np.ix_(idx, idx)]].all()
                and m[Q.rdiv[np.ix_(idx, idx)]].all())


def _closure_mask(Q: FiniteLoop, mask: np.ndarray) -> np.ndarray:
    """Smallest subloop containing the True entries of ``mask`` (modified copy)."""
    mask = mask.copy()
    mask[0] = True
    T = Q.table
    frontier = np.flatnonzero(mask)
    while len(frontier):
        members = np.flatnonzero(mask)
        cand = np.concatenate([T[np.ix_(frontier, members)].ravel(), T[np.ix_(members, frontier)].ravel(),
                               Q.left_inverse[frontier], Q.right_inverse[frontier]])
        cand = np.unique(cand)
        frontier = cand[~mask[cand]]
        mask[frontier] = True
    return mask


def subloop_generated(Q: FiniteLoop, seeds: Iterable[int] = ()) -> SubloopRef:
    mask = np.zeros(Q.order, dtype=bool)
    mask[list(int(s) for s in seeds)] = True
    return _ref(Q, _closure_mask(Q, mask))


def _ref(Q: FiniteLoop, mask: np.ndarray) -> SubloopRef:
    return SubloopRef(Q, tuple(int(x) for x in np.flatnonzero(mask)))


def _as_ref(Q: FiniteLoop, H) -> SubloopRef:
    if isinstance(H, SubloopRef):
        if H.parent is not Q:
            raise NotASubloop("subloop belongs to a different loop")
        return H
    return Q.subloop(H)


def congruence_labels(Q: FiniteLoop, pairs: Iterable[tuple[int, int]]) -> np.ndarray:
    """Class labels of the least congruence of Q identifying the given pairs.

    Labels are component ids; the identity class is ``labels == labels[0]``.
    An equivalence compatible with all left and right translations is a
    congruence of a finite loop, so translation-closure suffices.
    """
    n = Q.order
    T = Q.table
    pairs = list(pairs)
    src = np.array([p[0] for p in pairs] + [0], dtype=np.int64)
    dst = np.array([p[1] for p in pairs] + [0], dtype=np.int64)
    ncomp, labels = _components(n, src, dst)
    while True:
        rep = _class_min(labels)[labels]
        moved = np.flatnonzero(rep != np.arange(n))
        if not len(moved):
            return labels
        # translate every (a, rep a) by every x on both sides
        s = np.concatenate([T[:, moved].ravel(), T[moved, :].ravel(), moved])
        d = np.concatenate([T[:, rep[moved]].ravel(), T[rep[moved], :].ravel(), rep[moved]])
        new_ncomp, labels = _components(n, s, d)
        if new_ncomp == ncomp:
            return labels
        ncomp = new_ncomp


def _components(n, src, dst):
    g = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n))
    return connected_components(g, directed=False)


def _class_min(labels: np.ndarray) -> np.ndarray:
    k = labels.max() + 1
    out = np.full(k, len(labels), dtype=np.int64)
    np.minimum.at(out, labels, np.arange(len(labels)))
    return out


def _normal_closure_inner(Q: FiniteLoop, seeds) -> np.ndarray:
    mask = np.zeros(Q.order, dtype=bool)
    mask[list(seeds)] = True
    mask[0] = True
    done = np.zeros(Q.order, dtype=bool)
    while True:
        mask = _closure_mask(Q, mask)
        todo = np.flatnonzero(mask & ~done)
        if not len(todo):
            return mask
        for h in todo:
            mask[inner_images(Q, int(h))] = True
        done[todo] = True


def _normal_closure_congruence(Q: FiniteLoop, seeds) -> np.ndarray:
    labels = congruence_labels(Q, [(0, int(s)) for s in seeds])
    return labels == labels[0]


def normal_closure(Q: FiniteLoop, seeds: Iterable[int], *, route: str | None = None) -> SubloopRef:
    """Least normal subloop containing ``seeds``.

    ``route="inner"`` saturates under all inner mappings T(x), R(x,y), L(x,y)
    alternating with subloop closure; ``route="congruence"`` takes the identity
    class of the least congruence identifying each seed with 1.  The default
    picks the inner route up to order ``INNER_ROUTE_LIMIT``.
    """
    seeds = [int(s) for s in seeds]
    if route is None:
        route = "inner" if Q.order <= INNER_ROUTE_LIMIT else "congruence"
    if route == "inner":
        mask = _normal_closure_inner(Q, seeds)
    elif route == "congruence":
        mask = _normal_closure_congruence(Q, seeds)
    else:
        raise ValueError(f"unknown route {route!r}")
    return _ref(Q, mask)


def coset_labels(Q: FiniteLoop, H) -> np.ndarray | None:
    """Label each element by its left coset xH, numbered by least member.

    Returns None when the left cosets do not partition Q.
    """
    H = _as_ref(Q, H)
    h = H.array
    n = Q.order
    cos = Q.table[:, h].astype(np.int64)  # row x is xH
    labels = np.full(n, -1, dtype=np.int64)
    k = 0
    for x in range(n):
        if labels[x] == -1:
            row = cos[x]
            if np.any(labels[row] != -1):
                return None
            labels[row] = k
            k += 1
    if np.any(labels[cos] != labels[:, None]):
        return None
    return labels


def _labels_compatible(Q: FiniteLoop, labels: np.ndarray) -> np.ndarray | None:
    """Quotient table if ``labels`` is a congruence, else None."""
    k = int(labels.max()) + 1
    la = labels[:, None] * k + labels[None, :]
    prod = labels[Q.table]
    qt = np.full(k * k, -1, dtype=np.int64)
    qt[la.ravel()] = prod.ravel()
    if np.any(qt[la] != prod):
        return None
    return qt.reshape(k, k)


def is_normal(Q: FiniteLoop, H, *, route: str | None = None) -> bool:
    """T(x)H = H, L(x,y)H = H, R(x,y)H = H for all x, y.

    Up to order ``INNER_ROUTE_LIMIT`` the inner mappings are applied directly;
    above that the equivalent coset test (xH = Hx with cosets forming a
    congruence) is used.
    """
    H = _as_ref(Q, H)
    if route is None:
        route = "inner" if Q.order <= INNER_ROUTE_LIMIT else "cosets"
    if route == "inner":
        mask = H.mask
        return all(mask[inner_images(Q, h)].all() for h in H.members)
    labels = coset_labels(Q, H)
    if labels is None:
        return False
    right = Q.table[H.array, :].astype(np.int64)  # column x is Hx
    if np.any(labels[right] != labels[None, :]):
        return False
    return _labels_compatible(Q, labels) is not None


# --- center, quotients, series -----------------------------------------------------

def center(Q: FiniteLoop) -> SubloopRef:
    """x with x.yz = xy.z, zy.x = z.yx and xy = yx for all y, z."""
    T = Q.table
    cand = np.flatnonzero(np.all(T == T.T, axis=1))
    keep = []
    for x in cand:
        if not np.array_equal(T[x][T], T[T[x, :], :]):
            continue
        if not np.array_equal(T[:, x][T], T[:, T[:, x]]):
            continue
        keep.append(int(x))
    return SubloopRef(Q, tuple(keep))


def quotient(Q: FiniteLoop, H, *, check_normal: bool = True) -> tuple[FiniteLoop, LoopMap]:
    """Q/H on cosets ordered by least member, and the projection."""
    H = _as_ref(Q, H)
    if check_normal and not is_normal(Q, H):
        raise NotNormal(f"{H!r} is not normal")
    labels = coset_labels(Q, H)
    qt = None if labels is None else _labels_compatible(Q, labels)
    if qt is None:
        raise NotNormal(f"cosets of {H!r} do not give a well-defined product")
    name = f"{Q.name}/N{len(H)}" if Q.name else None
    Qbar = FiniteLoop(qt, name=name)
    return Qbar, LoopMap(Q, Qbar, labels)


@dataclass
class SeriesReport:
    chain: list
    kind: str
    nilpotency_class: int | None = None

    @property
    def length(self) -> int:
        return len(self.chain) - 1

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "kind": self.kind,
            "class": self.nilpotency_class,
            "orders": [len(c) for c in self.chain],
            "terms": [list(c.members) for c in self.chain],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def upper_central_series(Q: FiniteLoop) -> SeriesReport:
    """1 = Z_0 <= Z_1 <= ... with Z_{i+1}/Z_i = Z(Q/Z_i), until it stops growing."""
    chain = [Q.trivial()]
    while True:
        Qbar, proj = quotient(Q, chain[-1], check_normal=False)
        nxt = proj.preimage(center(Qbar).members)
        if nxt == chain[-1]:
            break
        chain.append(nxt)
        if nxt.is_whole:
            break
    cls = len(chain) - 1 if chain[-1].is_whole else None
    return SeriesReport(chain, "upper", cls)


def _lower_generators(Q: FiniteLoop, N: SubloopRef, mode: str) -> np.ndarray:
    n = Q.order
    xs, ys = _all_pairs(n)
    gens = []
    for a in N.members:
        A = np.full(n * n, a)
        if mode == "general":
            gens.append(assoc_alpha(Q, A, xs, ys))
            gens.append(assoc_beta(Q, A, xs, ys))
            gens.append(commutator(Q, A[:n], np.arange(n)))
        else:
            gens.append(bracket_assoc(Q, A, xs, ys))
            gens.append(bracket_comm(Q, A[:n], np.arange(n)))
    return np.unique(np.concatenate(gens))


def lower_central_series(Q: FiniteLoop, mode: str = "general") -> SeriesReport:
    """Q = Q_0 >= Q_1 >= ... with Q_{i+1} the normal closure of associators of Q_i.

    ``general`` uses alpha(n,x,y), beta(n,x,y), (n,x); ``moufang`` uses
    [n,x,y] and [n,x] and requires a Moufang loop.
    """
    if mode not in ("general", "moufang"):
        raise ValueError(f"mode must be 'general' or 'moufang', not {mode!r}")
    if mode == "moufang" and not is_moufang(Q):
        raise NotMoufang(repr(Q))
    chain = [Q.whole()]
    while not chain[-1].is_trivial:
        gens = _lower_generators(Q, chain[-1], mode)
        nxt = normal_closure(Q, gens)
        if nxt == chain[-1]:
            break
        chain.append(nxt)
    cls = len(chain) - 1 if chain[-1].is_trivial else None
    return SeriesReport(chain, f"lower/{mode}", cls)


def nilpotency_class(Q: FiniteLoop) -> int | None:
    """Common length of the upper and lower central series, or None.

    Raises AssertionError if one series terminates and the other does not or
    their lengths differ (which would contradict the upper/lower equivalence).
    """
    up = upper_central_series(Q)
    low = lower_central_series(Q)
    if up.nilpotency_class != low.nilpotency_class:
        raise AssertionError(f"upper class {up.nilpotency_class} != lower class {low.nilpotency_class}")
    return up.nilpotency_class


def is_central_series(Q: FiniteLoop, chain) -> bool:
    """Q = C_0 >= ... >= C_r = 1 with C_i/C_{i+1} inside Z(Q/C_{i+1})."""
    chain = [_as_ref(Q, c) for c in chain]
    if not chain or not chain[0].is_whole or not chain[-1].is_trivial:
        return False
    for big, small in zip(chain, chain[1:]):
        if not small <= big or not is_normal(Q, small):
            return False
    for big, small in zip(chain, chain[1:]):
        Qbar, proj = quotient(Q, small, check_normal=False)
        z = center(Qbar)
        if not set(proj.image(big.members)) <= set(z.members):
            return False
    return True


def is_simple(Q: FiniteLoop, *, sample: int | None = None, seed: int = DEFAULT_SEED,
              route: str | None = None) -> bool:
    """Every non-identity element has normal closure Q.

    With ``sample`` set, only that many fixed-seed random elements are tried.
    """
    if Q.order == 1:
        return False
    elems = np.arange(1, Q.order)
    if sample is not None and sample < len(elems):
        elems = np.sort(np.random.default_rng(seed).choice(elems, size=sample, replace=False))
    for i, g in enumerate(elems):
        if i and i % 20 == 0:
            logger.info("simplicity: %d/%d closures", i, len(elems))
        if not normal_closure(Q, [int(g)], route=route).is_whole:
            return False
    return True


def element_order(Q: FiniteLoop, g: int) -> int:
    """Least k with g^k = 1 for left-normed powers g, g.g, (g.g).g, ..."""
    T = Q.table
    x, k = int(g), 1
    while x != 0:
        x = int(T[x, g])
        k += 1
        if k > Q.order:
            raise ValueError(f"element {g} has no finite left-normed order")
    return k


def element_orders(Q: FiniteLoop) -> np.ndarray:
    T = Q.table
    x = np.arange(Q.order)
    g = x.copy()
    orders = np.zeros(Q.order, dtype=np.int64)
    orders[0] = 1
    k = 1
    while np.any(orders == 0):
        k += 1
        x = T[x, g]
        hit = (x == 0) & (orders == 0)
        orders[hit] = k
        if k > Q.order:
            raise ValueError("left-normed powers do not return to the identity")
    return orders


def is_p_power(k: int, p: int) -> bool:
    while k % p == 0:
        k //= p
    return k == 1


def is_p_loop(Q: FiniteLoop, p: int) -> bool:
    return all(is_p_power(int(k), p) for k in element_orders(Q))


# --- text format -----------------------------------------------------------------

def format_table(Q: FiniteLoop) -> str:
    lines = [f"order {Q.order}"]
    lines += [" ".join(str(int(v)) for v in row) for row in Q.table]
    return "\n".join(lines) + "\n"


def parse_table(text: str, name: str | None = None) -> FiniteLoop:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or not lines[0].startswith("order"):
        raise ValueError("table text must start with 'order n'")
    n = int(lines[0].split()[1])
    rows = [[int(v) for v in ln.split()] for ln in lines[1:]]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise NotLatin(f"expected {n} rows of {n} entries")
    return FiniteLoop(rows, name=name)


def read_table(path, name: str | None = None) -> FiniteLoop:
    with open(path) as fh:
        return parse_table(fh.read(), name=name)


def write_table(Q: FiniteLoop, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_table(Q))


# --- direct products --------------------------------------------------------------

def direct_product(A: FiniteLoop, B: FiniteLoop, name: str | None = None) -> FiniteLoop:
    """Pairs (a, b) indexed a*|B| + b."""
    na, nb = A.order, B.order
    a = np.repeat(np.arange(na), nb)
    b = np.tile(np.arange(nb), na)
    t = A.table[a[:, None], a[None, :]].astype(np.int64) * nb + B.table[b[:, None], b[None, :]]
    return FiniteLoop(t, name=name)
