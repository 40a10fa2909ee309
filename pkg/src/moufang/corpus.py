"""Fixed corpus of small loops: standard groups and their Chein doubles.

The Chein double M(G, 2) of a group G lives on G u Gu with

    g.h = gh,  g.(hu) = (hg)u,  (gu).h = (gh^-1)u,  (gu).(hu) = h^-1 g.

It is always Moufang, and nonassociative exactly when G is nonabelian, which
makes it the standard source of small nonassociative Moufang p-loops.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass

import numpy as np

from . import loopcore as lc
from .errors import NotAssociative, NotMoufang, UnknownName
from .gfpn import is_prime


def table_from_elements(elems, mul, name=None) -> lc.FiniteLoop:
    """Cayley table of ``mul`` on ``elems``; elems[0] must be the identity."""
    index = {e: i for i, e in enumerate(elems)}
    t = [[index[mul(a, b)] for b in elems] for a in elems]
    return lc.FiniteLoop(t, name=name)


def cyclic(n: int) -> lc.FiniteLoop:
    a = np.arange(n)
    return lc.FiniteLoop((a[:, None] + a[None, :]) % n, name=f"Z{n}")


def dihedral(k: int) -> lc.FiniteLoop:
    """Symmetries of the k-gon, order 2k; r^i s^j is stored as (i, j)."""
    elems = [(i, j) for j in range(2) for i in range(k)]

    def mul(x, y):
        (i, a), (j, b) = x, y
        return ((i + (j if a == 0 else -j)) % k, (a + b) % 2)

    return table_from_elements(elems, mul, name=f"D{k}")


def quaternion() -> lc.FiniteLoop:
    # unit quaternions (sign, axis) with axis in 1, i, j, k
    basis = {("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
             ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
             ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
             ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1")}
    elems = [(s, a) for s in (1, -1) for a in "1ijk"]

    def mul(x, y):
        sign, axis = basis[(x[1], y[1])]
        return (x[0] * y[0] * sign, axis)

    return table_from_elements(elems, mul, name="Q8")


def symmetric(n: int) -> lc.FiniteLoop:
    elems = list(itertools.permutations(range(n)))  # identity first

    def mul(p, q):  # (pq)(x) = p(q(x))
        return tuple(p[q[x]] for x in range(n))

    return table_from_elements(elems, mul, name=f"S{n}")


_TOKEN = re.compile(r"^(Z|D|S)(\d+)(?:\^(\d+))?$|^Q8(?:\^(\d+))?$")


def _factor(token: str) -> lc.FiniteLoop:
    m = _TOKEN.match(token)
    if not m:
        raise UnknownName(token)
    if token.startswith("Q8"):
        base, power = quaternion(), int(m.group(4) or 1)
    else:
        kind, k, power = m.group(1), int(m.group(2)), int(m.group(3) or 1)
        if k < 1 or (kind == "D" and k < 3) or (kind == "S" and not 1 <= k <= 5):
            raise UnknownName(token)
        base = {"Z": cyclic, "D": dihedral, "S": symmetric}[kind](k)
    out = base
    for _ in range(power - 1):
        out = lc.direct_product(out, base)
    return out


def small_group(name: str) -> lc.FiniteLoop:
    """Group table by name: Zn, Dn (order 2n), Q8, Sn, powers G^k and products AxB."""
    factors = name.split("x")
    try:
        loops = [_factor(f) for f in factors]
    except UnknownName:
        raise UnknownName(name) from None
    out = loops[0]
    for other in loops[1:]:
        out = lc.direct_product(out, other)
    out.name = name
    return out


def chein_double(G: lc.FiniteLoop, name: str | None = None, *, verify: bool = True) -> lc.FiniteLoop:
    """M(G, 2) with g -> g and gu -> |G| + g."""
    if verify and not lc.is_associative(G, full=True):
        raise NotAssociative(repr(G))
    n = G.order
    T = G.table.astype(np.int64)
    inv = G.right_inverse.astype(np.int64)
    g = np.arange(n)[:, None]
    h = np.arange(n)[None, :]
    t = np.empty((2 * n, 2 * n), dtype=np.int64)
    t[:n, :n] = T[g, h]
    t[:n, n:] = n + T[h, g]
    t[n:, :n] = n + T[g, inv[h]]
    t[n:, n:] = T[inv[h], g]
    Q = lc.FiniteLoop(t, name=name or (f"chein-{G.name}" if G.name else None))
    if verify and not lc.is_moufang(Q, full=True):
        raise NotMoufang(f"double of {G!r} failed the Moufang check")
    return Q


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    loop: lc.FiniteLoop
    tags: frozenset

    @property
    def order(self) -> int:
        return self.loop.order

    def prime(self) -> int | None:
        for t in self.tags:
            if t.startswith("p-loop("):
                return int(t[7:-1])
        return None


GROUP_NAMES = ("Z1", "Z2", "Z3", "Z4", "Z5", "Z2xZ2", "Z6", "S3", "Z8", "Z2xZ4", "Z2^3", "D4", "Q8",
               "Z3xZ3", "Z2^4", "D4xZ2", "Q8xZ2")
DOUBLED = ("Z2", "Z3", "Z4", "Z2xZ2", "S3", "D4", "Q8", "D4xZ2", "Q8xZ2")


def _loop_by_name(name: str) -> lc.FiniteLoop:
    if name.startswith("chein-"):
        return chein_double(small_group(name[6:]), name=name)
    return small_group(name)


def compute_tags(Q: lc.FiniteLoop) -> frozenset:
    tags = set()
    assoc = lc.is_associative(Q)
    moufang = lc.is_moufang(Q)
    if assoc:
        tags.add("group")
    else:
        tags.add("nonassociative")
    if moufang:
        tags.add("moufang")
    if Q.order > 1:
        n = Q.order
        primes = [p for p in range(2, n + 1) if n % p == 0 and is_prime(p)]
        if len(primes) == 1 and lc.is_p_loop(Q, primes[0]):
            tags.add(f"p-loop({primes[0]})")
            if moufang:
                tags.add("nilpotent-expected")
    if lc.is_simple(Q):
        tags.add("simple")
    return frozenset(tags)


@functools.lru_cache(maxsize=None)
def corpus() -> tuple[CorpusEntry, ...]:
    out = []
    for name in list(GROUP_NAMES) + [f"chein-{g}" for g in DOUBLED]:
        Q = _loop_by_name(name)
        out.append(CorpusEntry(name, Q, compute_tags(Q)))
    return tuple(out)


def names() -> list[str]:
    return [e.name for e in corpus()]


def get(name: str) -> lc.FiniteLoop:
    for e in corpus():
        if e.name == name:
            return e.loop
    try:
        return _loop_by_name(name)
    except UnknownName:
        raise UnknownName(name) from None


def entry(name: str) -> CorpusEntry:
    for e in corpus():
        if e.name == name:
            return e
    raise UnknownName(name)


def moufang_p_loops(p: int = 2, max_order: int = 32) -> list[CorpusEntry]:
    return [e for e in corpus() if "moufang" in e.tags and f"p-loop({p})" in e.tags
            and e.order <= max_order]
