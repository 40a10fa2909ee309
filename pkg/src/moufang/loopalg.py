"""Loop algebras FQ of finite loops over finite fields.

FQ has basis the loop elements and multiplication extended bilinearly from
the Cayley table.  Vectors are integer arrays of field codes indexed by loop
element; subspaces are kept in reduced row echelon form so that membership
and equality are exact.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import loopcore as lc
from .errors import Mismatch, NotMoufang, NotNilpotent, NotNormal, NotPLoop
from .gfpn import FieldElement, FiniteField, make_field

logger = logging.getLogger(__name__)

MAX_ALGEBRA_ORDER = 256


# --- exact linear algebra over GF(q) ---------------------------------------------

def rref(F: FiniteField, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    ops = F.vec
    R = np.array(M, dtype=np.int64).reshape(-1, np.shape(M)[-1]).copy()
    nrows, ncols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(R[r:, c])
        if not len(nz):
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = ops.mul(ops.inv(R[r, c]), R[r])
        col = R[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if len(rows):
            R[rows] = ops.sub(R[rows], ops.mul(col[rows, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R[:r], pivots


class Subspace:
    """A subspace of F^dim given by a reduced echelon basis."""

    def __init__(self, field: FiniteField, dim: int, basis=None, pivots=None):
        self.field = field
        self.dim = dim
        if basis is None:
            basis = np.zeros((0, dim), dtype=np.int64)
            pivots = []
        self.basis = np.asarray(basis, dtype=np.int64).reshape(-1, dim)
        self.pivots = list(pivots)

    @classmethod
    def span(cls, field: FiniteField, dim: int, rows) -> "Subspace":
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, dim)
        if not len(rows):
            return cls(field, dim)
        R, piv = rref(field, rows)
        return cls(field, dim, R, piv)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def is_zero(self) -> bool:
        return self.rank == 0

    def reduce(self, rows) -> np.ndarray:
        """Remainders of ``rows`` after elimination against the basis."""
        ops = self.field.vec
        V = np.asarray(rows, dtype=np.int64).reshape(-1, self.dim).copy()
        for r, c in enumerate(self.pivots):
            coef = V[:, c].copy()
            hit = np.flatnonzero(coef)
            if len(hit):
                V[hit] = ops.sub(V[hit], ops.mul(coef[hit, None], self.basis[r][None, :]))
        return V

    def contains(self, rows) -> bool | np.ndarray:
        """Membership; a single vector gives a bool, a matrix a bool per row."""
        rows = np.asarray(rows, dtype=np.int64)
        res = ~np.any(self.reduce(rows) != 0, axis=1)
        return bool(res[0]) if rows.ndim == 1 else res

    def extend(self, rows) -> "Subspace":
        rest = self.reduce(rows)
        rest = rest[np.any(rest != 0, axis=1)]
        if not len(rest):
            return self
        return Subspace.span(self.field, self.dim, np.vstack([self.basis, rest]))

    def __add__(self, other: "Subspace") -> "Subspace":
        return self.extend(other.basis)

    def __le__(self, other: "Subspace") -> bool:
        return bool(np.all(other.contains(self.basis))) if self.rank else True

    def __lt__(self, other: "Subspace") -> bool:
        return self <= other and self.rank < other.rank

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.dim == other.dim and self.pivots == other.pivots
                and np.array_equal(self.basis, other.basis))

    __hash__ = None

    def __repr__(self):
        return f"Subspace(rank={self.rank}, dim={self.dim}, {self.field!r})"


# --- the algebra -------------------------------------------------------------------

class LoopAlgebra:
    def __init__(self, loop: lc.FiniteLoop, field: FiniteField):
        if loop.order > MAX_ALGEBRA_ORDER:
            raise ValueError(f"loop algebra work is limited to order <= {MAX_ALGEBRA_ORDER}")
        self.loop = loop
        self.field = field
        self.n = loop.order

    def __repr__(self):
        return f"LoopAlgebra({self.loop!r}, {self.field!r})"

    @cached_property
    def _rdiv(self) -> np.ndarray:
        return self.loop.rdiv.astype(np.int64)

    @cached_property
    def _ldiv(self) -> np.ndarray:
        return self.loop.ldiv.astype(np.int64)

    # elements
    def element(self, coeffs) -> "AlgebraElement":
        c = np.asarray(coeffs, dtype=np.int64)
        if c.shape != (self.n,):
            raise Mismatch(f"need {self.n} coefficients")
        return AlgebraElement(self, c % self.field.q if self.field.n == 1 else c)

    def basis_element(self, g: int) -> "AlgebraElement":
        c = np.zeros(self.n, dtype=np.int64)
        c[g] = self.field.one.code
        return AlgebraElement(self, c)

    @property
    def one(self) -> "AlgebraElement":
        return self.basis_element(0)

    @property
    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, np.zeros(self.n, dtype=np.int64))

    def one_minus(self, g: int) -> "AlgebraElement":
        return self.one - self.basis_element(g)

    def random_element(self, rng: np.random.Generator, within: Subspace | None = None) -> "AlgebraElement":
        if within is None:
            return AlgebraElement(self, rng.integers(0, self.field.q, self.n))
        if within.is_zero():
            return self.zero
        coef = rng.integers(0, self.field.q, within.rank)
        ops = self.field.vec
        return AlgebraElement(self, ops.sum(ops.mul(coef[:, None], within.basis), axis=0))

    # products
    def products(self, U, V, chunk: int = 1 << 22) -> np.ndarray:
        """All products U[a] * V[b] as rows, a-major; shape (len(U) * len(V), n)."""
        U = np.asarray(U, dtype=np.int64).reshape(-1, self.n)
        V = np.asarray(V, dtype=np.int64).reshape(-1, self.n)
        n = self.n
        out = np.empty((len(U), len(V), n), dtype=np.int64)
        if not len(U) or not len(V):
            return out.reshape(-1, n)
        # (x y)[k] = sum_j x[k / j] y[j], with k / j the right quotient
        step = max(1, chunk // (n * n * max(1, len(V) if self.field.n > 1 else 1)))
        for a0 in range(0, len(U), step):
            Ua = U[a0:a0 + step][:, self._rdiv]  # (r, k, j)
            if self.field.n == 1:
                p = self.field.p
                W = np.einsum("akj,bj->abk", Ua.astype(np.float64), V.astype(np.float64))
                out[a0:a0 + step] = np.rint(W).astype(np.int64) % p
            else:
                ops = self.field.vec
                prods = ops.mul(Ua[:, None, :, :], V[None, :, None, :])
                out[a0:a0 + step] = ops.sum(prods, axis=-1)
        return out.reshape(-1, n)

    def mul(self, x: "AlgebraElement", y: "AlgebraElement") -> "AlgebraElement":
        if x.algebra is not self or y.algebra is not self:
            if not (x.algebra == self and y.algebra == self):
                raise Mismatch("elements from different loop algebras")
        return AlgebraElement(self, self.products(x.coeffs, y.coeffs)[0])

    def translates(self, rows) -> np.ndarray:
        """x*g and g*x for every row x and loop element g."""
        X = np.asarray(rows, dtype=np.int64).reshape(-1, self.n)
        right = X[:, self._rdiv.T]  # [r, g, k] = x[k / g]
        left = X[:, self._ldiv]     # [r, g, k] = x[g \ k]
        return np.concatenate([right.reshape(-1, self.n), left.reshape(-1, self.n)])

    def __eq__(self, other):
        return isinstance(other, LoopAlgebra) and self.loop == other.loop and self.field == other.field

    __hash__ = None

    def augmentation_kernel(self) -> Subspace:
        """{sum l_q q : sum l_q = 0}, spanned by 1 - g."""
        rows = [self.one_minus(g).coeffs for g in range(1, self.n)]
        return Subspace.span(self.field, self.n, rows)

    def identity_line(self) -> Subspace:
        return Subspace.span(self.field, self.n, [self.one.coeffs])

    def whole(self) -> Subspace:
        return Subspace.span(self.field, self.n, np.eye(self.n, dtype=np.int64))


@dataclass(eq=False)
class AlgebraElement:
    algebra: LoopAlgebra
    coeffs: np.ndarray

    @property
    def loop(self) -> lc.FiniteLoop:
        return self.algebra.loop

    @property
    def field(self) -> FiniteField:
        return self.algebra.field

    def _wrap(self, c):
        return AlgebraElement(self.algebra, c)

    def __add__(self, other):
        return self._wrap(self.field.vec.add(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return self._wrap(self.field.vec.sub(self.coeffs, other.coeffs))

    def __neg__(self):
        return self._wrap(self.field.vec.neg(self.coeffs))

    def scale(self, c) -> "AlgebraElement":
        c = self.field(c).code
        return self._wrap(self.field.vec.mul(c, self.coeffs))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra.mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> "AlgebraElement":
        """Left-normed power x^k = x^(k-1) x; x^0 = 1."""
        out = self.algebra.one
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None

    def __repr__(self):
        terms = [f"{self.field.from_code(int(c))}*g{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


def alg_mul(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x.algebra.mul(x, y)


def augmentation(x: AlgebraElement) -> FieldElement:
    """Sum of the coefficients."""
    F = x.field
    return F.from_code(int(F.vec.sum(x.coeffs)))


def associator(x, y, z):
    return (x * y) * z - x * (y * z)


def commutator(x, y):
    return x * y - y * x


def geometric_sum(x: AlgebraElement, m: int) -> AlgebraElement:
    """1 + x + ... + x^(m-1)."""
    out = x.algebra.one
    p = x.algebra.one
    for _ in range(m - 1):
        p = p * x
        out = out + p
    return out


# --- ideals -----------------------------------------------------------------------

@dataclass(eq=False)
class IdealHandle:
    algebra: LoopAlgebra
    subspace: Subspace
    description: str
    _powers: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        S = self.subspace
        if S.rank and not np.all(S.contains(self.algebra.translates(S.basis))):
            raise AssertionError(f"{self.description} is not closed under loop translations")

    @property
    def rank(self) -> int:
        return self.subspace.rank


def ideal_closure(A: LoopAlgebra, rows, description: str = "ideal") -> IdealHandle:
    """Least subspace containing ``rows`` and closed under x -> xg, x -> gx."""
    S = Subspace.span(A.field, A.n, rows)
    frontier = S.basis
    while len(frontier):
        cand = A.translates(frontier)
        rest = S.reduce(cand)
        rest = rest[np.any(rest != 0, axis=1)]
        if not len(rest):
            break
        frontier, _ = rref(A.field, rest)
        S = S.extend(frontier)
    return IdealHandle(A, S, description)


def omega_ideal(A: LoopAlgebra, H=None, *, generators=None) -> IdealHandle:
    """The ideal generated by 1 - h, for h in H (or in ``generators``)."""
    Q = A.loop
    if H is None:
        H = Q.whole()
        desc = "omega(Q)"
    else:
        H = lc._as_ref(Q, H)
        desc = f"omega(H{len(H)})"
        if not H.is_whole and not lc.is_normal(Q, H):
            raise NotNormal(f"{H!r} is not normal")
    gens = H.members if generators is None else generators
    rows = [A.one_minus(int(h)).coeffs for h in gens if h != 0]
    return ideal_closure(A, rows, desc)


def ideal_power(S: IdealHandle, k: int) -> Subspace:
    """Span of all k-fold products of elements of S, every bracketing.

    P_1 = S and P_k is spanned by products u v with u in P_i, v in P_(k-i).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    memo = S._powers
    memo.setdefault(1, S.subspace)
    A = S.algebra
    for j in range(2, k + 1):
        if j in memo:
            continue
        P = Subspace(A.field, A.n)
        for i in range(1, j):
            U, V = memo[i], memo[j - i]
            if U.is_zero() or V.is_zero():
                continue
            P = P.extend(A.products(U.basis, V.basis))
        memo[j] = P
    return memo[k]


def nilpotency_index(S: IdealHandle, cap: int = 64) -> int | None:
    """Least k <= cap with S^k = 0; None if S^k stabilises nonzero or cap is hit.

    A run S^k0 = ... = S^k of equal nonzero powers with k >= max(k0 + 1, 2 k0 - 1)
    forces S^j = S^k0 for all j >= k0, since every term of S^(j+1) then has a
    factor index inside the run.
    """
    if S.subspace.is_zero():
        return 1
    run_start = 1
    for k in range(2, cap + 1):
        P = ideal_power(S, k)
        if P.is_zero():
            return k
        if P != ideal_power(S, k - 1):
            run_start = k
        elif k >= max(run_start + 1, 2 * run_start - 1):
            return None
    return None


def power_dims(S: IdealHandle, upto: int) -> list[int]:
    return [ideal_power(S, k).rank for k in range(1, upto + 1)]


# --- nilpotency, bracket and ideal checks ---------------------------------------

def _field_for(p_or_field) -> FiniteField:
    return p_or_field if isinstance(p_or_field, FiniteField) else make_field(int(p_or_field))


@dataclass
class NilpotencyReport:
    loop: str
    p: int
    element_orders: dict
    binomial_ok: bool
    nilpotency_index: int | None
    power_dims: list

    @property
    def passed(self) -> bool:
        return self.binomial_ok and self.nilpotency_index is not None


def augmentation_nilpotency_check(Q: lc.FiniteLoop, p, *, cap: int = 64) -> NilpotencyReport:
    """Augmentation ideal of a Moufang p-loop over characteristic p is nilpotent.

    Verifies (1 - g)^(p^e) = 0 for each g of order p^e, then computes the
    nilpotency index of omega(Q).
    """
    F = _field_for(p)
    p = F.p
    orders = lc.element_orders(Q)
    bad = [int(g) for g in range(Q.order) if not lc.is_p_power(int(orders[g]), p)]
    if bad:
        raise NotPLoop(f"element {bad[0]} has order {int(orders[bad[0]])}, not a power of {p}")
    if not lc.is_moufang(Q):
        raise NotMoufang(repr(Q))
    A = LoopAlgebra(Q, F)
    ok = all((A.one_minus(g) ** int(orders[g])).is_zero() for g in range(Q.order))
    W = omega_ideal(A)
    idx = nilpotency_index(W, cap)
    dims = power_dims(W, idx if idx else min(cap, 8))
    counts = {int(k): int(c) for k, c in zip(*np.unique(orders, return_counts=True))}
    return NilpotencyReport(Q.name or repr(Q), p, counts, ok, idx, dims)


def _require_nilpotent(x: AlgebraElement, m: int, label: str):
    if not (x ** m).is_zero():
        raise NotNilpotent(f"{label}^{m} != 0")


def loop_inverse(x: AlgebraElement, m: int) -> AlgebraElement:
    """(1 - t)^-1 = 1 + t + ... + t^(m-1) for x = 1 - t with t^m = 0."""
    t = x.algebra.one - x
    _require_nilpotent(t, m, "1 - x")
    return geometric_sum(t, m)


@dataclass
class BracketIdentityResult:
    associator_form: bool
    commutator_form: bool

    def __bool__(self):
        return self.associator_form and self.commutator_form


def bracket_identity_sides(u: AlgebraElement, v: AlgebraElement, w: AlgebraElement, m: int) -> dict:
    """Both sides of the associator and commutator identities in 1 - B.

    With a, b, c = 1 - u, 1 - v, 1 - w and the loop brackets
    [a,b,c] = (a.bc)^-1 (ab.c), [a,b] = a^-1 b^-1 . ab:

        [a,b,c] = 1 - ((S(w) S(v)) S(u)) (u,v,w)
        [a,b]   = 1 + (S(u) S(v)) (u,v)

    where S(x) = 1 + x + ... + x^(m-1) is the inverse of 1 - x.
    """
    for x, label in ((u, "u"), (v, "v"), (w, "w")):
        _require_nilpotent(x, m, label)
    one = u.algebra.one
    a, b, c = one - u, one - v, one - w
    lhs_assoc = loop_inverse(a * (b * c), m) * ((a * b) * c)
    Su, Sv, Sw = geometric_sum(u, m), geometric_sum(v, m), geometric_sum(w, m)
    rhs_assoc = one - ((Sw * Sv) * Su) * associator(u, v, w)
    lhs_comm = (Su * Sv) * (a * b)
    rhs_comm = one + (Su * Sv) * commutator(u, v)
    return {"assoc": (lhs_assoc, rhs_assoc), "comm": (lhs_comm, rhs_comm)}


def bracket_identity_check(u: AlgebraElement, v: AlgebraElement, w: AlgebraElement, m: int) -> BracketIdentityResult:
    sides = bracket_identity_sides(u, v, w, m)
    return BracketIdentityResult(sides["assoc"][0] == sides["assoc"][1], sides["comm"][0] == sides["comm"][1])


@dataclass
class SeriesPowerReport:
    loop: str
    applicable: bool
    nilpotency_index: int | None = None
    series_orders: list = field(default_factory=list)
    inclusions: list = field(default_factory=list)
    class_bound: int | None = None
    nilpotency_class: int | None = None

    @property
    def passed(self) -> bool:
        if not self.applicable:
            return False
        return (all(self.inclusions) and self.nilpotency_class is not None
                and self.class_bound >= self.nilpotency_class)


def series_power_check(Q: lc.FiniteLoop, F, *, cap: int = 64) -> SeriesPowerReport:
    """Q_i inside 1 - (omega Q)^(i+1) along the lower central series.

    If (omega Q)^(k+1) = 0 this forces Q_k = 1, so index - 1 bounds the class.
    """
    F = _field_for(F)
    A = LoopAlgebra(Q, F)
    W = omega_ideal(A)
    idx = nilpotency_index(W, cap)
    name = Q.name or repr(Q)
    if idx is None:
        return SeriesPowerReport(name, applicable=False)
    mode = "moufang" if lc.is_moufang(Q) else "general"
    series = lc.lower_central_series(Q, mode)
    incl = []
    for i, Qi in enumerate(series.chain):
        P = ideal_power(W, i + 1)
        rows = np.array([A.one_minus(g).coeffs for g in Qi.members])
        incl.append(bool(np.all(P.contains(rows))))
    return SeriesPowerReport(name, True, idx, [len(c) for c in series.chain], incl,
                         class_bound=idx - 1, nilpotency_class=lc.nilpotency_class(Q))


def minimal_generators(Q: lc.FiniteLoop, H: lc.SubloopRef) -> list[int]:
    """Greedy generating set of H (scan in increasing index order)."""
    gens: list[int] = []
    cur = lc.subloop_generated(Q, [])
    for h in H.members:
        if h not in cur:
            gens.append(int(h))
            cur = lc.subloop_generated(Q, gens)
    return gens


def quotient_kernel(A: LoopAlgebra, proj: lc.LoopMap) -> Subspace:
    """Kernel of FQ -> F(Q/H) induced by the projection, computed directly."""
    labels = proj.images.astype(np.int64)
    first = {}
    for g, c in enumerate(labels):
        first.setdefault(int(c), g)
    rows = [(A.basis_element(g) - A.basis_element(first[int(labels[g])])).coeffs for g in range(A.n)]
    return Subspace.span(A.field, A.n, rows)


def ideal_correspondence_suite(Q: lc.FiniteLoop, F, H1, H2) -> dict:
    """Checks relating normal subloops H to the ideals omega(H).

    Keys: ``omega_is_augmentation_kernel``, ``omega_spanned_by_1_minus_q``,
    ``quotient_dim``, ``quotient_structure``, ``omega_quotient_dim``,
    ``kernel_of_projection``, ``generators``, ``distinct``, ``monotone``,
    ``join``, ``identity_line_meets_trivially``, ``identity_line_complements``,
    ``membership`` (h in H iff 1 - h in omega(H), for every element).
    """
    F = _field_for(F)
    A = LoopAlgebra(Q, F)
    H1 = lc._as_ref(Q, H1)
    H2 = lc._as_ref(Q, H2)
    for H in (H1, H2):
        if not lc.is_normal(Q, H):
            raise NotNormal(f"{H!r} is not normal")
    res: dict[str, bool] = {}
    W = omega_ideal(A)
    aug = A.augmentation_kernel()
    res["omega_is_augmentation_kernel"] = W.subspace == aug and W.rank == Q.order - 1
    span_1mq = Subspace.span(F, A.n, [A.one_minus(g).coeffs for g in range(Q.order)])
    res["omega_spanned_by_1_minus_q"] = span_1mq == W.subspace

    quotient_ok = dims_ok = kernel_ok = wq_ok = membership = True
    omegas = {}
    for H in (H1, H2):
        WH = omega_ideal(A, H)
        omegas[H] = WH
        Qbar, proj = lc.quotient(Q, H)
        k = Qbar.order
        dims_ok &= A.n - WH.rank == k
        wq_ok &= W.rank - WH.rank == k - 1
        kernel_ok &= quotient_kernel(A, proj) == WH.subspace
        # coset representatives multiply like Q/H modulo omega(H)
        reps = [int(np.flatnonzero(proj.images == c)[0]) for c in range(k)]
        R = np.array([A.basis_element(r).coeffs for r in reps])
        prods = A.products(R, R).reshape(k, k, A.n)
        target = R[Qbar.table.astype(np.int64)]
        diff = F.vec.sub(prods, target).reshape(-1, A.n)
        quotient_ok &= bool(np.all(WH.subspace.contains(diff)))
        quotient_ok &= WH.subspace.extend(R).rank == A.n
        for g in range(Q.order):
            membership &= (g in H) == WH.subspace.contains(A.one_minus(g).coeffs)
    res["quotient_dim"] = bool(dims_ok)
    res["quotient_structure"] = bool(quotient_ok)
    res["omega_quotient_dim"] = bool(wq_ok)
    res["kernel_of_projection"] = bool(kernel_ok)
    res["membership"] = bool(membership)

    gens_ok = True
    for H in (H1, H2):
        gens = minimal_generators(Q, H)
        gens_ok &= omega_ideal(A, H, generators=gens).subspace == omegas[H].subspace
    res["generators"] = bool(gens_ok)
    W1, W2 = omegas[H1].subspace, omegas[H2].subspace
    res["distinct"] = (H1 == H2) == (W1 == W2)
    mono = True
    if H1 < H2:
        mono &= W1 < W2
    if H2 < H1:
        mono &= W2 < W1
    res["monotone"] = bool(mono)
    join = lc.normal_closure(Q, list(H1.members) + list(H2.members))
    res["join"] = omega_ideal(A, join).subspace == W1 + W2
    line = A.identity_line()
    res["identity_line_meets_trivially"] = W.subspace.extend(line.basis).rank == W.rank + 1
    res["identity_line_complements"] = (W.subspace + line) == A.whole()
    return res


def is_alternative(A: LoopAlgebra) -> bool:
    """Linearised left and right alternative laws on all basis triples."""
    T = A.loop.table.astype(np.int64)
    n = A.n
    p = A.field.p
    g, h, k = np.indices((n, n, n)).reshape(3, -1)

    def assoc_pairs(x, y, z):
        return T[T[x, y], z], T[x, T[y, z]]

    for (x1, y1, z1), (x2, y2, z2) in (((g, h, k), (h, g, k)), ((g, h, k), (g, k, h))):
        pa, ma = assoc_pairs(x1, y1, z1)
        pb, mb = assoc_pairs(x2, y2, z2)
        rows = np.repeat(np.arange(len(g)), 4)
        cols = np.stack([pa, ma, pb, mb], axis=1).ravel()
        vals = np.tile([1, -1, 1, -1], len(g))
        acc = np.zeros((len(g), n), dtype=np.int64)
        np.add.at(acc, (rows, cols), vals)
        if np.any(acc % p):
            return False
    return True
