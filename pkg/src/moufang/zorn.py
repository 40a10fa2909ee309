"""Zorn vector matrices: the split Cayley-Dickson algebra C(F).

An element is a 2x2 "matrix" with scalars a1, a2 on the diagonal and vectors
v12 (top right), v21 (bottom left) in F^3.  The product is

    [a1  v12] [b1  w12]   [a1 b1 + (v12, w21)            a1 w12 + b2 v12 - v21 x w21]
    [v21  a2] [w21  b2] = [b1 v21 + a2 w21 + v12 x w12   a2 b2 + (v21, w12)         ]

with (.,.) the dot product and x the vector product.  Trace is a1 + a2 and
norm is a1 a2 - (v12, v21).

Besides the scalar :class:`ZornMatrix` API, every operation has a vectorised
twin acting on integer arrays of shape (..., 8) holding field codes in the
order (a1, a2, v12[0..2], v21[0..2]).  Table construction uses those.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

import numpy as np

from .errors import FieldTooLarge, MixedFields, NotAUnit
from .gfpn import FieldElement, FiniteField, format_element, parse_element

ENUMERATION_LIMIT = 5  # q**8 elements are materialised


@dataclass(frozen=True)
class ZornMatrix:
    a1: FieldElement
    a2: FieldElement
    v12: tuple
    v21: tuple

    def __post_init__(self):
        f = self.a1.field
        if len(self.v12) != 3 or len(self.v21) != 3:
            raise ValueError("Zorn vectors have exactly three entries")
        for c in self.components:
            if c.field != f:
                raise MixedFields("Zorn matrix entries from different fields")

    @property
    def field(self) -> FiniteField:
        return self.a1.field

    @property
    def components(self) -> tuple:
        return (self.a1, self.a2, *self.v12, *self.v21)

    @property
    def codes(self) -> tuple:
        return tuple(c.code for c in self.components)

    @classmethod
    def from_codes(cls, field: FiniteField, codes) -> "ZornMatrix":
        e = [field.from_code(int(c)) for c in codes]
        return cls(e[0], e[1], tuple(e[2:5]), tuple(e[5:8]))

    def __add__(self, other):
        _same(self, other)
        return ZornMatrix(self.a1 + other.a1, self.a2 + other.a2,
                          tuple(x + y for x, y in zip(self.v12, other.v12)),
                          tuple(x + y for x, y in zip(self.v21, other.v21)))

    def __neg__(self):
        return self.scale(-self.field.one)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ZornMatrix":
        c = self.field(c)
        return ZornMatrix(c * self.a1, c * self.a2,
                          tuple(c * x for x in self.v12), tuple(c * x for x in self.v21))

    def __mul__(self, other):
        if isinstance(other, ZornMatrix):
            return zmul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __str__(self):
        return format_zorn(self)


def _same(a: ZornMatrix, b: ZornMatrix):
    if a.field != b.field:
        raise MixedFields(f"{a.field!r} vs {b.field!r}")


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def zmul(a: ZornMatrix, b: ZornMatrix) -> ZornMatrix:
    _same(a, b)
    c1 = a.a1 * b.a1 + _dot(a.v12, b.v21)
    c2 = a.a2 * b.a2 + _dot(a.v21, b.v12)
    x = _cross(a.v21, b.v21)
    y = _cross(a.v12, b.v12)
    c12 = tuple(a.a1 * b.v12[i] + b.a2 * a.v12[i] - x[i] for i in range(3))
    c21 = tuple(b.a1 * a.v21[i] + a.a2 * b.v21[i] + y[i] for i in range(3))
    return ZornMatrix(c1, c2, c12, c21)


def trace(a: ZornMatrix) -> FieldElement:
    return a.a1 + a.a2


def norm(a: ZornMatrix) -> FieldElement:
    return a.a1 * a.a2 - _dot(a.v12, a.v21)


def identity(field: FiniteField) -> ZornMatrix:
    z = field.zero
    return ZornMatrix(field.one, field.one, (z, z, z), (z, z, z))


def zero(field: FiniteField) -> ZornMatrix:
    z = field.zero
    return ZornMatrix(z, z, (z, z, z), (z, z, z))


def scalar(field: FiniteField, c) -> ZornMatrix:
    return identity(field).scale(c)


def zinv(a: ZornMatrix) -> ZornMatrix:
    """n(a)^-1 (t(a) 1 - a), the two-sided inverse of a unit."""
    n = norm(a)
    if not n:
        raise NotAUnit(f"{format_zorn(a)} has norm 0")
    return (scalar(a.field, trace(a)) - a).scale(n.inverse())


def associator(u: ZornMatrix, v: ZornMatrix, w: ZornMatrix) -> ZornMatrix:
    return zmul(zmul(u, v), w) - zmul(u, zmul(v, w))


# --- text form ---------------------------------------------------------------

def format_zorn(a: ZornMatrix) -> str:
    s = format_element
    return (f"({s(a.a1)}, {s(a.a2)} | {', '.join(s(x) for x in a.v12)}"
            f" | {', '.join(s(x) for x in a.v21)})")


def parse_zorn(field: FiniteField, text: str) -> ZornMatrix:
    """Inverse of :func:`format_zorn`; coefficients are chunked by the field degree."""
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ValueError(f"bad Zorn matrix {text!r}")
    parts = body[1:-1].split("|")
    if len(parts) != 3:
        raise ValueError(f"bad Zorn matrix {text!r}: need 'a1, a2 | v12 | v21'")
    groups = []
    for part, count in zip(parts, (2, 3, 3)):
        nums = [t for t in re.split(r"[,\s]+", part.strip()) if t]
        if len(nums) != count * field.n:
            raise ValueError(f"bad Zorn matrix {text!r}: expected {count} field elements in {part!r}")
        groups.append([parse_element(field, ",".join(nums[i:i + field.n]))
                       for i in range(0, len(nums), field.n)])
    (a1, a2), v12, v21 = groups
    return ZornMatrix(a1, a2, tuple(v12), tuple(v21))


# --- vectorised arithmetic on code arrays of shape (..., 8) ---------------------

def _vdot(ops, u, v):
    return ops.add(ops.add(ops.mul(u[..., 0], v[..., 0]), ops.mul(u[..., 1], v[..., 1])),
                   ops.mul(u[..., 2], v[..., 2]))


def _vcross(ops, u, v):
    m = ops.mul
    return np.stack([ops.sub(m(u[..., 1], v[..., 2]), m(u[..., 2], v[..., 1])),
                     ops.sub(m(u[..., 2], v[..., 0]), m(u[..., 0], v[..., 2])),
                     ops.sub(m(u[..., 0], v[..., 1]), m(u[..., 1], v[..., 0]))], axis=-1)


def zmul_codes(field: FiniteField, A, B) -> np.ndarray:
    ops = field.vec
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    a1, a2, a12, a21 = A[..., 0], A[..., 1], A[..., 2:5], A[..., 5:8]
    b1, b2, b12, b21 = B[..., 0], B[..., 1], B[..., 2:5], B[..., 5:8]
    c1 = ops.add(ops.mul(a1, b1), _vdot(ops, a12, b21))
    c2 = ops.add(ops.mul(a2, b2), _vdot(ops, a21, b12))
    c12 = ops.sub(ops.add(ops.mul(a1[..., None], b12), ops.mul(b2[..., None], a12)),
                  _vcross(ops, a21, b21))
    c21 = ops.add(ops.add(ops.mul(b1[..., None], a21), ops.mul(a2[..., None], b21)),
                  _vcross(ops, a12, b12))
    lead = np.broadcast_shapes(c1.shape, c2.shape, c12.shape[:-1], c21.shape[:-1])
    out = np.empty(lead + (8,), dtype=np.int64)
    out[..., 0] = c1
    out[..., 1] = c2
    out[..., 2:5] = c12
    out[..., 5:8] = c21
    return out


def norm_codes(field: FiniteField, A) -> np.ndarray:
    ops = field.vec
    A = np.asarray(A, dtype=np.int64)
    return ops.sub(ops.mul(A[..., 0], A[..., 1]), _vdot(ops, A[..., 2:5], A[..., 5:8]))


def trace_codes(field: FiniteField, A) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    return field.vec.add(A[..., 0], A[..., 1])


def identity_codes(field: FiniteField) -> np.ndarray:
    one = field.one.code
    return np.array([one, one, 0, 0, 0, 0, 0, 0], dtype=np.int64)


def scalar_codes(field: FiniteField, c) -> np.ndarray:
    """c * 1 for an array of scalar codes c."""
    c = np.asarray(c, dtype=np.int64)
    out = np.zeros(c.shape + (8,), dtype=np.int64)
    out[..., 0] = c
    out[..., 1] = c
    return out


def zkey(field: FiniteField, A) -> np.ndarray:
    """Lexicographic rank of each 8-tuple (a1 most significant)."""
    A = np.asarray(A, dtype=np.int64)
    weights = field.q ** np.arange(7, -1, -1, dtype=np.int64)
    return A @ weights


def all_codes(field: FiniteField) -> np.ndarray:
    """Every element of C(F) in lexicographic order."""
    if field.q > ENUMERATION_LIMIT:
        raise FieldTooLarge(f"enumerating C({field!r}) needs q <= {ENUMERATION_LIMIT}")
    q = field.q
    keys = np.arange(q**8, dtype=np.int64)
    return np.stack([(keys // q ** (7 - i)) % q for i in range(8)], axis=1)


def norm_class_codes(field: FiniteField, target="nonzero") -> np.ndarray:
    """Codes of all matrices of the requested norm, lexicographic order."""
    A = all_codes(field)
    n = norm_codes(field, A)
    if isinstance(target, str):
        if target != "nonzero":
            raise ValueError(f"target must be a field element or 'nonzero', not {target!r}")
        return A[n != 0]
    return A[n == field(target).code]


def enumerate_by_norm(field: FiniteField, target="nonzero") -> list[ZornMatrix]:
    return [ZornMatrix.from_codes(field, row) for row in norm_class_codes(field, target)]


def unit_matrices(field: FiniteField, count: int, rng: np.random.Generator) -> np.ndarray:
    """`count` random units, drawn by rejection on uniformly random 8-tuples."""
    out = []
    got = 0
    while got < count:
        A = rng.integers(0, field.q, size=(2 * count + 16, 8))
        A = A[norm_codes(field, A) != 0]
        out.append(A)
        got += len(A)
    return np.concatenate(out)[:count]


def find_square_roots_of(field: FiniteField, target: ZornMatrix, norm_value=1) -> np.ndarray:
    """All matrices x of the given norm with x*x = target."""
    A = norm_class_codes(field, norm_value)
    sq = zmul_codes(field, A, A)
    return A[np.all(sq == np.asarray(target.codes), axis=1)]


def non_associative_witness(field: FiniteField):
    """First triple of coordinate matrices (one entry 1, rest 0) with nonzero associator."""
    E = np.eye(8, dtype=np.int64) * field.one.code
    idx = np.array(list(itertools.product(range(8), repeat=3)))
    U, V, W = E[idx[:, 0]], E[idx[:, 1]], E[idx[:, 2]]
    left = zmul_codes(field, zmul_codes(field, U, V), W)
    right = zmul_codes(field, U, zmul_codes(field, V, W))
    bad = np.flatnonzero(np.any(left != right, axis=1))
    if not len(bad):
        return None
    i, j, k = idx[bad[0]]
    return tuple(ZornMatrix.from_codes(field, E[t]) for t in (i, j, k))
