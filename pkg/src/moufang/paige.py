"""The loops M0(F), U(F) and M(F) = M0(F)/{1, -1} built from Zorn matrices.

M0(F) is the set of norm-1 Zorn matrices under the Zorn product, U(F) the set
of all matrices with nonzero norm.  Element indices follow the lexicographic
order of the 8 coefficient codes, except that the identity matrix is swapped
into index 0.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import loopcore as lc
from . import zorn
from .errors import CenterMismatch, FieldTooLarge
from .gfpn import FiniteField, is_closed_under_sqrt, make_field, parity_claim

logger = logging.getLogger(__name__)

DEFAULT_MAX_Q = 3
UNIT_MAX_Q = 2


class ZornLoop(lc.FiniteLoop):
    """A loop of Zorn matrices; ``codes[i]`` holds the 8 field codes of element i."""

    def __init__(self, table, field: FiniteField, codes: np.ndarray, **kw):
        super().__init__(table, **kw)
        self.field = field
        self.codes = codes

    def element(self, i: int) -> zorn.ZornMatrix:
        return zorn.ZornMatrix.from_codes(self.field, self.codes[i])

    @cached_property
    def _index(self) -> dict:
        keys = zorn.zkey(self.field, self.codes)
        return {int(k): i for i, k in enumerate(keys)}

    def index_of(self, a: zorn.ZornMatrix) -> int:
        return self._index[int(zorn.zkey(self.field, np.array(a.codes)))]

    @property
    def norms(self) -> np.ndarray:
        return zorn.norm_codes(self.field, self.codes)


def _identity_first(field: FiniteField, codes: np.ndarray) -> np.ndarray:
    codes = codes.copy()
    one = zorn.identity_codes(field)
    pos = int(np.flatnonzero(np.all(codes == one, axis=1))[0])
    codes[[0, pos]] = codes[[pos, 0]]
    return codes


def zorn_table(field: FiniteField, codes: np.ndarray, chunk_rows: int = 64) -> np.ndarray:
    """Cayley table of the Zorn product restricted to ``codes`` (must be closed)."""
    n = len(codes)
    lookup = np.full(field.q**8, -1, dtype=np.int64)
    lookup[zorn.zkey(field, codes)] = np.arange(n)
    table = np.empty((n, n), dtype=np.int64)
    for r0 in range(0, n, chunk_rows):
        rows = codes[r0:r0 + chunk_rows]
        prod = zorn.zmul_codes(field, rows[:, None, :], codes[None, :, :])
        table[r0:r0 + chunk_rows] = lookup[zorn.zkey(field, prod)]
        if n > 1000 and r0 % (chunk_rows * 8) == 0:
            logger.info("zorn table: %d/%d rows", r0, n)
    if np.any(table < 0):
        raise AssertionError("element set is not closed under the Zorn product")
    return table


def _guard(field: FiniteField, limit: int, allow_large: bool, what: str):
    if field.q > zorn.ENUMERATION_LIMIT:
        raise FieldTooLarge(f"{what} over {field!r}: q must be <= {zorn.ENUMERATION_LIMIT}")
    if field.q > limit and not allow_large:
        raise FieldTooLarge(f"{what} over {field!r} needs allow_large=True (q > {limit})")


@dataclass
class PaigeBundle:
    field: FiniteField
    m0: ZornLoop
    m: lc.FiniteLoop | None = None
    projection: lc.LoopMap | None = None
    minus_one: int = 0
    center_m0: lc.SubloopRef | None = None
    notes: dict = field(default_factory=dict)

    @property
    def element_index(self) -> dict:
        """ZornMatrix -> index in m0."""
        return {self.m0.element(i): i for i in range(self.m0.order)}


def build_m0(F: FiniteField, *, allow_large: bool = False) -> PaigeBundle:
    _guard(F, DEFAULT_MAX_Q, allow_large, "M0")
    codes = _identity_first(F, zorn.norm_class_codes(F, 1))
    logger.info("building M0(%r) of order %d", F, len(codes))
    Q = ZornLoop(zorn_table(F, codes), F, codes, name=f"M0({F.spec})")
    minus = zorn.scalar_codes(F, F(-1).code)
    return PaigeBundle(F, Q, minus_one=Q._index[int(zorn.zkey(F, minus))])


def build_m(F: FiniteField, *, allow_large: bool = False) -> PaigeBundle:
    """M0(F) together with M(F) = M0(F)/Z(M0) and the projection."""
    b = build_m0(F, allow_large=allow_large)
    Z = lc.center(b.m0)
    expected = tuple(sorted({0, b.minus_one}))
    if Z.members != expected:
        raise CenterMismatch(f"center of M0 has members {Z.members[:6]}, expected {expected}")
    b.center_m0 = Z
    if F.p == 2:
        b.m = b.m0
        b.projection = lc.LoopMap(b.m0, b.m0, np.arange(b.m0.order))
    else:
        M, proj = lc.quotient(b.m0, Z)
        M.name = f"M({F.spec})"
        b.m, b.projection = M, proj
    return b


def build_unit_loop(F: FiniteField, *, allow_large: bool = False) -> ZornLoop:
    """U(F): all Zorn matrices of nonzero norm."""
    _guard(F, UNIT_MAX_Q, allow_large, "U")
    codes = _identity_first(F, zorn.norm_class_codes(F, "nonzero"))
    logger.info("building U(%r) of order %d", F, len(codes))
    return ZornLoop(zorn_table(F, codes), F, codes, name=f"U({F.spec})")


def norm_homomorphism(U: ZornLoop) -> dict:
    """Check u -> n(u) is a homomorphism onto F* and report its kernel."""
    F = U.field
    nrm = U.norms
    T = U.table
    hom = bool(np.array_equal(nrm[T], F.vec.mul(nrm[:, None], nrm[None, :])))
    onto = set(int(x) for x in np.unique(nrm)) == set(range(1, F.q))
    kernel = tuple(int(i) for i in np.flatnonzero(nrm == F.one.code))
    return {"homomorphism": hom, "onto": onto, "kernel": kernel}


def m0_inside_units(U: ZornLoop) -> lc.SubloopRef:
    """The norm-1 elements of U as a subloop of U."""
    return U.subloop(norm_homomorphism(U)["kernel"])


def square_root_of_minus_one(F: FiniteField) -> np.ndarray:
    """Codes of norm-1 matrices a with a^2 = -1."""
    return zorn.find_square_roots_of(F, zorn.scalar(F, -1))


def two_elements(b: PaigeBundle) -> np.ndarray:
    """Indices of M(F) of order 2."""
    return np.flatnonzero(lc.element_orders(b.m) == 2)


def orders_divide(Q: lc.FiniteLoop) -> bool:
    return bool(np.all(Q.order % lc.element_orders(Q) == 0))


@dataclass(frozen=True)
class ClassificationReport:
    field: str
    characteristic: int
    degree: int
    closed_under_sqrt: bool
    parity_claim: bool | None
    disagreement: bool | None
    verdict: str

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "field": self.field,
            "characteristic": self.characteristic,
            "degree": self.degree,
            "closed_under_sqrt": self.closed_under_sqrt,
            "parity_claim_n_even": self.parity_claim,
            "parity_claim_disagrees": self.disagreement,
            "verdict": self.verdict,
        }


def classify_embeddability(p: int, n: int = 1) -> ClassificationReport:
    """Embedding verdict for M(GF(p^n)) from the computed square-root closure.

    The verdict is "claimed-non-embeddable" exactly when p is odd and every
    nonzero element is a square; otherwise "embeddable".  The n-is-even
    criterion is reported next to the computed predicate and any
    disagreement is flagged, never resolved.
    """
    F = make_field(p, n)
    closed = is_closed_under_sqrt(F)
    claim = parity_claim(F)
    disagree = None if claim is None else claim != closed
    verdict = "claimed-non-embeddable" if (p != 2 and closed) else "embeddable"
    return ClassificationReport(F.spec, p, n, closed, claim, disagree, verdict)
